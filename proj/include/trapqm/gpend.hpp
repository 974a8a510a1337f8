#pragma once

// Combined large-dimension / Thomas-Fermi estimate of the condensate
// chemical potential in an isotropic harmonic trap.
//
// Dropping the kinetic term of the N-rescaled radial GPE leaves the density
// (eps - R^2/2 - 1/(8 R^2)) R^(N-1) between the turning points
// R^2 = eps -/+ sqrt(eps^2 - 1/4). Normalization fixes eps through
//   (2 pi^(N/2) / Gamma(N/2)) N^(N/2+1) B(eps, N) = Gamma_N,
// with Gamma_N = g / (hbar omega a_osc^N); Gamma_3 = 4 pi n a / a_osc.

#include <optional>
#include <span>
#include <vector>

#include "trapqm/numerics.hpp"
#include "trapqm/oracle.hpp"

namespace trapqm::gpend {

class PhysicalTrap {
 public:
  PhysicalTrap(double mass, double omega, double scattering_length, long particle_count);

  double mass() const { return mass_; }
  double omega() const { return omega_; }
  double scattering_length() const { return scattering_length_; }
  long particle_count() const { return particle_count_; }

  /// sqrt(hbar / (m omega)) in metres.
  double a_osc() const { return a_osc_; }
  /// n a / a_osc.
  double gamma() const { return gamma_; }

  PhysicalTrap with_particle_count(long n) const { return {mass_, omega_, scattering_length_, n}; }

  /// The caesium trap: 133 amu, omega = 20 pi / s, a = 3 nm.
  static PhysicalTrap caesium(long particle_count);

 private:
  double mass_;
  double omega_;
  double scattering_length_;
  long particle_count_;
  double a_osc_;
  double gamma_;
};

struct TurningPoints {
  double r1;
  double r2;
};

struct NdTfSolution {
  double dimension;
  double eps;    ///< E / (N hbar omega)
  double e_bar;  ///< E / (hbar omega)
  double r1;
  double r2;
  double gamma;  ///< coupling the solution was computed for (Gamma_N or n a / a_osc)
  double residual;
};

TurningPoints turning_points(double eps);

/// (eps/N)(R2^N - R1^N) - (R2^(N+2) - R1^(N+2)) / (2(N+2)) - (R2^(N-2) - R1^(N-2)) / (8(N-2)).
double norm_bracket(double eps, double dimension);

/// 2 pi^(N/2) / Gamma(N/2) * N^(N/2 + 1).
double norm_prefactor(double dimension);

/// Mode-density profile (eps - R^2/2 - 1/(8R^2)) of the N-dimensional Thomas-Fermi state.
double nd_density_profile(double eps, double radius);

NdTfSolution solve_eps_general(double dimension, double gamma_nd, const Tolerance& tol = {1e-13, 0.0, 400});

/// Left side of (4/15) sqrt(2E - 3) [E^2 + 3E/4 - 27/8] = n a / a_osc.
double ebar_3d_lhs(double e_bar);

NdTfSolution solve_ebar_3d(double gamma, const Tolerance& tol = {1e-13, 0.0, 400});

double gamma_from_physical(const PhysicalTrap& trap);

struct Table1Row {
  long n;
  double gamma;
  double e_bar_tf_largen;
  std::optional<double> mu_oracle;
};

struct Table1Options {
  bool with_oracle = false;
  oracle::FlowParams flow{};
  Eigen::Index grid_points = 4001;
};

std::vector<Table1Row> table1(const PhysicalTrap& trap_base, std::span<const long> n_values,
                              const Table1Options& options = {});

}  // namespace trapqm::gpend
