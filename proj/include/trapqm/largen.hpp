#pragma once

// Large-dimension (1/N) expansion of the radial ground state for the
// harmonic and quartic oscillators.
//
// With xi the radius rescaled by the dimension, the N -> infinity limit puts
// the particle at the minimum of V_eff = 1/(8 xi^2) + xi^2/2 (harmonic) or
// 1/(8 xi^2) + xi^4/4 (quartic). The first 1/N correction is the zero-point
// energy of the harmonic well around that minimum plus the O(1/N) part of
// the centrifugal term.

#include <variant>

#include "trapqm/energy.hpp"
#include "trapqm/numerics.hpp"

namespace trapqm::largen {

struct Harmonic {
  double omega = 1.0;
};

struct Quartic {
  double lambda_quartic = 1.0;
};

using PotentialKind = std::variant<Harmonic, Quartic>;

/// Quadratic coefficient of V_eff around its minimum: from V'' (Derived) or
/// the printed literature constants 2 and 2.45 (PaperPrinted).
enum class CurvatureMode { Derived, PaperPrinted };

struct LargeNResult {
  double xi0 = 0.0;          ///< closed-form minimizer
  double xi0_numeric = 0.0;  ///< minimizer found by minimize_scalar
  double v_min = 0.0;
  double v_second = 0.0;     ///< analytic V''(xi0)
  double v_second_fd = 0.0;  ///< central-difference V''(xi0), step 1e-5
  double eps_leading = 0.0;
  double eps_correction = 0.0;  ///< c in eps_1 = c / N
  int dimension = 0;
  CurvatureMode curvature_mode = CurvatureMode::Derived;
};

void validate(const PotentialKind& kind);

double effective_potential(double xi, const PotentialKind& kind);
double effective_potential_slope(double xi, const PotentialKind& kind);
double effective_potential_curvature(double xi, const PotentialKind& kind);

LargeNResult leading_order(const PotentialKind& kind);
LargeNResult first_correction(const PotentialKind& kind, int dimension, CurvatureMode mode);

/// Harmonic: N/2 in units of hbar*omega. Quartic: N^(4/3) (eps0 + c/N) in
/// units of (hbar^2/m)^(2/3) lambda^(1/3).
EnergyEstimate two_term_energy(const PotentialKind& kind, int dimension, CurvatureMode mode);

/// Physical energy unit of two_term_energy: hbar*omega or (hbar^2/m)^(2/3) lambda^(1/3).
double energy_unit(const PotentialKind& kind, double hbar = 1.0, double mass = 1.0);

}  // namespace trapqm::largen
