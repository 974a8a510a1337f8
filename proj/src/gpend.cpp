#include "trapqm/gpend.hpp"

#include <cmath>
#include <numbers>

#include "trapqm/constants.hpp"

namespace trapqm::gpend {

namespace {

void check_dimension(double dimension) {
  if (!(dimension > 2.0) || !std::isfinite(dimension)) {
    throw DomainError("dimension must be > 2 (the R^(N-2)/(N-2) term is singular at N = 2)");
  }
}

void check_coupling(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("coupling must be finite and >= 0");
}

}  // namespace

PhysicalTrap::PhysicalTrap(double mass, double omega, double scattering_length, long particle_count)
    : mass_(mass), omega_(omega), scattering_length_(scattering_length), particle_count_(particle_count) {
  if (!(mass > 0.0) || !(omega > 0.0) || !(scattering_length > 0.0)) {
    throw DomainError("PhysicalTrap: mass, omega and scattering length must be positive");
  }
  if (particle_count < 1) throw DomainError("PhysicalTrap: particle count must be >= 1");
  a_osc_ = std::sqrt(constants::hbar / (mass_ * omega_));
  gamma_ = static_cast<double>(particle_count_) * scattering_length_ / a_osc_;
}

PhysicalTrap PhysicalTrap::caesium(long particle_count) {
  return {constants::cs_mass_amu * constants::amu, constants::cs_omega, constants::cs_scattering_length,
          particle_count};
}

TurningPoints turning_points(double eps) {
  if (!(eps >= 0.5) || !std::isfinite(eps)) throw DomainError("turning_points: need eps >= 1/2");
  const double root = std::sqrt(eps * eps - 0.25);
  // r1^2 = 1 / (4 r2^2) avoids the cancellation in eps - root.
  const double r2_sq = eps + root;
  return {std::sqrt(0.25 / r2_sq), std::sqrt(r2_sq)};
}

double norm_bracket(double eps, double dimension) {
  check_dimension(dimension);
  const auto [r1, r2] = turning_points(eps);
  const double n = dimension;
  auto diff = [&](double p) { return std::pow(r2, p) - std::pow(r1, p); };
  return eps / n * diff(n) - diff(n + 2.0) / (2.0 * (n + 2.0)) - diff(n - 2.0) / (8.0 * (n - 2.0));
}

double norm_prefactor(double dimension) {
  const double n = dimension;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n) * std::pow(n, 0.5 * n + 1.0);
}

double nd_density_profile(double eps, double radius) { return eps - 0.5 * radius * radius - 0.125 / (radius * radius); }

NdTfSolution solve_eps_general(double dimension, double gamma_nd, const Tolerance& tol) {
  check_dimension(dimension);
  check_coupling(gamma_nd);
  const double prefactor = norm_prefactor(dimension);
  auto condition = [&](double eps) { return prefactor * norm_bracket(eps, dimension) - gamma_nd; };

  double eps = 0.5;
  if (gamma_nd > 0.0) {
    double hi = 1.0;
    while (condition(hi) < 0.0) {
      hi *= 2.0;
      if (hi > 1e6) throw NoConvergence("solve_eps_general: no sign change below eps = 1e6");
    }
    eps = find_root_bracketed(condition, 0.5, hi, tol);
  }
  const auto [r1, r2] = turning_points(eps);
  return {dimension, eps, dimension * eps, r1, r2, gamma_nd, std::abs(condition(eps))};
}

double ebar_3d_lhs(double e_bar) {
  return 4.0 / 15.0 * std::sqrt(std::max(0.0, 2.0 * e_bar - 3.0)) * (e_bar * e_bar + 0.75 * e_bar - 27.0 / 8.0);
}

NdTfSolution solve_ebar_3d(double gamma, const Tolerance& tol) {
  check_coupling(gamma);
  double e_bar = 1.5;
  if (gamma > 0.0) {
    double hi = 3.0;
    while (ebar_3d_lhs(hi) < gamma) {
      hi *= 2.0;
      if (hi > 1e6) throw NoConvergence("solve_ebar_3d: no sign change below E = 1e6");
    }
    e_bar = find_root_bracketed([&](double e) { return ebar_3d_lhs(e) - gamma; }, 1.5, hi, tol);
  }
  const auto [r1, r2] = turning_points(e_bar / 3.0);
  return {3.0, e_bar / 3.0, e_bar, r1, r2, gamma, std::abs(ebar_3d_lhs(e_bar) - gamma)};
}

double gamma_from_physical(const PhysicalTrap& trap) { return trap.gamma(); }

std::vector<Table1Row> table1(const PhysicalTrap& trap_base, std::span<const long> n_values,
                              const Table1Options& options) {
  if (n_values.empty()) throw DomainError("table1: need at least one atom count");
  std::vector<Table1Row> rows;
  rows.reserve(n_values.size());
  for (long n : n_values) {
    const double gamma = gamma_from_physical(trap_base.with_particle_count(n));
    Table1Row row{n, gamma, solve_ebar_3d(gamma).e_bar, std::nullopt};
    if (options.with_oracle) {
      row.mu_oracle =
          oracle::gpe_ground_radial3d(gamma, oracle::default_grid_radial3d(gamma, options.grid_points), options.flow)
              .energy;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace trapqm::gpend
