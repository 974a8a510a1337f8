#include "trapqm/largen.hpp"

#include <cmath>

namespace trapqm::largen {

namespace {

bool is_harmonic(const PotentialKind& kind) { return std::holds_alternative<Harmonic>(kind); }

// Squared closed-form minimizer: xi0^2 = 1/2 (harmonic), xi0^6 = 1/4 (quartic).
double xi0_squared(const PotentialKind& kind) { return is_harmonic(kind) ? 0.5 : std::cbrt(0.25); }

double potential_from_square(double s, const PotentialKind& kind) {
  return is_harmonic(kind) ? 1.0 / (8.0 * s) + 0.5 * s : 1.0 / (8.0 * s) + 0.25 * s * s;
}

double curvature_from_square(double s, const PotentialKind& kind) {
  return is_harmonic(kind) ? 3.0 / (4.0 * s * s) + 1.0 : 3.0 / (4.0 * s * s) + 3.0 * s;
}

void check_xi(double xi) {
  if (!(xi > 0.0)) throw DomainError("effective potential: need xi > 0");
}

}  // namespace

void validate(const PotentialKind& kind) {
  const double p = is_harmonic(kind) ? std::get<Harmonic>(kind).omega : std::get<Quartic>(kind).lambda_quartic;
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("potential parameter must be positive and finite");
}

double effective_potential(double xi, const PotentialKind& kind) {
  check_xi(xi);
  return potential_from_square(xi * xi, kind);
}

double effective_potential_slope(double xi, const PotentialKind& kind) {
  check_xi(xi);
  const double centrifugal = -1.0 / (4.0 * xi * xi * xi);
  return is_harmonic(kind) ? centrifugal + xi : centrifugal + xi * xi * xi;
}

double effective_potential_curvature(double xi, const PotentialKind& kind) {
  check_xi(xi);
  return curvature_from_square(xi * xi, kind);
}

LargeNResult leading_order(const PotentialKind& kind) {
  validate(kind);
  const auto found = minimize_scalar([&](double xi) { return effective_potential(xi, kind); }, 0.1, 3.0);

  const double s = xi0_squared(kind);
  LargeNResult r;
  r.xi0 = std::sqrt(s);
  r.xi0_numeric = found.x;
  if (std::abs(found.x - r.xi0) > 1e-8) {
    throw NoConvergence("leading_order: numerical minimizer disagrees with the closed form");
  }
  r.v_min = potential_from_square(s, kind);
  r.v_second = curvature_from_square(s, kind);
  constexpr double h = 1e-5;
  r.v_second_fd = (effective_potential(r.xi0 + h, kind) - 2.0 * r.v_min + effective_potential(r.xi0 - h, kind)) / (h * h);
  r.eps_leading = r.v_min;
  return r;
}

LargeNResult first_correction(const PotentialKind& kind, int dimension, CurvatureMode mode) {
  if (dimension < 1) throw DomainError("first_correction: dimension must be >= 1");
  LargeNResult r = leading_order(kind);
  r.dimension = dimension;
  r.curvature_mode = mode;

  // V ~ V_min + k (d xi)^2 with kinetic -1/(2N^2) d^2: zero point (1/2) sqrt(2k)/N.
  double k = 0.5 * r.v_second;
  if (mode == CurvatureMode::PaperPrinted) k = is_harmonic(kind) ? 2.0 : 2.45;
  const double centrifugal_shift = -1.0 / (2.0 * xi0_squared(kind));
  r.eps_correction = 0.5 * std::sqrt(2.0 * k) + centrifugal_shift;
  return r;
}

EnergyEstimate two_term_energy(const PotentialKind& kind, int dimension, CurvatureMode mode) {
  const LargeNResult r = first_correction(kind, dimension, mode);
  const double n = static_cast<double>(dimension);
  const char* tag = mode == CurvatureMode::Derived ? "derived" : "paper";

  EnergyEstimate e;
  if (is_harmonic(kind)) {
    e = EnergyEstimate::from_parts(std::string("largen-harmonic-") + tag, n * r.eps_leading, r.eps_correction);
  } else {
    const double scale = std::pow(n, 4.0 / 3.0);
    e = EnergyEstimate::from_parts(std::string("largen-quartic-") + tag, scale * r.eps_leading,
                                   scale * r.eps_correction / n);
  }
  e.metadata["xi0"] = r.xi0;
  e.metadata["xi0_numeric"] = r.xi0_numeric;
  e.metadata["v_min"] = r.v_min;
  e.metadata["v_second"] = r.v_second;
  e.metadata["v_second_fd"] = r.v_second_fd;
  e.metadata["eps_correction"] = r.eps_correction;
  e.metadata["dimension"] = n;
  return e;
}

double energy_unit(const PotentialKind& kind, double hbar, double mass) {
  validate(kind);
  if (!(hbar > 0.0) || !(mass > 0.0)) throw DomainError("energy_unit: hbar and mass must be positive");
  if (is_harmonic(kind)) return hbar * std::get<Harmonic>(kind).omega;
  return std::pow(hbar * hbar / mass, 2.0 / 3.0) * std::cbrt(std::get<Quartic>(kind).lambda_quartic);
}

}  // namespace trapqm::largen
