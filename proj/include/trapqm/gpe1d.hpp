#pragma once

// Ground-state estimates for the dimensionless 1D Gross-Pitaevskii equation
//   -1/2 phi'' + xi^2/2 phi + lambda |phi|^2 phi = (E / hbar omega) phi,  int phi^2 = 1.
//
// All energies are E / (hbar omega).

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trapqm/energy.hpp"
#include "trapqm/numerics.hpp"
#include "trapqm/oracle.hpp"

namespace trapqm::gpe1d {

struct Gpe1DParams {
  double lambda = 0.0;

  void validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("Gpe1DParams: need finite lambda >= 0");
  }
};

struct VariationalResult {
  double delta0;
  double energy;
  double residual;
};

enum class WkbMethod { ClosedForm, NumericWkb };

struct TfWkbBreakdown {
  double lambda;
  double eps0;
  double eps1;
  double y_m;     ///< edge of the flat region, y_m^2 = 2 eps0
  double y0;      ///< classical turning point, y0^2 = 2 (eps0 + eps1)
  double theta0;  ///< cos^2 theta0 = eps0 / (eps0 + eps1)
  WkbMethod method;
};

/// Gaussian trial energy 1/4 (1/D^2 + D^2) + lambda / (sqrt(2 pi) D).
double variational_energy(double delta, double lambda);

/// Stationarity condition 1/(2 D^3) + lambda / (sqrt(2 pi) D^2) - D/2.
double variational_condition(double delta, double lambda);

VariationalResult variational_delta(const Gpe1DParams& params, const Tolerance& tol = {});

/// eps0 = 1/2 (3 / (2 sqrt(lambda)))^(2/3): chemical potential in the y = xi / sqrt(lambda) units.
double tf_eps0(double lambda);

/// Thomas-Fermi density |phi0(y)|^2 = eps0 - y^2/2 inside |y| <= y_m, zero outside.
double tf_density(double y, double lambda);

EnergyEstimate tf_energy(const Gpe1DParams& params);

std::pair<EnergyEstimate, TfWkbBreakdown> tf_wkb_closed(const Gpe1DParams& params);

/// Left side of the WKB condition
///   2 lambda [ int_0^{y_m} sqrt(2 eps1) dy + int_{y_m}^{y0} sqrt(2 (eps0 + eps1) - y^2) dy ],
/// integrated numerically; equals pi/2 at the lowest level.
double wkb_action(double eps1, double lambda, const Tolerance& quad = Tolerance::quadrature());

/// The flat-region piece int_0^{y_m} sqrt(2 (eps0 + eps1 - eps0)) dy.
double wkb_flat_integral(double eps0, double eps1, const Tolerance& quad = Tolerance::quadrature());

std::pair<EnergyEstimate, TfWkbBreakdown> tf_wkb_numeric(const Gpe1DParams& params);

enum class Method { Tf, Variational, TfWkbClosed, TfWkbNumeric, Exact };

std::string to_string(Method m);
std::optional<Method> method_from_string(const std::string& name);

struct SweepRow {
  double lambda;
  Method method;
  double energy;  ///< NaN when `error` is set
  std::optional<std::string> error;
};

struct SweepOptions {
  oracle::FlowParams flow{};
  Eigen::Index grid_points = 4001;
  std::optional<double> grid_half_width;
};

/// Energy of one method at one coupling; throws on failure.
double method_energy(Method method, double lambda, const SweepOptions& options = {});

/// One row per (lambda, method), lambda-major in input order; row failures are
/// recorded in SweepRow::error instead of aborting.
std::vector<SweepRow> sweep_methods(std::span<const double> lambdas, std::span<const Method> methods,
                                    const SweepOptions& options = {});

}  // namespace trapqm::gpe1d
