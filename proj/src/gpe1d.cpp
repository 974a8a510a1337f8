#include "trapqm/gpe1d.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace trapqm::gpe1d {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

void require_positive(const Gpe1DParams& params, const char* who) {
  params.validate();
  if (!(params.lambda > 0.0)) throw DomainError(std::string(who) + ": Thomas-Fermi limit needs lambda > 0");
}

// Bracket on eps1 must be resolved relative to eps0, which shrinks like lambda^(-1/3).
Tolerance wkb_root_tolerance(double eps0) { return {1e-15 * eps0, 0.0, 400}; }

TfWkbBreakdown breakdown(double lambda, double eps0, double eps1, WkbMethod method) {
  const double total = eps0 + eps1;
  return {lambda, eps0, eps1, std::sqrt(2.0 * eps0), std::sqrt(2.0 * total), std::acos(std::sqrt(eps0 / total)),
          method};
}

EnergyEstimate wkb_estimate(const char* name, const TfWkbBreakdown& b) {
  EnergyEstimate e = EnergyEstimate::from_parts(name, b.lambda * b.eps0, b.lambda * b.eps1);
  e.metadata["eps0"] = b.eps0;
  e.metadata["eps1"] = b.eps1;
  e.metadata["y_m"] = b.y_m;
  e.metadata["y0"] = b.y0;
  e.metadata["theta0"] = b.theta0;
  return e;
}

}  // namespace

double variational_energy(double delta, double lambda) {
  return 0.25 * (1.0 / (delta * delta) + delta * delta) + lambda * kInvSqrt2Pi / delta;
}

double variational_condition(double delta, double lambda) {
  return 0.5 / (delta * delta * delta) + lambda * kInvSqrt2Pi / (delta * delta) - 0.5 * delta;
}

VariationalResult variational_delta(const Gpe1DParams& params, const Tolerance& tol) {
  params.validate();
  const double lambda = params.lambda;
  const double hi = std::max(2.0, 2.0 * std::cbrt(2.0 * lambda * kInvSqrt2Pi));
  const double delta0 = find_root_bracketed([&](double d) { return variational_condition(d, lambda); }, 1e-3, hi, tol);
  return {delta0, variational_energy(delta0, lambda), std::abs(variational_condition(delta0, lambda))};
}

double tf_eps0(double lambda) { return 0.5 * std::pow(1.5 / std::sqrt(lambda), 2.0 / 3.0); }

double tf_density(double y, double lambda) {
  return std::max(0.0, tf_eps0(lambda) - 0.5 * y * y);
}

EnergyEstimate tf_energy(const Gpe1DParams& params) {
  require_positive(params, "tf_energy");
  const double eps0 = tf_eps0(params.lambda);
  EnergyEstimate e = EnergyEstimate::from_parts("tf", params.lambda * eps0, 0.0);
  e.metadata["eps0"] = eps0;
  return e;
}

std::pair<EnergyEstimate, TfWkbBreakdown> tf_wkb_closed(const Gpe1DParams& params) {
  require_positive(params, "tf_wkb_closed");
  const double lambda = params.lambda;
  const double eps0 = tf_eps0(lambda);
  const double root_ratio =
      0.5 * std::numbers::pi * (std::numbers::sqrt2 - 1.0) * std::pow(2.0 / 3.0, 2.0 / 3.0) * std::pow(lambda, -2.0 / 3.0);
  const double eps1 = eps0 * root_ratio * root_ratio;
  const TfWkbBreakdown b = breakdown(lambda, eps0, eps1, WkbMethod::ClosedForm);
  return {wkb_estimate("tf-wkb", b), b};
}

double wkb_flat_integral(double eps0, double eps1, const Tolerance& quad) {
  const double integrand = std::sqrt(2.0 * eps1);
  return integrate([&](double) { return integrand; }, 0.0, std::sqrt(2.0 * eps0), quad);
}

double wkb_action(double eps1, double lambda, const Tolerance& quad) {
  const double eps0 = tf_eps0(lambda);
  const double y_m = std::sqrt(2.0 * eps0);
  const double two_total = 2.0 * (eps0 + eps1);
  const double y0 = std::sqrt(two_total);
  const double tail = integrate([&](double y) { return std::sqrt(std::max(0.0, two_total - y * y)); }, y_m, y0, quad,
                                Endpoint::sqrt_upper);
  return 2.0 * lambda * (wkb_flat_integral(eps0, eps1, quad) + tail);
}

std::pair<EnergyEstimate, TfWkbBreakdown> tf_wkb_numeric(const Gpe1DParams& params) {
  require_positive(params, "tf_wkb_numeric");
  const double lambda = params.lambda;
  const double eps0 = tf_eps0(lambda);
  // The action grows monotonically from 0 at eps1 = 0.
  const Tolerance quad{1e-14, 1e-13, 60};
  const double target = 0.5 * std::numbers::pi;
  const double eps1 = find_root_bracketed([&](double e1) { return wkb_action(e1, lambda, quad) - target; }, 0.0, eps0,
                                          wkb_root_tolerance(eps0));
  const TfWkbBreakdown b = breakdown(lambda, eps0, eps1, WkbMethod::NumericWkb);
  EnergyEstimate e = wkb_estimate("tf-wkb-numeric", b);
  e.metadata["quantization_residual"] = std::abs(wkb_action(eps1, lambda, quad) - target);
  return {e, b};
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Tf:
      return "tf";
    case Method::Variational:
      return "variational";
    case Method::TfWkbClosed:
      return "tf-wkb";
    case Method::TfWkbNumeric:
      return "tf-wkb-numeric";
    case Method::Exact:
      return "exact";
  }
  return "unknown";
}

std::optional<Method> method_from_string(const std::string& name) {
  for (Method m : {Method::Tf, Method::Variational, Method::TfWkbClosed, Method::TfWkbNumeric, Method::Exact}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

double method_energy(Method method, double lambda, const SweepOptions& options) {
  const Gpe1DParams params{lambda};
  switch (method) {
    case Method::Tf:
      return tf_energy(params).value;
    case Method::Variational:
      return variational_delta(params).energy;
    case Method::TfWkbClosed:
      return tf_wkb_closed(params).first.value;
    case Method::TfWkbNumeric:
      return tf_wkb_numeric(params).first.value;
    case Method::Exact: {
      params.validate();
      Grid1D grid = oracle::default_grid_1d(lambda, options.grid_points);
      if (options.grid_half_width) grid = Grid1D(-*options.grid_half_width, *options.grid_half_width, options.grid_points);
      return oracle::gpe_ground_1d(lambda, grid, options.flow).energy;
    }
  }
  throw DomainError("unknown method");
}

std::vector<SweepRow> sweep_methods(std::span<const double> lambdas, std::span<const Method> methods,
                                    const SweepOptions& options) {
  std::vector<SweepRow> rows;
  rows.reserve(lambdas.size() * methods.size());
  for (double lambda : lambdas) {
    for (Method m : methods) {
      SweepRow row{lambda, m, std::numeric_limits<double>::quiet_NaN(), std::nullopt};
      try {
        row.energy = method_energy(m, lambda, options);
      } catch (const Error& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace trapqm::gpe1d
