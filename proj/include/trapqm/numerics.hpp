#pragma once

// Scalar numerics shared by every solver: bracketed roots, 1D minimization,
// adaptive Simpson quadrature and the lowest eigenpair of a symmetric
// tridiagonal matrix.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "trapqm/errors.hpp"

namespace trapqm {

struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_iterations = 200;

  /// Default for adaptive quadrature, where `max_iterations` is the recursion depth.
  static Tolerance quadrature() { return {1e-10, 1e-10, 60}; }

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol >= 0.0) || max_iterations <= 0) {
      throw DomainError("Tolerance: need abs_tol > 0, rel_tol >= 0, max_iterations > 0");
    }
  }
};

/// Uniform grid x_i = x_min + i*h, i = 0..n_points-1.
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, Eigen::Index n_points) : x_min_(x_min), x_max_(x_max), n_(n_points) {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
      throw DomainError("Grid1D: need finite x_min < x_max");
    }
    if (n_points < 3) throw DomainError("Grid1D: need at least 3 points");
  }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  Eigen::Index size() const { return n_; }
  double spacing() const { return (x_max_ - x_min_) / static_cast<double>(n_ - 1); }
  double point(Eigen::Index i) const { return x_min_ + static_cast<double>(i) * spacing(); }

  Eigen::VectorXd points() const {
    Eigen::VectorXd x(n_);
    for (Eigen::Index i = 0; i < n_; ++i) x[i] = point(i);
    return x;
  }

  /// Same end points, half the spacing.
  Grid1D refined() const { return Grid1D(x_min_, x_max_, 2 * n_ - 1); }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double x_min_;
  double x_max_;
  Eigen::Index n_;
};

/// Real samples of a function on a Grid1D.
class GridFunction {
 public:
  GridFunction(Grid1D grid, Eigen::VectorXd values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw DimensionMismatch("GridFunction: value count does not match grid size");
    }
  }

  const Grid1D& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return values_; }

  /// Trapezoid rule of values^2.
  double norm_squared() const {
    const Eigen::Index n = values_.size();
    const double interior = values_.segment(1, n - 2).squaredNorm();
    const double ends = 0.5 * (values_[0] * values_[0] + values_[n - 1] * values_[n - 1]);
    return grid_.spacing() * (interior + ends);
  }

 private:
  Grid1D grid_;
  Eigen::VectorXd values_;
};

/// Root of f on [lo, hi], which must bracket a sign change.
///
/// Each iteration takes a secant step, probes half a tolerance past it, and
/// falls back to bisection when neither halved the bracket, so the returned
/// point always sits in a bracket [l, h] with f(l) f(h) <= 0 and h - l <= abs_tol
/// (or one ulp when abs_tol is below the floating-point resolution at the root).
template <class F>
double find_root_bracketed(F&& f, double lo, double hi, const Tolerance& tol = {}) {
  tol.validate();
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi)) throw NoBracket("find_root_bracketed: non-finite end value");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) throw NoBracket("find_root_bracketed: f(lo) and f(hi) have the same sign");

  // Replace the end of the bracket that keeps the sign change.
  auto update = [&](double x, double fx) {
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
  };
  auto best = [&] { return std::abs(flo) <= std::abs(fhi) ? lo : hi; };

  for (int it = 0; it < tol.max_iterations; ++it) {
    const double width = hi - lo;
    const double mid = lo + 0.5 * width;
    if (width <= tol.abs_tol || mid <= lo || mid >= hi) return best();

    double s = lo - flo * width / (fhi - flo);
    if (!(s > lo && s < hi)) s = mid;
    const double fs = f(s);
    if (fs == 0.0) return s;
    update(s, fs);

    // Probe just past the secant point, on the side still holding the root.
    const double step = 0.5 * tol.abs_tol;
    const double probe = (s == lo) ? s + step : s - step;
    if (probe > lo && probe < hi) {
      const double fp = f(probe);
      if (fp == 0.0) return probe;
      update(probe, fp);
    }

    if (hi - lo > 0.5 * width) {
      const double m = lo + 0.5 * (hi - lo);
      if (m <= lo || m >= hi) return best();
      const double fm = f(m);
      if (fm == 0.0) return m;
      update(m, fm);
    }
  }
  if (hi - lo <= tol.abs_tol) return best();
  throw NoConvergence("find_root_bracketed: iteration limit reached");
}

struct MinimumPoint {
  double x;
  double value;
};

/// Minimizer of a unimodal f on [lo, hi].
///
/// Golden-section search narrows the bracket until comparisons of f values
/// stop being informative; the minimizer is then polished as the root of a
/// five-point central-difference derivative inside the final bracket.
template <class F>
MinimumPoint minimize_scalar(F&& f, double lo, double hi, const Tolerance& tol = {}) {
  tol.validate();
  if (!(lo < hi)) throw DomainError("minimize_scalar: need lo < hi");
  const double lo_bound = lo;
  const double hi_bound = hi;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);

  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  auto coarse_width = [&] { return std::max(tol.abs_tol, 1e-5 * std::max(1.0, std::abs(0.5 * (a + b)))); };
  while (b - a > coarse_width()) {
    if (++it > tol.max_iterations) throw NoConvergence("minimize_scalar: iteration limit reached");
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }

  double x = 0.5 * (a + b);
  if (b - a > tol.abs_tol) {
    const double h = std::max(b - a, 1e-3 * std::max(1.0, std::abs(x)));
    if (a - 2.0 * h >= lo_bound && b + 2.0 * h <= hi_bound) {
      auto slope = [&](double t) {
        return (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h);
      };
      const double sa = slope(a);
      const double sb = slope(b);
      if (sa <= 0.0 && sb >= 0.0) {
        x = find_root_bracketed(slope, a, b, tol);
      }
    }
  }
  return {x, f(x)};
}

/// Where the integrand behaves like sqrt(distance to the end point).
enum class Endpoint { smooth, sqrt_lower, sqrt_upper, sqrt_both };

namespace detail {

template <class F>
double adaptive_simpson(F& f, double a, double b, double fa, double fm, double fb, double whole, double eps,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * eps || !(lm > a && rm < b)) return left + right + delta / 15.0;
  if (depth <= 0) throw NoConvergence("integrate: recursion depth exhausted");
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

template <class F>
double simpson_driver(F&& f, double a, double b, const Tolerance& tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double eps = std::max(tol.abs_tol, tol.rel_tol * std::abs(whole));
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, tol.max_iterations);
}

}  // namespace detail

/// Integral of f over [a, b] by adaptive Simpson.
///
/// For square-root end behavior the half interval next to that end is mapped
/// through y = end -/+ t^2, which turns the integrand smooth.
template <class F>
double integrate(F&& f, double a, double b, const Tolerance& tol = Tolerance::quadrature(),
                 Endpoint ends = Endpoint::smooth) {
  tol.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate: infinite limits");
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, tol, ends);

  const Tolerance half{0.5 * tol.abs_tol, tol.rel_tol, tol.max_iterations};
  const double m = 0.5 * (a + b);
  auto lower_mapped = [&](double t) { return 2.0 * t * f(a + t * t); };
  auto upper_mapped = [&](double t) { return 2.0 * t * f(b - t * t); };
  const double t_half = std::sqrt(m - a);

  switch (ends) {
    case Endpoint::smooth:
      return detail::simpson_driver(f, a, b, tol);
    case Endpoint::sqrt_lower:
      return detail::simpson_driver(lower_mapped, 0.0, t_half, half) + detail::simpson_driver(f, m, b, half);
    case Endpoint::sqrt_upper:
      return detail::simpson_driver(f, a, m, half) + detail::simpson_driver(upper_mapped, 0.0, std::sqrt(b - m), half);
    case Endpoint::sqrt_both:
      return detail::simpson_driver(lower_mapped, 0.0, t_half, half) +
             detail::simpson_driver(upper_mapped, 0.0, std::sqrt(b - m), half);
  }
  return detail::simpson_driver(f, a, b, tol);
}

struct Eigenpair {
  double value;
  Eigen::VectorXd vector;
};

/// Number of eigenvalues of the symmetric tridiagonal (diag, off_diag) below x.
Eigen::Index sturm_count(const Eigen::Ref<const Eigen::VectorXd>& diag, const Eigen::Ref<const Eigen::VectorXd>& off_diag,
                         double x);

/// Smallest eigenvalue (Sturm bisection) and its unit eigenvector (inverse
/// iteration), first nonzero component positive.
Eigenpair lowest_eigenpair_tridiag(const Eigen::Ref<const Eigen::VectorXd>& diag,
                                   const Eigen::Ref<const Eigen::VectorXd>& off_diag, const Tolerance& tol = {});

/// y = T x for the symmetric tridiagonal T.
Eigen::VectorXd tridiag_multiply(const Eigen::Ref<const Eigen::VectorXd>& diag,
                                 const Eigen::Ref<const Eigen::VectorXd>& off_diag,
                                 const Eigen::Ref<const Eigen::VectorXd>& x);

/// Solves T x = rhs by the Thomas algorithm (no pivoting; T must be diagonally dominant or definite).
Eigen::VectorXd tridiag_solve(const Eigen::Ref<const Eigen::VectorXd>& diag,
                              const Eigen::Ref<const Eigen::VectorXd>& off_diag,
                              const Eigen::Ref<const Eigen::VectorXd>& rhs);

}  // namespace trapqm
