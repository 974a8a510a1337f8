#include "trapqm/numerics.hpp"

#include <cmath>
#include <limits>

namespace trapqm {

namespace {

void check_tridiag_shape(const Eigen::Ref<const Eigen::VectorXd>& diag, const Eigen::Ref<const Eigen::VectorXd>& off_diag) {
  if (diag.size() == 0) throw DimensionMismatch("tridiagonal matrix: empty diagonal");
  if (off_diag.size() != diag.size() - 1) {
    throw DimensionMismatch("tridiagonal matrix: off-diagonal length must be diagonal length - 1");
  }
}

}  // namespace

Eigen::Index sturm_count(const Eigen::Ref<const Eigen::VectorXd>& diag, const Eigen::Ref<const Eigen::VectorXd>& off_diag,
                         double x) {
  check_tridiag_shape(diag, off_diag);
  constexpr double tiny = std::numeric_limits<double>::min();
  Eigen::Index count = 0;
  double q = diag[0] - x;
  for (Eigen::Index i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 == diag.size()) break;
    q = diag[i + 1] - x - off_diag[i] * off_diag[i] / q;
  }
  return count;
}

Eigen::VectorXd tridiag_multiply(const Eigen::Ref<const Eigen::VectorXd>& diag,
                                 const Eigen::Ref<const Eigen::VectorXd>& off_diag,
                                 const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_tridiag_shape(diag, off_diag);
  if (x.size() != diag.size()) throw DimensionMismatch("tridiag_multiply: vector length mismatch");
  const Eigen::Index n = diag.size();
  Eigen::VectorXd y = diag.cwiseProduct(x);
  if (n > 1) {
    y.head(n - 1) += off_diag.cwiseProduct(x.tail(n - 1));
    y.tail(n - 1) += off_diag.cwiseProduct(x.head(n - 1));
  }
  return y;
}

Eigen::VectorXd tridiag_solve(const Eigen::Ref<const Eigen::VectorXd>& diag,
                              const Eigen::Ref<const Eigen::VectorXd>& off_diag,
                              const Eigen::Ref<const Eigen::VectorXd>& rhs) {
  check_tridiag_shape(diag, off_diag);
  if (rhs.size() != diag.size()) throw DimensionMismatch("tridiag_solve: right-hand side length mismatch");
  const Eigen::Index n = diag.size();
  Eigen::VectorXd pivot(n);
  Eigen::VectorXd x(n);
  pivot[0] = diag[0];
  x[0] = rhs[0];
  for (Eigen::Index i = 1; i < n; ++i) {
    if (pivot[i - 1] == 0.0) throw NumericalFailure("tridiag_solve: zero pivot");
    const double w = off_diag[i - 1] / pivot[i - 1];
    pivot[i] = diag[i] - w * off_diag[i - 1];
    x[i] = rhs[i] - w * x[i - 1];
  }
  if (pivot[n - 1] == 0.0) throw NumericalFailure("tridiag_solve: zero pivot");
  x[n - 1] /= pivot[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i) {
    x[i] = (x[i] - off_diag[i] * x[i + 1]) / pivot[i];
  }
  return x;
}

Eigenpair lowest_eigenpair_tridiag(const Eigen::Ref<const Eigen::VectorXd>& diag,
                                   const Eigen::Ref<const Eigen::VectorXd>& off_diag, const Tolerance& tol) {
  tol.validate();
  check_tridiag_shape(diag, off_diag);
  const Eigen::Index n = diag.size();
  if (n == 1) return {diag[0], Eigen::VectorXd::Ones(1)};

  // Gershgorin interval.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(off_diag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off_diag[i]) : 0.0);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  lo -= 1e-14 * scale + std::numeric_limits<double>::min();

  // Invariant: sturm_count(lo) == 0, sturm_count(hi) >= 1.
  int it = 0;
  while (hi - lo > tol.abs_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (++it > tol.max_iterations) throw NoConvergence("lowest_eigenpair_tridiag: bisection iteration limit");
    if (sturm_count(diag, off_diag, mid) == 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double eigenvalue = 0.5 * (lo + hi);

  // Inverse iteration with a shift strictly below the spectrum keeps
  // T - shift positive definite, so the Thomas sweep needs no pivoting.
  const double shift = lo - std::max(hi - lo, 1e-13 * std::max(scale, 1.0));
  const Eigen::VectorXd shifted = diag.array() - shift;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < 8; ++k) {
    Eigen::VectorXd w = tridiag_solve(shifted, off_diag, v);
    w.normalize();
    const double change = std::min((w - v).lpNorm<Eigen::Infinity>(), (w + v).lpNorm<Eigen::Infinity>());
    v = std::move(w);
    if (change < 1e-15) break;
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    if (v[i] != 0.0) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  return {eigenvalue, std::move(v)};
}

}  // namespace trapqm
