// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "trapqm/constants.hpp"
#include "trapqm/gpe1d.hpp"
#include "trapqm/gpend.hpp"
#include "trapqm/largen.hpp"
#include "trapqm/oracle.hpp"

using namespace trapqm;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED{" << what << "}";
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, double time_limit_s, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " exception: " << e.what();
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0 && elapsed >= time_limit_s) {
    v.pass = false;
    v.detail << " runtime " << elapsed << " s over limit " << time_limit_s << " s";
  }
  if (!v.pass) ++failures;
  std::printf("[%s] %s %s (%.3f s):%s\n", v.pass ? "PASS" : "FAIL", id, title, elapsed, v.detail.str().c_str());
}

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

constexpr std::array<double, 13> kTableEbar{1.774, 2.046, 2.245, 2.62,  3.159, 3.571, 3.914,
                                            4.214, 4.483, 4.727, 4.954, 5.165, 5.363};

}  // namespace

int main() {
  criterion("1", "caesium table, combined large-N Thomas-Fermi column", 1.0, [](Verdict& v) {
    const auto rows = gpend::table1(gpend::PhysicalTrap::caesium(1), constants::table1_atom_counts);
    double worst = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double rounded = std::round(rows[i].e_bar_tf_largen * 1000.0) / 1000.0;
      const double dev = std::abs(rounded - kTableEbar[i]);
      worst = std::max(worst, dev);
      v.require(dev <= 0.005, "n=" + std::to_string(rows[i].n) + " got " + fmt(rounded, 4));
    }
    v.require(rows.size() == kTableEbar.size(), "row count");
    v.detail << " 13 rows, max |dev| " << fmt(worst, 3) << " (tol 0.005)";
  });

  criterion("2", "quartic oscillator", 5.0, [](Verdict& v) {
    const auto q = oracle::schrodinger_ground_1d([](double x) { return x * x * x * x; }, Grid1D(-8.0, 8.0, 4001));
    const double e = largen::two_term_energy(largen::Quartic{1.0}, 1, largen::CurvatureMode::PaperPrinted).value;
    v.require(std::abs(q.energy - 0.668) <= 0.001, "oracle");
    v.require(std::abs(e - 0.61) <= 0.005, "two-term");
    v.detail << " oracle " << fmt(q.energy, 8) << " (0.668 +- 0.001), two-term " << fmt(e, 6) << " (0.61 +- 0.005)";
  });

  criterion("3", "harmonic exactness", 0.0, [](Verdict& v) {
    for (int n = 1; n <= 10; ++n) {
      const double e = largen::two_term_energy(largen::Harmonic{1.0}, n, largen::CurvatureMode::PaperPrinted).value;
      v.require(e == n / 2.0, "N=" + std::to_string(n));
    }
    auto h = [](double x) { return 0.5 * x * x; };
    const double e1 = oracle::schrodinger_ground_1d(h, Grid1D(-10.0, 10.0, 2001)).energy;
    const double e3 = oracle::schrodinger_ground_radial(3, h, Grid1D(0.0, 10.0, 2001)).energy;
    v.require(std::abs(e1 - 0.5) <= 1e-6, "1D oracle");
    v.require(std::abs(e3 - 1.5) <= 1e-6, "radial N=3 oracle");
    v.detail << " N/2 exact for N=1..10, 1D " << fmt(std::abs(e1 - 0.5), 2) << " off, radial "
             << fmt(std::abs(e3 - 1.5), 2) << " off (tol 1e-6)";
  });

  criterion("4", "N=3 reduction identity", 0.0, [](Verdict& v) {
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
      const double g = 1e-3 * std::pow(3e4, i / 24.0);
      const double general = 3.0 * gpend::solve_eps_general(3.0, 4.0 * std::numbers::pi * g).eps;
      const double closed = gpend::solve_ebar_3d(g).e_bar;
      worst = std::max(worst, std::abs(general - closed));
    }
    v.require(worst < 1e-9, "identity");
    v.detail << " 25 gammas in [1e-3, 30], max |diff| " << fmt(worst, 3) << " (tol 1e-9)";
  });

  criterion("5", "WKB numeric vs closed form", 0.0, [](Verdict& v) {
    std::vector<double> rel;
    double worst_residual = 0.0;
    for (double l : {10.0, 100.0, 1000.0}) {
      const auto [num_e, num] = gpe1d::tf_wkb_numeric({l});
      const auto closed = gpe1d::tf_wkb_closed({l}).second;
      rel.push_back(std::abs(num.eps1 - closed.eps1) / closed.eps1);
      worst_residual = std::max(worst_residual, num_e.metadata.at("quantization_residual"));
    }
    v.require(rel[1] < 0.02, "rel diff at lambda=100 is " + fmt(rel[1], 4));
    v.require(rel[1] < rel[0] && rel[2] < rel[1], "shrinking over {10,100,1000}");
    v.require(worst_residual < 1e-8, "quantization residual");
    v.detail << " rel diff " << fmt(rel[0], 4) << ", " << fmt(rel[1], 4) << ", " << fmt(rel[2], 4)
             << "; residual " << fmt(worst_residual, 2);
  });

  criterion("6", "1D GPE ordering and convergence", 30.0, [](Verdict& v) {
    double prev = 1.0;
    for (double l : {1.0, 2.0, 5.0, 10.0, 20.0}) {
      const double tf = gpe1d::tf_energy({l}).value;
      const double wkb = gpe1d::tf_wkb_closed({l}).first.value;
      const double mu = oracle::gpe_ground_1d(l, oracle::default_grid_1d(l)).energy;
      const double gap = std::abs(wkb - mu) / mu;
      v.require(tf < wkb, "tf < tf-wkb at " + fmt(l));
      v.require(gap < prev, "gap decreasing at " + fmt(l));
      prev = gap;
      v.detail << " l=" << fmt(l) << ":" << fmt(100 * gap, 3) << "%";
    }
    v.require(prev < 0.03, "gap at 20");
  });

  criterion("7", "radial GPE vs tabulated reference energies", 60.0, [](Verdict& v) {
    const std::array<std::pair<long, double>, 3> cases{{{200, 1.688}, {2000, 2.535}, {20000, 5.435}}};
    for (const auto& [n, target] : cases) {
      const double gamma = gpend::PhysicalTrap::caesium(n).gamma();
      const double mu = oracle::gpe_ground_radial3d(gamma, oracle::default_grid_radial3d(gamma)).energy;
      const double rel = (mu - target) / target;
      v.require(std::abs(rel) < 0.01, "n=" + std::to_string(n));
      v.detail << " n=" << n << ": " << fmt(mu, 7) << " vs " << target << " (" << fmt(100 * rel, 3) << "%)";
    }
  });

  criterion("8", "property suites", 0.0, [](Verdict& v) {
    for (int i = 0; i < 30; ++i) {
      const double eps = 0.5 * std::pow(100.0, i / 29.0);
      const auto [r1, r2] = gpend::turning_points(eps);
      v.require(std::abs(gpend::nd_density_profile(eps, r1)) < 1e-12 * eps &&
                    std::abs(gpend::nd_density_profile(eps, r2)) < 1e-12 * eps,
                "turning-point roots");
    }
    for (double l : {0.5, 1.0, 20.0, 1e3}) {
      const double ym = std::sqrt(2.0 * gpe1d::tf_eps0(l));
      const double mass = integrate([&](double y) { return gpe1d::tf_density(y, l); }, -ym, ym);
      v.require(std::abs(mass * std::sqrt(l) - 1.0) < 1e-10, "TF normalization");
    }
    auto quartic = [](double x) { return x * x * x * x; };
    const Grid1D g(-8.0, 8.0, 401);
    const double e1 = oracle::fd_ground_state_1d(quartic, g).value;
    const double e2 = oracle::fd_ground_state_1d(quartic, g.refined()).value;
    const double e3 = oracle::fd_ground_state_1d(quartic, g.refined().refined()).value;
    const double ratio = (e1 - e2) / (e2 - e3);
    v.require(ratio >= 3.5 && ratio <= 4.5, "O(h^2) ratio " + fmt(ratio));
    double worst_stat = 0.0;
    for (double l : {0.0, 1.0, 20.0, 1e4}) worst_stat = std::max(worst_stat, gpe1d::variational_delta({l}).residual);
    v.require(worst_stat < 1e-6, "variational stationarity");
    const auto flow = oracle::gpe_ground_1d(5.0, oracle::default_grid_1d(5.0));
    const double drift = flow.diagnostics.at("max_norm_drift");
    v.require(drift < 1e-12, "flow normalization");
    v.detail << " h^2 ratio " << fmt(ratio, 5) << ", stationarity " << fmt(worst_stat, 2) << ", norm drift "
             << fmt(drift, 2);
  });

  criterion("F1", "1D coupling sweep orderings", 0.0, [](Verdict& v) {
    std::vector<double> lambdas;
    for (int i = 1; i <= 40; ++i) lambdas.push_back(0.5 * i);
    const std::vector<gpe1d::Method> methods{gpe1d::Method::Tf, gpe1d::Method::TfWkbClosed,
                                             gpe1d::Method::Variational};
    const auto rows = gpe1d::sweep_methods(lambdas, methods);
    double prev = 1.0;
    double worst_above = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const double tf = rows[3 * i].energy, wkb = rows[3 * i + 1].energy, var = rows[3 * i + 2].energy;
      v.require(tf < wkb, "tf < tf-wkb at " + fmt(lambdas[i]));
      if (lambdas[i] <= 2.0) v.require(wkb < var, "tf-wkb < variational at " + fmt(lambdas[i]));
      worst_above = std::max(worst_above, (wkb - var) / var);
      const double correction = (wkb - tf) / tf;
      v.require(correction < prev, "tf-wkb -> tf at " + fmt(lambdas[i]));
      prev = correction;
    }
    v.require(worst_above < 0.015, "tf-wkb near variational");
    const std::size_t last = 3 * (lambdas.size() - 1);
    const double spread_lo = (rows[2].energy - rows[0].energy) / rows[2].energy;
    const double spread_hi =
        std::abs(std::max(rows[last + 1].energy, rows[last + 2].energy) - std::min(rows[last].energy, rows[last + 2].energy)) /
        rows[last + 2].energy;
    v.require(spread_hi < 0.1 * spread_lo, "curves converge");
    v.detail << " tf < tf-wkb at 40 points, tf-wkb at most " << fmt(100 * worst_above, 3)
             << "% above variational, spread " << fmt(100 * spread_lo, 3) << "% -> " << fmt(100 * spread_hi, 3) << "%";
  });

  criterion("F2", "3D coupling sweep orderings", 0.0, [](Verdict& v) {
    double prev = 1.0;
    for (long n : {200L, 600L, 2000L, 6000L, 20000L}) {
      const double gamma = gpend::PhysicalTrap::caesium(n).gamma();
      const double est = gpend::solve_ebar_3d(gamma).e_bar;
      const double mu = oracle::gpe_ground_radial3d(gamma, oracle::default_grid_radial3d(gamma, 2001)).energy;
      const double gap = (est - mu) / mu;
      v.require(est > mu, "estimate above reference at n=" + std::to_string(n));
      if (n >= 2000) v.require(gap < prev, "convergence at n=" + std::to_string(n));
      prev = gap;
      v.detail << " n=" << n << ":" << fmt(100 * gap, 3) << "%";
    }
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
