#include "trapqm/oracle.hpp"

#include <cmath>
#include <utility>

namespace trapqm::oracle {

namespace {

constexpr Eigen::Index kWallPoints = 5;
constexpr double kWallMass = 1e-8;

struct Walls {
  bool lower = true;
  bool upper = true;
};

// Interior nodes of the grid; the two end points are Dirichlet walls.
Eigen::VectorXd interior_points(const Grid1D& grid) { return grid.points().segment(1, grid.size() - 2); }

// Full-grid samples with zero walls, scaled to unit trapezoid norm.
GridFunction embed(const Grid1D& grid, const Eigen::VectorXd& interior) {
  Eigen::VectorXd values = Eigen::VectorXd::Zero(grid.size());
  values.segment(1, grid.size() - 2) = interior;
  GridFunction f(grid, values);
  return GridFunction(grid, values / std::sqrt(f.norm_squared()));
}

void check_walls(const GridFunction& f, Walls walls) {
  const Eigen::VectorXd& v = f.values();
  const double h = f.grid().spacing();
  double mass = 0.0;
  if (walls.lower) mass += h * v.head(kWallPoints + 1).squaredNorm();
  if (walls.upper) mass += h * v.tail(kWallPoints + 1).squaredNorm();
  if (mass > kWallMass) throw GridTooNarrow("eigenfunction has weight at a Dirichlet wall; widen the grid");
}

double kinetic_energy(const GridFunction& f) {
  const Eigen::VectorXd& v = f.values();
  const double h = f.grid().spacing();
  const Eigen::Index n = v.size();
  return 0.5 * (v.tail(n - 1) - v.head(n - 1)).squaredNorm() / h;
}

double potential_energy(const GridFunction& f, const Eigen::VectorXd& potential_interior) {
  const Eigen::VectorXd& v = f.values();
  const Eigen::Index n = v.size();
  return f.grid().spacing() * (potential_interior.array() * v.segment(1, n - 2).array().square()).sum();
}

void check_potential(const Eigen::VectorXd& v) {
  if (!v.allFinite()) throw DomainError("potential is not finite on the grid");
}

Eigen::VectorXd sample(const Potential& potential, const Eigen::VectorXd& x) {
  Eigen::VectorXd v(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) v[i] = potential(x[i]);
  check_potential(v);
  return v;
}

Eigen::VectorXd centrifugal(int dimension, const Eigen::VectorXd& r) {
  const double c = (dimension - 1.0) * (dimension - 3.0) / 8.0;
  return c * r.array().square().inverse();
}

Eigenpair fd_solve(const Grid1D& grid, const Eigen::VectorXd& potential_interior, const Tolerance& tol) {
  const double h = grid.spacing();
  const Eigen::VectorXd diag = potential_interior.array() + 1.0 / (h * h);
  const Eigen::VectorXd off = Eigen::VectorXd::Constant(diag.size() - 1, -0.5 / (h * h));
  return lowest_eigenpair_tridiag(diag, off, tol);
}

OracleResult extrapolated(const Grid1D& grid, const std::function<Eigen::VectorXd(const Grid1D&)>& potential_on,
                          const Tolerance& tol, Walls walls) {
  const Eigen::VectorXd coarse_potential = potential_on(grid);
  const Eigenpair coarse = fd_solve(grid, coarse_potential, tol);
  GridFunction wavefunction = embed(grid, coarse.vector);
  check_walls(wavefunction, walls);

  const Grid1D fine_grid = grid.refined();
  const Eigenpair fine = fd_solve(fine_grid, potential_on(fine_grid), tol);

  OracleResult r{(4.0 * fine.value - coarse.value) / 3.0, wavefunction, grid, true, fine_grid.size(), {}};
  r.diagnostics["energy_h"] = coarse.value;
  r.diagnostics["energy_h_half"] = fine.value;
  r.diagnostics["kinetic"] = kinetic_energy(r.wavefunction);
  r.diagnostics["potential"] = potential_energy(r.wavefunction, coarse_potential);
  return r;
}

// Backward-Euler normalized gradient flow:
//   (1 + tau H[phi_k]) phi* = phi_k,  phi_{k+1} = phi* / ||phi*||,
// with H[phi] = -1/2 d^2 + V + c phi^2 and c the local coupling.
struct FlowOutcome {
  double mu;
  Eigen::VectorXd phi;
  long steps;
  double residual;
  double max_norm_drift;
};

double discrete_norm(const Eigen::VectorXd& phi, double h) { return std::sqrt(h * phi.squaredNorm()); }

FlowOutcome run_flow(const Grid1D& grid, const Eigen::VectorXd& potential, const Eigen::VectorXd& coupling,
                     Eigen::VectorXd phi, double tau, const FlowParams& flow) {
  const double h = grid.spacing();
  const double kin_diag = 1.0 / (h * h);
  const double kin_off = -0.5 / (h * h);
  const Eigen::Index m = phi.size();
  const Eigen::VectorXd off = Eigen::VectorXd::Constant(m - 1, kin_off);
  const Eigen::VectorXd step_off = tau * off;

  phi /= discrete_norm(phi, h);
  double mu_prev = std::numeric_limits<double>::infinity();
  double max_drift = 0.0;
  for (long step = 1; step <= flow.max_steps; ++step) {
    const Eigen::VectorXd frozen = potential.array() + kin_diag + coupling.array() * phi.array().square();
    const Eigen::VectorXd step_diag = 1.0 + tau * frozen.array();
    phi = tridiag_solve(step_diag, step_off, phi);
    phi /= discrete_norm(phi, h);
    max_drift = std::max(max_drift, std::abs(h * phi.squaredNorm() - 1.0));

    const Eigen::VectorXd diag = potential.array() + kin_diag + coupling.array() * phi.array().square();
    const Eigen::VectorXd h_phi = tridiag_multiply(diag, off, phi);
    const double mu = h * phi.dot(h_phi);
    if (!std::isfinite(mu)) throw Diverged("gradient flow: chemical potential is not finite");
    const double residual = std::sqrt(h * (h_phi - mu * phi).squaredNorm());
    if (std::abs(mu - mu_prev) < flow.mu_tol && residual < 50.0 * flow.mu_tol) {
      return {mu, std::move(phi), step, residual, max_drift};
    }
    mu_prev = mu;
  }
  throw NoConvergence("gradient flow: max_steps reached before mu converged");
}

FlowOutcome flow_with_retry(const Grid1D& grid, const Eigen::VectorXd& potential, const Eigen::VectorXd& coupling,
                            const Eigen::VectorXd& initial, const FlowParams& flow) {
  try {
    return run_flow(grid, potential, coupling, initial, flow.time_step, flow);
  } catch (const Diverged&) {
    return run_flow(grid, potential, coupling, initial, 0.1 * flow.time_step, flow);
  }
}

OracleResult flow_result(const Grid1D& grid, const Eigen::VectorXd& potential, const Eigen::VectorXd& coupling,
                         const FlowOutcome& out, const FlowParams& flow, Walls walls) {
  GridFunction wavefunction = embed(grid, out.phi);
  check_walls(wavefunction, walls);
  OracleResult r{out.mu, wavefunction, grid, true, out.steps, {}};
  const Eigen::VectorXd& v = wavefunction.values();
  const Eigen::ArrayXd inner = v.segment(1, grid.size() - 2).array();
  r.diagnostics["kinetic"] = kinetic_energy(wavefunction);
  r.diagnostics["potential"] = potential_energy(wavefunction, potential);
  r.diagnostics["interaction"] = grid.spacing() * (coupling.array() * inner.pow(4)).sum();
  r.diagnostics["residual"] = out.residual;
  r.diagnostics["max_norm_drift"] = out.max_norm_drift;
  r.diagnostics["time_step"] = flow.time_step;
  r.diagnostics["steps"] = static_cast<double>(out.steps);
  return r;
}

}  // namespace

Eigenpair fd_ground_state_1d(const Potential& potential, const Grid1D& grid, const Tolerance& tol) {
  return fd_solve(grid, sample(potential, interior_points(grid)), tol);
}

Eigenpair fd_ground_state_radial(int dimension, const Potential& potential, const Grid1D& grid, const Tolerance& tol) {
  if (dimension < 1) throw DomainError("radial solver: dimension must be >= 1");
  if (grid.x_min() < 0.0) throw DomainError("radial solver: grid must start at r >= 0");
  const Eigen::VectorXd r = interior_points(grid);
  return fd_solve(grid, sample(potential, r) + centrifugal(dimension, r), tol);
}

OracleResult schrodinger_ground_1d(const Potential& potential, const Grid1D& grid, const Tolerance& tol) {
  return extrapolated(
      grid, [&](const Grid1D& g) { return sample(potential, interior_points(g)); }, tol, Walls{});
}

OracleResult schrodinger_ground_radial(int dimension, const Potential& potential, const Grid1D& grid,
                                       const Tolerance& tol) {
  if (dimension < 1) throw DomainError("radial solver: dimension must be >= 1");
  if (grid.x_min() < 0.0) throw DomainError("radial solver: grid must start at r >= 0");

  if (dimension == 1) {
    // Even extension: the 1D ground state has no node at the origin.
    if (grid.x_min() != 0.0) throw DomainError("radial solver: dimension 1 needs a grid starting at r = 0");
    const Grid1D mirrored(-grid.x_max(), grid.x_max(), 2 * grid.size() - 1);
    OracleResult full = schrodinger_ground_1d([&](double x) { return potential(std::abs(x)); }, mirrored, tol);
    const Eigen::VectorXd half = std::sqrt(2.0) * full.wavefunction.values().tail(grid.size());
    return OracleResult{full.energy, GridFunction(grid, half), grid, true, full.steps_or_gridpoints, full.diagnostics};
  }

  return extrapolated(
      grid,
      [&](const Grid1D& g) {
        const Eigen::VectorXd r = interior_points(g);
        return Eigen::VectorXd(sample(potential, r) + centrifugal(dimension, r));
      },
      tol, Walls{grid.x_min() > 0.0, true});
}

OracleResult gpe_ground_1d(double lambda, const Grid1D& grid, const FlowParams& flow) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("gpe_ground_1d: need finite lambda >= 0");
  flow.validate();
  const Eigen::VectorXd x = interior_points(grid);
  const Eigen::VectorXd potential = 0.5 * x.array().square();
  const Eigen::VectorXd coupling = Eigen::VectorXd::Constant(x.size(), lambda);
  const Eigen::VectorXd initial = (-0.5 * x.array().square()).exp();
  const FlowOutcome out = flow_with_retry(grid, potential, coupling, initial, flow);
  return flow_result(grid, potential, coupling, out, flow, Walls{});
}

OracleResult gpe_ground_radial3d(double gamma, const Grid1D& grid, const FlowParams& flow) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("gpe_ground_radial3d: need finite gamma >= 0");
  if (grid.x_min() < 0.0) throw DomainError("gpe_ground_radial3d: grid must start at r >= 0");
  flow.validate();
  const Eigen::VectorXd r = interior_points(grid);
  const Eigen::VectorXd potential = 0.5 * r.array().square();
  const Eigen::VectorXd coupling = gamma * r.array().square().inverse();
  const Eigen::VectorXd initial = r.array() * (-0.5 * r.array().square()).exp();
  const FlowOutcome out = flow_with_retry(grid, potential, coupling, initial, flow);
  return flow_result(grid, potential, coupling, out, flow, Walls{grid.x_min() > 0.0, true});
}

Grid1D default_grid_1d(double lambda, Eigen::Index points) {
  const double mu_tf = lambda > 0.0 ? 0.5 * std::pow(1.5, 2.0 / 3.0) * std::pow(lambda, 2.0 / 3.0) : 0.5;
  const double half_width = std::max(8.0, 2.0 * std::sqrt(2.0 * mu_tf));
  return Grid1D(-half_width, half_width, points);
}

Grid1D default_grid_radial3d(double gamma, Eigen::Index points) {
  const double mu_tf = gamma > 0.0 ? 0.5 * std::pow(15.0 * gamma, 0.4) : 1.5;
  const double radius = std::max(8.0, 2.0 * std::sqrt(2.0 * mu_tf));
  return Grid1D(0.0, radius, points);
}

}  // namespace trapqm::oracle
