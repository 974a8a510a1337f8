#pragma once

// Reference solvers. Linear problems are discretized with second-order
// central differences between Dirichlet walls at the grid end points and
// diagonalized with lowest_eigenpair_tridiag; nonlinear (GPE) ground states
// come from a normalized gradient flow with a backward-Euler step.

#include <functional>
#include <map>
#include <string>

#include "trapqm/numerics.hpp"

namespace trapqm::oracle {

using Potential = std::function<double(double)>;

struct FlowParams {
  double time_step = 0.5;
  long max_steps = 2'000'000;
  double mu_tol = 1e-10;

  void validate() const {
    if (!(time_step > 0.0) || max_steps <= 0 || !(mu_tol > 0.0)) {
      throw DomainError("FlowParams: need time_step > 0, max_steps > 0, mu_tol > 0");
    }
  }
};

struct OracleResult {
  double energy = 0.0;
  GridFunction wavefunction;
  Grid1D grid;
  bool converged = false;
  long steps_or_gridpoints = 0;
  /// kinetic, potential, interaction, residual, time_step, ... where meaningful.
  std::map<std::string, double> diagnostics;
};

/// Lowest eigenvalue of -1/2 psi'' + V psi on `grid` at a single resolution (no extrapolation).
Eigenpair fd_ground_state_1d(const Potential& potential, const Grid1D& grid, const Tolerance& tol = {});

/// Same for the radial u-equation of an N-dimensional s-state:
/// -1/2 u'' + [(N-1)(N-3)/(8 r^2) + V(r)] u = E u, u = 0 at both grid ends.
Eigenpair fd_ground_state_radial(int dimension, const Potential& potential, const Grid1D& grid,
                                 const Tolerance& tol = {});

/// Ground state of -1/2 psi'' + V psi = E psi, Richardson-extrapolated from h and h/2.
OracleResult schrodinger_ground_1d(const Potential& potential, const Grid1D& grid, const Tolerance& tol = {});

/// Radial s-state ground state in `dimension` dimensions. The grid is [r_min, r_max]
/// with r_min >= 0; u vanishes at both ends. Dimension 1 is solved as the
/// even state on the mirrored grid [-r_max, r_max].
OracleResult schrodinger_ground_radial(int dimension, const Potential& potential, const Grid1D& grid,
                                       const Tolerance& tol = {});

/// Ground state of -1/2 phi'' + xi^2/2 phi + lambda phi^3 = mu phi, int phi^2 = 1.
OracleResult gpe_ground_1d(double lambda, const Grid1D& grid, const FlowParams& flow = {});

/// Ground state of -1/2 u'' + r^2/2 u + gamma (u^2/r^2) u = mu u, int u^2 dr = 1
/// (u = sqrt(4 pi) r psi, gamma = n a / a_osc).
OracleResult gpe_ground_radial3d(double gamma, const Grid1D& grid, const FlowParams& flow = {});

/// [-L, L] with L = max(8, 2 sqrt(2 mu_TF)) and 4001 points.
Grid1D default_grid_1d(double lambda, Eigen::Index points = 4001);

/// [0, L] with L = max(8, 2 sqrt(2 mu_TF)) for the 3D Thomas-Fermi mu and 4001 points.
Grid1D default_grid_radial3d(double gamma, Eigen::Index points = 4001);

}  // namespace trapqm::oracle
