#pragma once

#include <vector>

#include "whcontact/params.hpp"
#include "whcontact/stress.hpp"

namespace whcontact::oracle {

/// Collocation mesh on [0, L lambda]: N elements whose sizes grow
/// geometrically away from x = 0 and level off at 1000 times the first.
/// `grading` is the ratio of neighbouring elements at N = 200; the growth
/// zone covers the same fraction of nodes for every N, so refining N
/// shrinks all elements alike.
struct GridSpec {
  double L = 40.0;  ///< truncation length in units of lambda
  int N = 800;
  double grading = 1.08;

  void validate() const;
};

/// Node positions (m), x[0] = 0 and x[N] = L lambda.
std::vector<double> graded_mesh(const GridSpec& grid, double lambda);

/// Dense matrix W with (W u)_i = PV int_0^{x_N} u(t) dt / (t - x_i) for the
/// piecewise-linear u through nodal values; rows 0 and N are zero. Row-major,
/// (N + 1) x (N + 1).
std::vector<double> cauchy_matrix(const std::vector<double>& x);

/// Direct solve of phi - (lambda/pi) PV int phi' dt/(t - x) - k phi'' = 0 on
/// [0, L], phi(0) = T, phi(L) = 0. Returns nodes, tau = -phi', phi, and
/// diagnostics (rcond, probe residual, boundary errors).
StressSolution solve_direct(const ModelParams& params, const GridSpec& grid = {});

/// Signed residual phi + (lambda/pi) PV int tau dt/(t - x) + k tau' of the
/// equation at each probe, from local cubic interpolation of the solution.
/// Solutions other than direct collocation get a c/t^2 far-field tail beyond
/// their last node. Probes must lie strictly inside the solution grid. Within
/// a few elements of x = 0 the k tau' term is only as good as a local cubic
/// slope of a function with a log-singular derivative.
std::vector<double> residual(const StressSolution& solution, const ModelParams& params,
                             const std::vector<double>& probes);

}  // namespace whcontact::oracle
