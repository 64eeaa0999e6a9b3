#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "whcontact/oracle.hpp"
#include "whcontact/params.hpp"
#include "whcontact/quadrature.hpp"
#include "whcontact/stress.hpp"

namespace whcontact::analysis {

/// tau(x) ~ C x^-alpha over a window of the solution grid.
struct ExponentFit {
  double alpha = 0.0;
  double C = 0.0;
  std::pair<double, double> window;
  double r_squared = 0.0;
};

/// Least-squares line through (ln x, ln |tau|) at the grid points inside
/// `window` (m). Needs at least 8 points of one sign.
ExponentFit fit_endpoint_exponent(const StressSolution& solution,
                                  std::pair<double, double> window);

/// Same fit on sampled values.
ExponentFit fit_power_law(const std::vector<double>& x, const std::vector<double>& tau);

/// Relative force imbalance |T - int_0^inf tau| / T. The grid must reach
/// 20 lambda. [0, x_0] contributes T - phi(x_0); beyond the last node the
/// analytic solutions are extended by their fitted algebraic decay, while a
/// direct solution ends where phi does. Returns 0 for T = 0.
double equilibrium_check(const StressSolution& solution, const ModelParams& params);

/// Runs case A, case B and the direct solver for k > 0 and reports:
///   caseA_vs_caseB           max relative tau gap on 64 points in [0.01, 10] lambda
///   analytic_vs_collocation  same for case B vs direct on [0.05, 5] lambda
///   analytic_residual        max |residual| / T of case B on [0.01, 20] lambda
/// plus equilibrium, certificate, tail and conditioning figures.
std::map<std::string, double> cross_validate(const ModelParams& params,
                                             const oracle::GridSpec& grid,
                                             const quad::QuadratureSpec& spec);

/// Smallest abscissa used when extrapolating tau to the endpoint:
/// 1e-4 lambda min(1, k / lambda^2).
double endpoint_scale(const ModelParams& params);

struct EndpointLimit {
  double tau0 = 0.0;  ///< +inf when the endpoint is singular
  double alpha = 0.0;
};

/// tau(0+) from samples at x_min 2^-j: the local exponent is fitted on
/// [x_min, 100 x_min]; alpha >= 0.05 is read as a singular endpoint, anything
/// else is extrapolated with tau0 + a x ln x + b x.
EndpointLimit endpoint_limit(const std::function<double(double)>& tau, double x_min);

struct SweepRow {
  double k = 0.0;
  double tau0 = 0.0;
  double alpha = 0.0;
  Method method = Method::wiener_hopf_B;
};

struct SweepTable {
  std::vector<SweepRow> rows;  ///< descending k
  bool trend_monotone = true;

  std::vector<double> ratio_to_first_row() const;
};

/// tau(0+) for each k (m^2, all > 0) with lambda and T taken from `base`.
/// `method` is wiener_hopf_A or wiener_hopf_B. Rows run in parallel.
SweepTable sweep_table(const MaterialSpec& base, std::vector<double> k_values, Method method,
                       const quad::QuadratureSpec& spec = {});

}  // namespace whcontact::analysis
