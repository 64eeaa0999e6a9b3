#include "whcontact/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "whcontact/error.hpp"
#include "whcontact/parallel.hpp"
#include "whcontact/wiener_hopf.hpp"

namespace whcontact::analysis {

namespace {

std::vector<double> log_points(double lo, double hi, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = lo * std::pow(hi / lo, i / double(n - 1));
  return x;
}

double relative_gap(double a, double b) { return b != 0.0 ? std::abs(a - b) / std::abs(b) : std::abs(a - b); }

bool is_analytic(Method m) { return m != Method::direct_collocation; }

// int_a^b of the local cubic, which is fixed on each grid interval.
double cubic_integral(const std::vector<double>& x, const std::vector<double>& y) {
  static const double g = 1.0 / std::sqrt(3.0);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double mid = 0.5 * (x[i] + x[i + 1]), half = 0.5 * (x[i + 1] - x[i]);
    sum += half * (interpolate_cubic(x, y, mid - g * half) + interpolate_cubic(x, y, mid + g * half));
  }
  return sum;
}

}  // namespace

ExponentFit fit_power_law(const std::vector<double>& x, const std::vector<double>& tau) {
  if (x.size() != tau.size()) throw Error(ErrorCode::invalid_argument, "x and tau differ in length");
  if (x.size() < 8) {
    std::ostringstream msg;
    msg << x.size() << " points in the fit window, need 8";
    throw Error(ErrorCode::too_few_points, msg.str());
  }
  const bool positive = tau.front() > 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (tau[i] == 0.0 || (tau[i] > 0.0) != positive)
      throw Error(ErrorCode::sign_change_in_window, "tau is not of one sign in the window");
    if (!(x[i] > 0.0)) throw Error(ErrorCode::invalid_argument, "fit abscissae must be positive");
    const double lx = std::log(x[i]), ly = std::log(std::abs(tau[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (!(den > 0.0)) throw Error(ErrorCode::too_few_points, "fit abscissae are not distinct");
  const double slope = (n * sxy - sx * sy) / den;
  const double intercept = (sy - slope * sx) / n;

  double ss_res = 0.0, ss_tot = 0.0;
  const double mean = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ly = std::log(std::abs(tau[i]));
    ss_res += std::pow(ly - intercept - slope * std::log(x[i]), 2);
    ss_tot += std::pow(ly - mean, 2);
  }
  ExponentFit fit;
  fit.alpha = -slope;
  fit.C = (positive ? 1.0 : -1.0) * std::exp(intercept);
  fit.window = {x.front(), x.back()};
  // A flat exact fit leaves both sums at rounding level.
  fit.r_squared = ss_res <= 1e-20 * n ? 1.0 : std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  return fit;
}

ExponentFit fit_endpoint_exponent(const StressSolution& solution,
                                  std::pair<double, double> window) {
  const auto [lo, hi] = window;
  if (!(lo > 0.0 && lo < hi)) throw Error(ErrorCode::invalid_argument, "empty fit window");
  if (solution.x.empty() || lo < solution.x.front() || hi > solution.x.back())
    throw Error(ErrorCode::invalid_argument, "fit window reaches outside the solution grid");
  std::vector<double> xs, ts;
  for (std::size_t i = 0; i < solution.x.size(); ++i) {
    if (solution.x[i] < lo || solution.x[i] > hi) continue;
    xs.push_back(solution.x[i]);
    ts.push_back(solution.tau[i]);
  }
  auto fit = fit_power_law(xs, ts);
  fit.window = window;
  return fit;
}

double equilibrium_check(const StressSolution& solution, const ModelParams& params) {
  const auto& x = solution.x;
  if (x.size() < 4 || x.back() < 20.0 * params.lambda) {
    std::ostringstream msg;
    msg << "grid ends at " << (x.empty() ? 0.0 : x.back()) << ", need " << 20.0 * params.lambda;
    throw Error(ErrorCode::insufficient_domain, msg.str());
  }
  if (params.T == 0.0) return 0.0;

  double total = cubic_integral(x, solution.tau);
  if (x.front() > 0.0) {
    total += solution.phi.empty() ? solution.tau.front() * x.front() : params.T - solution.phi.front();
  }
  if (is_analytic(solution.method)) {
    const double X = x.back();
    std::vector<double> xs, ts;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] >= 0.5 * X) {
        xs.push_back(x[i]);
        ts.push_back(solution.tau[i]);
      }
    }
    // A sparse far grid still gets a usable fit from the cubic.
    if (xs.size() < 8) {
      xs = log_points(0.5 * X, X, 16);
      ts.clear();
      for (double v : xs) ts.push_back(interpolate_cubic(x, solution.tau, v));
    }
    const auto fit = fit_power_law(xs, ts);
    const double p = fit.alpha;
    if (!(p > 1.0)) {
      std::ostringstream msg;
      msg << "far-field decay exponent " << p << " is not integrable";
      throw Error(ErrorCode::tail_fit_failed, msg.str());
    }
    total += fit.C * std::pow(X, 1.0 - p) / (p - 1.0);
  }
  return std::abs(params.T - total) / std::abs(params.T);
}

std::map<std::string, double> cross_validate(const ModelParams& params,
                                             const oracle::GridSpec& grid,
                                             const quad::QuadratureSpec& spec) {
  if (!(params.k > 0.0)) throw Error(ErrorCode::k_zero_unsupported, "cross validation needs k > 0");
  grid.validate();
  const double lambda = params.lambda;
  auto a_params = params, b_params = params;
  a_params.kind = CaseKind::case_a;
  b_params.kind = CaseKind::case_b;

  const auto a_sol = wh::spectral_solution(wh::CoefficientCase::from(a_params), spec);
  const auto b_sol = wh::spectral_solution(wh::CoefficientCase::from(b_params), spec);

  // One table for both cases, wide enough for the equilibrium tail.
  const auto table_x = log_points(1e-4 * lambda, 40.0 * lambda, 481);
  const auto a = wh::contact_stress(a_sol, table_x, spec);
  const auto b = wh::contact_stress(b_sol, table_x, spec);
  const auto direct = oracle::solve_direct(b_params, grid);

  std::map<std::string, double> out;
  double ab = 0.0;
  for (double x : log_points(0.01 * lambda, 10.0 * lambda, 64))
    ab = std::max(ab, relative_gap(wh::stress_at(a_sol, x), wh::stress_at(b_sol, x)));
  double ad = 0.0;
  for (double x : log_points(0.05 * lambda, 5.0 * lambda, 64))
    ad = std::max(ad, relative_gap(interpolate_cubic(direct.x, direct.tau, x), wh::stress_at(b_sol, x)));
  double res = 0.0;
  for (double r : oracle::residual(b, b_params, log_points(0.01 * lambda, 20.0 * lambda, 64)))
    res = std::max(res, std::abs(r));
  if (params.T != 0.0) res /= std::abs(params.T);

  out["caseA_vs_caseB"] = ab;
  out["analytic_vs_collocation"] = ad;
  out["analytic_residual"] = res;
  out["equilibrium_analytic"] = equilibrium_check(b, b_params);
  out["equilibrium_collocation"] = equilibrium_check(direct, b_params);
  out["collocation_residual"] = direct.diagnostics.at("max_probe_residual") / (params.T != 0.0 ? std::abs(params.T) : 1.0);
  out["collocation_rcond"] = direct.diagnostics.at("rcond");
  out["caseA_certificate_jump"] = a_sol.certificate().max_jump_residual;
  out["caseB_certificate_jump"] = b_sol.certificate().max_jump_residual;
  out["caseA_certificate_infinity"] = a_sol.certificate().infinity_residual;
  out["caseB_certificate_infinity"] = b_sol.certificate().infinity_residual;
  out["caseA_tail_exponent"] = a_sol.tail_exponent();
  out["caseB_tail_exponent"] = b_sol.tail_exponent();
  out["caseA_realness"] = a.diagnostics.at("realness");
  out["caseB_realness"] = b.diagnostics.at("realness");
  if (params.T != 0.0) {
    out["endpoint_alpha"] = fit_endpoint_exponent(b, {1e-4 * lambda, 1e-2 * lambda}).alpha;
  }
  return out;
}

double endpoint_scale(const ModelParams& params) {
  return 1e-4 * params.lambda * std::min(1.0, params.kappa());
}

EndpointLimit endpoint_limit(const std::function<double(double)>& tau, double x_min) {
  if (!(x_min > 0.0)) throw Error(ErrorCode::invalid_argument, "x_min must be positive");
  std::vector<double> xs = log_points(x_min, 100.0 * x_min, 17), ts;
  for (double x : xs) ts.push_back(tau(x));
  EndpointLimit out;
  if (std::all_of(ts.begin(), ts.end(), [](double t) { return t == 0.0; })) return out;
  out.alpha = fit_power_law(xs, ts).alpha;
  if (out.alpha >= 0.05) {
    out.tau0 = std::numeric_limits<double>::infinity();
    return out;
  }
  constexpr int n = 6;
  Eigen::Matrix<double, n, 3> A;
  Eigen::Matrix<double, n, 1> y;
  for (int j = 0; j < n; ++j) {
    const double u = std::ldexp(1.0, -j);
    A(j, 0) = 1.0;
    A(j, 1) = u * std::log(u);
    A(j, 2) = u;
    y(j) = tau(u * x_min);
  }
  out.tau0 = A.colPivHouseholderQr().solve(y)(0);
  return out;
}

std::vector<double> SweepTable::ratio_to_first_row() const {
  std::vector<double> r;
  for (const auto& row : rows) r.push_back(row.tau0 / rows.front().tau0);
  return r;
}

SweepTable sweep_table(const MaterialSpec& base, std::vector<double> k_values, Method method,
                       const quad::QuadratureSpec& spec) {
  if (method != Method::wiener_hopf_A && method != Method::wiener_hopf_B)
    throw Error(ErrorCode::invalid_argument,
                std::string("sweep supports wiener_hopf_A and wiener_hopf_B, not ") + to_string(method));
  for (double k : k_values)
    if (!(k > 0.0)) throw Error(ErrorCode::invalid_argument, "sweep k values must be positive");
  base.validate();
  const auto reference = derive_model_params(base, CaseKind::case_b);
  const CaseKind kind = method == Method::wiener_hopf_A ? CaseKind::case_a : CaseKind::case_b;

  std::sort(k_values.begin(), k_values.end(), std::greater<>());
  SweepTable table;
  table.rows.resize(k_values.size());
  parallel_for(k_values.size(), [&](std::size_t i) {
    const auto params = make_model_params(reference.lambda, k_values[i], reference.T, kind);
    wh::SpectralOptions options;
    options.certify = false;
    const auto sol = wh::spectral_solution(wh::CoefficientCase::from(params), spec, options);
    const auto limit = endpoint_limit([&](double x) { return wh::stress_at(sol, x); },
                                      endpoint_scale(params));
    table.rows[i] = {k_values[i], limit.tau0, limit.alpha, method};
  });
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    if (!(table.rows[i].tau0 > table.rows[i - 1].tau0)) table.trend_monotone = false;
  return table;
}

}  // namespace whcontact::analysis
