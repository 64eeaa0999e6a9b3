#include "whcontact/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "whcontact/error.hpp"
#include "whcontact/parallel.hpp"

namespace whcontact::oracle {

namespace {

constexpr double pi = std::numbers::pi;

// Fornberg's recursion: weights of the m-th derivative at z from nodes x.
std::vector<double> fd_weights(double z, const double* x, int n, int m) {
  std::vector<double> c(static_cast<std::size_t>(n) * (m + 1), 0.0);
  auto at = [&](int i, int k) -> double& { return c[static_cast<std::size_t>(i) * (m + 1) + k]; };
  double c1 = 1.0, c4 = x[0] - z;
  at(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k > 0; --k) at(i, k) = c1 * (k * at(i - 1, k - 1) - c5 * at(i - 1, k)) / c2;
        at(i, 0) = -c1 * c5 * at(i - 1, 0) / c2;
      }
      for (int k = mn; k > 0; --k) at(j, k) = (c4 * at(j, k) - k * at(j, k - 1)) / c3;
      at(j, 0) = c4 * at(j, 0) / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = at(i, m);
  return w;
}

// Sparse rows of a finite-difference operator: width nodes, shifted inward at
// the ends (one-sided there).
struct FdRow {
  int first;
  std::vector<double> w;
};

std::vector<FdRow> fd_operator(const std::vector<double>& x, int order, int width) {
  const int n = static_cast<int>(x.size());
  std::vector<FdRow> rows(n);
  for (int i = 0; i < n; ++i) {
    const int lo = std::clamp(i - width / 2, 0, n - width);
    rows[i] = {lo, fd_weights(x[i], x.data() + lo, width, order)};
  }
  return rows;
}

std::vector<double> apply_rows(const std::vector<FdRow>& op, const std::vector<double>& v) {
  std::vector<double> out(op.size(), 0.0);
  for (std::size_t i = 0; i < op.size(); ++i)
    for (std::size_t j = 0; j < op[i].w.size(); ++j) out[i] += op[i].w[j] * v[op[i].first + j];
  return out;
}

}  // namespace

void GridSpec::validate() const {
  if (!(L >= 20.0) || N < 200 || !(grading >= 1.0)) {
    std::ostringstream os;
    os << "grid needs L >= 20, N >= 200, grading >= 1 (got L = " << L << ", N = " << N
       << ", grading = " << grading << ")";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
}

std::vector<double> graded_mesh(const GridSpec& grid, double lambda) {
  grid.validate();
  if (!(lambda > 0.0)) throw Error(ErrorCode::invalid_argument, "lambda must be positive");
  const double cap = std::log(1000.0);
  const double rate = 200.0 * std::log(grid.grading);
  std::vector<double> h(grid.N);
  double total = 0.0;
  for (int j = 0; j < grid.N; ++j) {
    h[j] = std::exp(std::min(rate * j / grid.N, cap));
    total += h[j];
  }
  const double length = grid.L * lambda;
  std::vector<double> x(grid.N + 1, 0.0);
  for (int j = 0; j < grid.N; ++j) x[j + 1] = x[j] + h[j] * length / total;
  x.back() = length;
  return x;
}

std::vector<double> cauchy_matrix(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 3) throw Error(ErrorCode::too_few_points, "Cauchy matrix needs at least 3 nodes");
  const double length = x.back();
  std::vector<double> w(n * n, 0.0);
  parallel_for(n - 2, [&](std::size_t r) {
    const std::size_t i = r + 1;
    double* row = w.data() + i * n;
    const double xi = x[i];
    // Per element: int u / (t - xi) = (u_b - u_a) + u_lin(xi) ln|(b - xi)/(a - xi)|;
    // collect u(xi) ln over all elements into ln((L - xi)/xi).
    for (std::size_t e = 0; e + 1 < n; ++e) {
      const double a = x[e], b = x[e + 1];
      row[e + 1] += 1.0;
      row[e] -= 1.0;
      if (e == i || e + 1 == i) continue;
      const double lg = std::log(std::abs((b - xi) / (a - xi)));
      row[e] += (b - xi) / (b - a) * lg;
      row[e + 1] += (xi - a) / (b - a) * lg;
      row[i] -= lg;
    }
    row[i] += std::log((length - xi) / xi);
  });
  return w;
}

StressSolution solve_direct(const ModelParams& params, const GridSpec& grid) {
  if (params.k == 0.0)
    throw Error(ErrorCode::k_zero_unsupported, "direct collocation needs k > 0");
  if (!(params.k > 0.0) || !(params.lambda > 0.0))
    throw Error(ErrorCode::invalid_argument, "direct collocation needs lambda > 0, k > 0");
  const auto x = graded_mesh(grid, params.lambda);
  const int n = static_cast<int>(x.size());
  const auto d1 = fd_operator(x, 1, 5);
  const auto d2 = fd_operator(x, 2, 3);
  const auto w = cauchy_matrix(x);

  // A = I - (lambda/pi) W D1 - k D2 on the interior rows.
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  const double c = params.lambda / pi;
  parallel_for(n - 2, [&](std::size_t r) {
    const int i = static_cast<int>(r) + 1;
    const double* wrow = w.data() + static_cast<std::size_t>(i) * n;
    for (int m = 0; m < n; ++m) {
      const double wm = wrow[m];
      if (wm == 0.0) continue;
      const auto& op = d1[m];
      for (std::size_t j = 0; j < op.w.size(); ++j) a(i, op.first + j) -= c * wm * op.w[j];
    }
    const auto& op2 = d2[i];
    for (std::size_t j = 0; j < op2.w.size(); ++j) a(i, op2.first + j) -= params.k * op2.w[j];
  });
  // phi(0) = T and phi(L) = 0 are imposed by elimination, so they hold exactly.
  const int m = n - 2;
  const Eigen::MatrixXd interior = a.block(1, 1, m, m);
  const Eigen::VectorXd rhs = -params.T * a.block(1, 0, m, 1);

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(interior);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-13)) {
    std::ostringstream os;
    os << "collocation matrix is near-singular (rcond " << rcond << "); refine the grid";
    throw Error(ErrorCode::singular_system, os.str());
  }
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
  phi(0) = params.T;
  phi.segment(1, m) = lu.solve(rhs);

  StressSolution out;
  out.method = Method::direct_collocation;
  out.x = x;
  out.phi.assign(phi.data(), phi.data() + n);
  const auto dphi = apply_rows(d1, out.phi);
  out.tau.resize(n);
  for (int i = 0; i < n; ++i) out.tau[i] = -dphi[i];

  out.diagnostics["rcond"] = rcond;
  out.diagnostics["L"] = x.back();
  out.diagnostics["N"] = grid.N;
  out.diagnostics["grading"] = grid.grading;
  out.diagnostics["boundary_phi0_error"] = std::abs(out.phi.front() - params.T);
  out.diagnostics["boundary_phiL"] = std::abs(out.phi.back());
  // Off-collocation check at element midpoints from 0.01 lambda on; closer to
  // the end phi'' carries a log singularity that a local cubic cannot follow.
  std::vector<double> probes;
  for (int e = 0; e + 3 < n; e += std::max(1, n / 64))
    if (x[e] >= 0.01 * params.lambda) probes.push_back(0.5 * (x[e] + x[e + 1]));
  double worst = 0.0;
  for (double r : residual(out, params, probes)) worst = std::max(worst, std::abs(r));
  out.diagnostics["max_probe_residual"] = worst;
  return out;
}

std::vector<double> residual(const StressSolution& solution, const ModelParams& params,
                             const std::vector<double>& probes) {
  std::vector<double> xs = solution.x, tau = solution.tau, phi = solution.phi;
  if (xs.size() < 4 || tau.size() != xs.size() || phi.size() != xs.size())
    throw Error(ErrorCode::too_few_points, "solution needs at least 4 nodes");
  // Close the gap to x = 0 with the end cubic.
  if (xs.front() > 0.0) {
    const double t0 = interpolate_cubic(xs, tau, 0.0), p0 = interpolate_cubic(xs, phi, 0.0);
    xs.insert(xs.begin(), 0.0);
    tau.insert(tau.begin(), t0);
    phi.insert(phi.begin(), p0);
  }
  const double last = xs.back();
  const bool far_tail = solution.method != Method::direct_collocation;
  static const std::array<double, 8> gx = {-0.9602898564975363, -0.7966664774136267,
                                           -0.5255324099163290, -0.1834346424956498,
                                           0.1834346424956498,  0.5255324099163290,
                                           0.7966664774136267,  0.9602898564975363};
  static const std::array<double, 8> gw = {0.1012285362903763, 0.2223810344533745,
                                           0.3137066458778873, 0.3626837833783620,
                                           0.3626837833783620, 0.3137066458778873,
                                           0.2223810344533745, 0.1012285362903763};

  std::vector<double> out(probes.size());
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const double x0 = probes[p];
    if (!(x0 > solution.x.front() && x0 < last)) {
      std::ostringstream os;
      os << "probe " << x0 << " outside (" << solution.x.front() << ", " << last << ")";
      throw Error(ErrorCode::probe_out_of_range, os.str());
    }
    const double tx = interpolate_cubic(xs, tau, x0);
    // PV int_0^last tau / (t - x0) element by element: near x0 split off the
    // element cubic's value at x0 (exact log), elsewhere plain Gauss.
    double pv = tx * std::log((last - x0) / x0);
    for (std::size_t e = 0; e + 1 < xs.size(); ++e) {
      const double a = xs[e], b = xs[e + 1], h = b - a, mid = 0.5 * (a + b);
      const bool near = x0 > a - 2.0 * h && x0 < b + 2.0 * h;
      double sum = 0.0;
      if (near) {
        // The element's own cubic (the stencil interpolate_cubic uses inside it).
        const auto lo = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(
            static_cast<std::ptrdiff_t>(e) - 1, 0, static_cast<std::ptrdiff_t>(xs.size()) - 4));
        const std::vector<double> sx(xs.begin() + lo, xs.begin() + lo + 4);
        const std::vector<double> sy(tau.begin() + lo, tau.begin() + lo + 4);
        const double own = interpolate_cubic(sx, sy, x0);
        for (int g = 0; g < 8; ++g) {
          const double t = mid + 0.5 * h * gx[g];
          sum += gw[g] * (interpolate_cubic(sx, sy, t) - own) / (t - x0);
        }
        sum *= 0.5 * h;
        if (x0 < a || x0 > b) sum += (own - tx) * std::log(std::abs((b - x0) / (a - x0)));
      } else {
        for (int g = 0; g < 8; ++g) {
          const double t = mid + 0.5 * h * gx[g];
          sum += gw[g] * interpolate_cubic(xs, tau, t) / (t - x0);
        }
        sum *= 0.5 * h;
        sum -= tx * std::log(std::abs((b - x0) / (a - x0)));
      }
      pv += sum;
    }
    if (far_tail) {
      // tau ~ tau(last) (last / t)^2 beyond the grid.
      const double tl = tau.back();
      pv += tl * last * last *
            (std::log(last / (last - x0)) / (x0 * x0) - 1.0 / (x0 * last));
    }
    const double phix = interpolate_cubic(xs, phi, x0);
    const double slope = interpolate_cubic_slope(xs, tau, x0);
    out[p] = phix + params.lambda / pi * pv + params.k * slope;
  }
  return out;
}

}  // namespace whcontact::oracle
