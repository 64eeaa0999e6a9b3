#include "whcontact/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "whcontact/error.hpp"
#include "whcontact/parallel.hpp"

namespace whcontact::quad {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// QUADPACK 15-point Kronrod nodes; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Segment {
  double a, b;
  V value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class V>
Segment<V> kronrod15(const std::function<V(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const V fc = f(c);
  V kron = fc * kronrod_w[7];
  V gauss = fc * gauss_w[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kronrod_x[j];
    const V sum = f(c - dx) + f(c + dx);
    kron += kronrod_w[j] * sum;
    if (j % 2 == 1) gauss += gauss_w[j / 2] * sum;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

template <class V>
V adaptive(const std::function<V(double)>& f, double a, double b, const QuadratureSpec& spec,
           std::span<const double> breaks) {
  if (a == b) return V{};
  if (b < a) return -adaptive(f, b, a, spec, breaks);
  std::vector<double> cuts{a};
  for (double x : breaks)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment<V>> heap;
  V total{};
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto seg = kronrod15(f, cuts[i], cuts[i + 1]);
    total += seg.value;
    error += seg.error;
    heap.push(seg);
  }
  int panels = static_cast<int>(heap.size());
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Segment at floating-point resolution: nothing left to refine.
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(worst.a), std::abs(worst.b)))
      break;
    if (panels >= spec.max_panels) {
      std::ostringstream os;
      os << "panel budget " << spec.max_panels << " exhausted on [" << a << ", " << b
         << "], error estimate " << error;
      throw Error(ErrorCode::nonconvergence, os.str());
    }
    heap.pop();
    auto left = kronrod15(f, worst.a, mid);
    auto right = kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Recompute the sum from the heap to shed accumulated cancellation error.
  V sum{};
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

template <class V>
V to_infinity(const std::function<V(double)>& f, double a, double decay, const QuadratureSpec& spec,
              std::span<const double> breaks) {
  if (!(decay > 1.0))
    throw Error(ErrorCode::invalid_argument, "integrand must decay faster than 1/t");
  double radius = std::max(spec.truncation_radius, a > 0.0 ? 2.0 * a : 0.0);
  for (double x : breaks) radius = std::max(radius, 2.0 * x);
  V head = adaptive(f, a, radius, spec, breaks);
  // t = R / v^2: int_R^inf f(t) dt = int_0^1 f(R / v^2) 2R / v^3 dv
  const std::function<V(double)> mapped = [&](double v) {
    return f(radius / (v * v)) * (2.0 * radius / (v * v * v));
  };
  return head + adaptive(mapped, 0.0, 1.0, spec, {});
}

template <class V>
V pv_impl(const FunctionHandle<V>& f, Interval interval, double x, const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "non-finite PV point");
  const V fx = f(x);
  const std::function<V(double)> sub = [&](double t) {
    return t == x ? V{} : (f(t) - fx) / (t - x);
  };
  const std::function<V(double)> plain = [&](double t) { return f(t) / (t - x); };
  const double decay = f.decay_exponent + 1.0;
  const bool kink = f.smoothness == Smoothness::kink_at_zero;

  if (interval == Interval::half_line) {
    if (!(x > 0.0))
      throw Error(ErrorCode::singular_endpoint, "PV point must lie inside (0, inf)");
    // Window [0, 2x] is symmetric about x, so int (f(x) / (t - x)) vanishes.
    const std::array<double, 1> mid{x};
    V window = adaptive(sub, 0.0, 2.0 * x, spec, mid);
    return window + to_infinity(plain, 2.0 * x, decay, spec, {});
  }

  const double half = std::max(1.0, std::abs(x));
  std::vector<double> cuts{x};
  if (kink) cuts.push_back(0.0);
  V window = adaptive(sub, x - half, x + half, spec, cuts);
  std::vector<double> right_breaks;
  if (kink && 0.0 > x + half) right_breaks.push_back(0.0);
  V right = to_infinity(plain, x + half, decay, spec, right_breaks);
  // int_{-inf}^{x-half} f(t)/(t-x) dt with t = -u.
  const std::function<V(double)> reflected = [&](double u) { return f(-u) / (-u - x); };
  std::vector<double> left_breaks;
  if (kink && 0.0 > half - x) left_breaks.push_back(0.0);
  V left = to_infinity(reflected, half - x, decay, spec, left_breaks);
  return window + right + left;
}

// Neville extrapolation of samples y(h_j) to h = 0.
template <class V>
V extrapolate_to_zero(std::vector<double> h, std::vector<V> y) {
  const std::size_t n = h.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      y[i] = (h[i + m] * y[i] - h[i] * y[i + 1]) / (h[i + m] - h[i]);
  return y[0];
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_panels < 16 || !(truncation_radius > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "quadrature spec requires abs_tol > 0, rel_tol > 0, max_panels >= 16, "
                "truncation_radius > 0");
}

QuadratureSpec QuadratureSpec::oscillatory() {
  QuadratureSpec s;
  s.abs_tol = 1e-7;
  return s;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec, std::span<const double> breaks) {
  return adaptive(f, a, b, spec, breaks);
}

cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               const QuadratureSpec& spec, std::span<const double> breaks) {
  return adaptive(f, a, b, spec, breaks);
}

double integrate_to_infinity(const std::function<double(double)>& f, double a, double decay,
                             const QuadratureSpec& spec, std::span<const double> breaks) {
  return to_infinity(f, a, decay, spec, breaks);
}

cplx integrate_to_infinity(const std::function<cplx(double)>& f, double a, double decay,
                           const QuadratureSpec& spec, std::span<const double> breaks) {
  return to_infinity(f, a, decay, spec, breaks);
}

double pv_cauchy(const RealFunction& f, Interval interval, double x, const QuadratureSpec& spec) {
  return pv_impl(f, interval, x, spec);
}

cplx pv_cauchy(const ComplexFunction& f, Interval interval, double x, const QuadratureSpec& spec) {
  return pv_impl(f, interval, x, spec);
}

cplx log_cauchy_transform(const RealFunction& log_g, cplx z, const QuadratureSpec& spec) {
  spec.validate();
  if (z.imag() == 0.0)
    throw Error(ErrorCode::on_axis, "Cauchy transform requested on the real axis");
  // Evenness folds the line onto [0, inf): 1/(s - z) + 1/(-s - z) = 2z / (s^2 - z^2).
  const cplx z2 = z * z;
  const std::function<cplx(double)> integrand = [&](double s) { return log_g(s) / (s * s - z2); };
  std::vector<double> breaks;
  if (std::abs(z.real()) > 0.0) breaks.push_back(std::abs(z.real()));
  breaks.push_back(std::abs(z));
  // The tolerance is meant for the result, which is |z| / pi times the integral.
  QuadratureSpec inner = spec;
  inner.abs_tol = spec.abs_tol * pi / std::max(1.0, std::abs(z));
  const cplx integral = to_infinity(integrand, 0.0, log_g.decay_exponent + 2.0, inner, breaks);
  return z / (pi * I) * integral;
}

BoundaryValues boundary_values(const RealFunction& log_g, double s, const QuadratureSpec& spec) {
  const double lg = log_g(s);
  cplx cauchy{0.0, 0.0};
  if (s != 0.0) {
    // PV int ln G(u) du/(u - s) over the line = PV int_0^inf ln G(u) 2s/((u+s)(u-s)) du,
    // odd in s.
    const double a = std::abs(s);
    RealFunction folded{[&](double u) { return log_g(u) * 2.0 * a / (u + a); },
                        log_g.decay_exponent + 1.0, log_g.smoothness};
    const double pv = pv_cauchy(folded, Interval::half_line, a, spec);
    cauchy = (s > 0.0 ? pv : -pv) / (2.0 * pi * I);
  }
  return {std::exp(0.5 * lg + cauchy), std::exp(-0.5 * lg + cauchy)};
}

BoundaryValues boundary_values_by_limit(const RealFunction& log_g, double s,
                                        const QuadratureSpec& spec) {
  QuadratureSpec tight = spec;
  tight.abs_tol = std::min(spec.abs_tol, 1e-12);
  tight.rel_tol = std::min(spec.rel_tol, 1e-13);
  tight.max_panels = std::max(spec.max_panels, 20000);
  const double eta0 = 0.05 * std::min(1.0, std::max(std::abs(s), 1e-3));
  constexpr int levels = 6;
  std::vector<double> h(levels);
  std::vector<cplx> up(levels), down(levels);
  for (int j = 0; j < levels; ++j) {
    h[j] = eta0 / double(1 << j);
    up[j] = log_cauchy_transform(log_g, {s, h[j]}, tight);
    down[j] = log_cauchy_transform(log_g, {s, -h[j]}, tight);
  }
  return {std::exp(extrapolate_to_zero(h, up)), std::exp(extrapolate_to_zero(h, down))};
}

NodeRule gauss_legendre(int n) {
  NodeRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

NodeRule half_line_rule(double first, double last, double ratio, int order) {
  if (!(first > 0.0 && last > first && ratio > 1.0 && order >= 2))
    throw Error(ErrorCode::invalid_argument, "bad half-line rule layout");
  const NodeRule gl = gauss_legendre(order);
  NodeRule rule;
  auto add_panel = [&](double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int j = 0; j < order; ++j) {
      rule.nodes.push_back(c + h * gl.nodes[j]);
      rule.weights.push_back(h * gl.weights[j]);
    }
  };
  add_panel(0.0, first);
  const int count = static_cast<int>(std::ceil(std::log(last / first) / std::log(ratio)));
  const double step = std::pow(last / first, 1.0 / count);
  double a = first;
  for (int p = 0; p < count; ++p) {
    const double b = (p + 1 == count) ? last : a * step;
    add_panel(a, b);
    a = b;
  }
  // Tail: s = last / v^2 on v in (0, 1], ds = 2 last / v^3 dv, panels uniform in v.
  constexpr int tail_panels = 8;
  for (int p = 0; p < tail_panels; ++p) {
    const double va = double(p) / tail_panels, vb = double(p + 1) / tail_panels;
    const double c = 0.5 * (va + vb), h = 0.5 * (vb - va);
    for (int j = 0; j < order; ++j) {
      const double v = c + h * gl.nodes[j];
      rule.nodes.push_back(last / (v * v));
      rule.weights.push_back(h * gl.weights[j] * 2.0 * last / (v * v * v));
    }
  }
  return rule;
}

// --- Filon ----------------------------------------------------------------

namespace {

constexpr int filon_points = FilonLayout::points_per_panel;
using PanelVec = std::array<cplx, filon_points>;

// Chebyshev-Lobatto abscissae on [-1, 1], increasing.
const std::array<double, filon_points>& lobatto_points() {
  static const auto pts = [] {
    std::array<double, filon_points> u{};
    for (int m = 0; m < filon_points; ++m) u[m] = -std::cos(pi * m / (filon_points - 1));
    return u;
  }();
  return pts;
}

// Inverse Vandermonde matrix mapping point values to monomial coefficients.
const std::array<std::array<double, filon_points>, filon_points>& inverse_vandermonde() {
  static const auto inv = [] {
    constexpr int n = filon_points;
    std::array<std::array<double, 2 * n>, n> aug{};
    const auto& u = lobatto_points();
    for (int i = 0; i < n; ++i) {
      double p = 1.0;
      for (int j = 0; j < n; ++j) {
        aug[i][j] = p;
        p *= u[i];
      }
      aug[i][n + i] = 1.0;
    }
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r)
        if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
      std::swap(aug[col], aug[piv]);
      const double d = aug[col][col];
      for (auto& v : aug[col]) v /= d;
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = aug[r][col];
        for (int j = 0; j < 2 * n; ++j) aug[r][j] -= f * aug[col][j];
      }
    }
    // aug right block = V^{-1}; V[i][j] = u_i^j, so coefficients c = V^{-1} y.
    std::array<std::array<double, n>, n> out{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
    return out;
  }();
  return inv;
}

// M_m(theta) = int_{-1}^{1} u^m e^{-i theta u} du, m < filon_points.
PanelVec exp_moments(double theta) {
  PanelVec m{};
  if (std::abs(theta) < 1.0) {
    const cplx z = -I * theta;
    for (int k = 0; k < filon_points; ++k) {
      cplx term = 1.0, sum = 0.0;
      for (int n = 0; n < 60; ++n) {
        if ((k + n) % 2 == 0) sum += term * (2.0 / (k + n + 1));
        term *= z / double(n + 1);
        if (std::abs(term) < 1e-18) break;
      }
      m[k] = sum;
    }
    return m;
  }
  const cplx ep = std::exp(-I * theta), em = std::exp(I * theta);
  m[0] = 2.0 * std::sin(theta) / theta;
  for (int k = 1; k < filon_points; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    m[k] = (ep - sign * em) / (-I * theta) + (double(k) / (I * theta)) * m[k - 1];
  }
  return m;
}

}  // namespace

FourierTable FourierTable::sample(const std::function<cplx(double)>& f, double radius,
                                  const FilonLayout& layout) {
  if (!(radius > layout.first_panel) || layout.panels_per_side < 2)
    throw Error(ErrorCode::invalid_argument, "Fourier table radius must exceed the first panel");
  FourierTable table;
  table.radius_ = radius;
  table.panels_per_side_ = layout.panels_per_side;
  const int geometric = layout.panels_per_side - 1;
  const double step = std::pow(radius / layout.first_panel, 1.0 / geometric);
  table.edges_.push_back(0.0);
  table.edges_.push_back(layout.first_panel);
  for (int p = 1; p <= geometric; ++p)
    table.edges_.push_back(p == geometric ? radius : table.edges_.back() * step);

  const auto& u = lobatto_points();
  std::vector<double> positive;  // distinct nodes on [0, radius]
  for (int p = 0; p < layout.panels_per_side; ++p) {
    const double a = table.edges_[p], b = table.edges_[p + 1];
    for (int j = (p == 0 ? 0 : 1); j < filon_points; ++j) {
      // Hit the edges exactly so neighbouring panels share them.
      const double t = j == 0 ? a : (j == filon_points - 1 ? b : 0.5 * (a + b) + 0.5 * (b - a) * u[j]);
      positive.push_back(t);
    }
  }
  const int npos = static_cast<int>(positive.size());  // includes t = 0
  table.nodes_.reserve(2 * npos - 1);
  for (int i = npos - 1; i >= 1; --i) table.nodes_.push_back(-positive[i]);
  for (int i = 0; i < npos; ++i) table.nodes_.push_back(positive[i]);
  table.values_.resize(table.nodes_.size());
  parallel_for(table.nodes_.size(), [&](std::size_t i) { table.values_[i] = f(table.nodes_[i]); });

  // Panel p on the positive side owns positive-node indices [7p, 7p + 7].
  const int zero = npos - 1;
  const int per = filon_points - 1;
  for (int p = layout.panels_per_side - 1; p >= 0; --p)  // negative side, left to right
    for (int j = 0; j < filon_points; ++j) table.panel_index_.push_back(zero - (per * p + per - j));
  for (int p = 0; p < layout.panels_per_side; ++p)
    for (int j = 0; j < filon_points; ++j) table.panel_index_.push_back(zero + per * p + j);
  return table;
}

cplx FourierTable::at_node(double t) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
  if (it == nodes_.end() || *it != t)
    throw Error(ErrorCode::invalid_argument, "abscissa is not a table node");
  return values_[static_cast<std::size_t>(it - nodes_.begin())];
}

cplx FourierTable::interpolate(double t) const {
  const double a = std::abs(t);
  if (a > radius_) throw Error(ErrorCode::invalid_argument, "interpolation outside the table");
  auto it = std::upper_bound(edges_.begin(), edges_.end(), a);
  int p = static_cast<int>(it - edges_.begin()) - 1;
  p = std::clamp(p, 0, panels_per_side_ - 1);
  const double lo = edges_[p], hi = edges_[p + 1];
  const int panel = t >= 0.0 ? panels_per_side_ + p : panels_per_side_ - 1 - p;
  const double c = t >= 0.0 ? 0.5 * (lo + hi) : -0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double v = (t - c) / h;
  const auto& vinv = inverse_vandermonde();
  cplx result = 0.0, power = 1.0;
  for (int m = 0; m < filon_points; ++m) {
    cplx coef = 0.0;
    for (int j = 0; j < filon_points; ++j)
      coef += vinv[m][j] * values_[panel_index_[panel * filon_points + j]];
    result += coef * power;
    power *= v;
  }
  return result;
}

FourierTable FourierTable::scaled(cplx factor) const {
  FourierTable out = *this;
  for (auto& v : out.values_) v *= factor;
  return out;
}

FilonInverse::FilonInverse(FourierTable table, double tail_exponent)
    : table_(std::move(table)), tail_exponent_(tail_exponent) {
  if (!(tail_exponent > 0.0))
    throw Error(ErrorCode::invalid_argument, "tail exponent must be positive");
  // Tail model C1 |t|^-p + C2 |t|^-(p+1), matched at the last two panel
  // edges on each side. The second term only mops up the next order.
  const double r = table_.radius();
  const double q = table_.edges_[table_.edges_.size() - 2];
  const double rp = std::pow(r, -tail_exponent), qp = std::pow(q, -tail_exponent);
  const double det = rp * qp / q - qp * rp / r;
  auto fit = [&](cplx fr, cplx fq, cplx& c1, cplx& c2) {
    c1 = (fr * qp / q - fq * rp / r) / det;
    c2 = (fq * rp - fr * qp) / det;
  };
  fit(table_.values_.back(), table_.at_node(q), tail_plus_[0], tail_plus_[1]);
  fit(table_.values_.front(), table_.at_node(-q), tail_minus_[0], tail_minus_[1]);
}

cplx FilonInverse::operator()(double x) const {
  if (!(x > 0.0)) throw Error(ErrorCode::invalid_argument, "inverse transform needs x > 0");
  const auto& vinv = inverse_vandermonde();
  const int panels = 2 * table_.panels_per_side_;
  cplx total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const int side = p - table_.panels_per_side_;
    const int q = side >= 0 ? side : -side - 1;
    const double lo = table_.edges_[q], hi = table_.edges_[q + 1];
    const double c = side >= 0 ? 0.5 * (lo + hi) : -0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const PanelVec mom = exp_moments(x * h);
    cplx acc = 0.0;
    for (int j = 0; j < filon_points; ++j) {
      cplx wj = 0.0;
      for (int m = 0; m < filon_points; ++m) wj += vinv[m][j] * mom[m];
      acc += wj * table_.values_[table_.panel_index_[p * filon_points + j]];
    }
    total += h * std::exp(-I * (c * x)) * acc;
  }
  const double r = table_.radius();
  const cplx lead = power_tail_integral(tail_exponent_, r, x);
  const cplx next = power_tail_integral(tail_exponent_ + 1.0, r, x);
  total += tail_plus_[0] * lead + tail_plus_[1] * next;
  total += tail_minus_[0] * std::conj(lead) + tail_minus_[1] * std::conj(next);
  return total / (2.0 * pi);
}

cplx power_tail_integral(double p, double radius, double x) {
  if (!(p > 0.0) || !(radius > 0.0) || !(x > 0.0))
    throw Error(ErrorCode::invalid_argument, "power tail needs p, R, x > 0");
  // int_R^inf t^-p e^{-itx} dt = x^{p-1} E(p, R x), E(p, a) = int_a^inf u^-p e^{-iu} du.
  QuadratureSpec tight;
  tight.abs_tol = 1e-14;
  tight.rel_tol = 1e-13;
  // E(p, a) for a >= 1 by rotating onto u = a - i v.
  auto rotated = [&](double a) {
    const std::function<cplx(double)> f = [&](double v) {
      return std::exp(-p * std::log(cplx(a, -v)) - v);
    };
    const std::array<double, 3> breaks{1.0, 5.0, 15.0};
    return -I * std::exp(-I * a) * adaptive(f, 0.0, 60.0, tight, breaks);
  };
  const double a = radius * x;
  cplx e;
  if (a >= 1.0) {
    e = rotated(a);
  } else {
    // int_a^1 u^-p e^{-iu} du termwise, plus E(p, 1).
    const double la = std::log(a);
    cplx term = 1.0, sum = 0.0;
    for (int n = 0; n < 40; ++n) {
      const double q = n + 1.0 - p;
      const double piece = std::abs(q) < 1e-12 ? -la : -std::expm1(q * la) / q;
      sum += term * piece;
      term *= -I / double(n + 1);
      if (std::abs(term) < 1e-18) break;
    }
    e = sum + rotated(1.0);
  }
  return std::pow(x, p - 1.0) * e;
}

OscillatoryResult oscillatory_inverse(const ComplexFunction& fhat, double tail_exponent, double x,
                                      const QuadratureSpec& spec) {
  spec.validate();
  if (!(tail_exponent > 0.0))
    throw Error(ErrorCode::invalid_argument, "tail exponent must be positive");
  OscillatoryResult out;
  // The tail model is asymptotic in t x, so keep R x >= 20.
  double radius = std::max(spec.truncation_radius, 20.0 / x);
  if (tail_exponent <= 0.25) {
    radius *= 4.0;
    out.widened = true;
  }
  FilonLayout layout;
  layout.first_panel = std::min(layout.first_panel, radius * 1e-3);
  const auto table = FourierTable::sample(fhat.eval, radius, layout);
  out.value = FilonInverse(table, tail_exponent)(x);
  return out;
}

}  // namespace whcontact::quad
