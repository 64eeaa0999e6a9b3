#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace whcontact::quad {

using cplx = std::complex<double>;

/// Tolerances and limits shared by every integrator in this module.
struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  int max_panels = 4000;
  /// Where infinite intervals switch to the inverted variable, in
  /// nondimensional units.
  double truncation_radius = 50.0;

  void validate() const;

  /// Defaults used for Fourier inversion (1e-7 absolute).
  static QuadratureSpec oscillatory();

  bool operator==(const QuadratureSpec&) const = default;
};

enum class Smoothness { smooth, kink_at_zero };

/// A callable plus the facts the integrators need about it: the algebraic
/// decay rate at infinity and whether it has a derivative kink at t = 0.
template <class Value>
struct FunctionHandle {
  std::function<Value(double)> eval;
  double decay_exponent = 1.0;
  Smoothness smoothness = Smoothness::smooth;

  Value operator()(double t) const { return eval(t); }
};

using RealFunction = FunctionHandle<double>;
using ComplexFunction = FunctionHandle<cplx>;

enum class Interval { full_line, half_line };

// --- plain integration -----------------------------------------------------

/// Adaptive Gauss-Kronrod (7/15) over [a, b], pre-split at `breaks`.
/// Throws Error(nonconvergence) when max_panels is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec, std::span<const double> breaks = {});
cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               const QuadratureSpec& spec, std::span<const double> breaks = {});

/// Integral over [a, inf). The part beyond max(a, truncation_radius, breaks)
/// is mapped onto (0, 1] by t = R / v^2. Requires decay_exponent > 1.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double decay_exponent, const QuadratureSpec& spec,
                             std::span<const double> breaks = {});
cplx integrate_to_infinity(const std::function<cplx(double)>& f, double a,
                           double decay_exponent, const QuadratureSpec& spec,
                           std::span<const double> breaks = {});

// --- Cauchy-kernel integrals ----------------------------------------------

/// PV int f(t) / (t - x) dt over the full line or [0, inf), by subtracting
/// f(x) on a window symmetric about x (whose log term vanishes) and
/// integrating the far field directly.
double pv_cauchy(const RealFunction& f, Interval interval, double x, const QuadratureSpec& spec);
cplx pv_cauchy(const ComplexFunction& f, Interval interval, double x, const QuadratureSpec& spec);

/// (1 / 2 pi i) int ln G(s) ds / (s - z) for an even, real ln G. The
/// exponential of the result is the canonical solution X(z).
cplx log_cauchy_transform(const RealFunction& log_g, cplx z, const QuadratureSpec& spec);

struct BoundaryValues {
  cplx plus;
  cplx minus;
};

/// Plemelj limits X^(+-)(s) = exp(+-ln G(s)/2 + PV part / (2 pi i)).
BoundaryValues boundary_values(const RealFunction& log_g, double s, const QuadratureSpec& spec);

/// The same limits obtained independently: log_cauchy_transform evaluated at
/// s +- i eta for a halving sequence of eta and extrapolated to eta = 0.
/// Used only to certify boundary_values.
BoundaryValues boundary_values_by_limit(const RealFunction& log_g, double s,
                                        const QuadratureSpec& spec);

// --- fixed rules -----------------------------------------------------------

struct NodeRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1].
NodeRule gauss_legendre(int n);

/// Composite Gauss-Legendre rule for int_0^inf: geometric panels with ratio
/// `ratio` from `first` to `last`, one panel [0, first], and the tail
/// [last, inf) mapped by s = last / v^2.
NodeRule half_line_rule(double first, double last, double ratio, int order);

// --- Fourier inversion -----------------------------------------------------

/// Panel layout for the Filon-type inverse: one panel [0, first_panel], then
/// geometric panels out to the truncation radius, mirrored for t < 0. Each
/// panel carries a degree-7 interpolant through 8 Chebyshev-Lobatto points.
struct FilonLayout {
  double first_panel = 1e-3;
  int panels_per_side = 73;
  static constexpr int points_per_panel = 8;
};

/// Samples of F on the Filon panel nodes over [-radius, radius].
class FourierTable {
 public:
  static FourierTable sample(const std::function<cplx(double)>& f, double radius,
                             const FilonLayout& layout = {});

  double radius() const noexcept { return radius_; }
  int panels_per_side() const noexcept { return panels_per_side_; }
  /// Panel edges on the positive side, starting at 0.
  std::span<const double> edges() const noexcept { return edges_; }
  /// Distinct sample abscissae in increasing order.
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const cplx> values() const noexcept { return values_; }

  /// Value at one of the sampled abscissae (exact match required).
  cplx at_node(double t) const;

  /// Degree-7 interpolant of the table at any |t| <= radius.
  cplx interpolate(double t) const;

  /// The same table with every value multiplied by `factor`.
  FourierTable scaled(cplx factor) const;

 private:
  friend class FilonInverse;
  double radius_ = 0.0;
  int panels_per_side_ = 0;
  std::vector<double> edges_;
  std::vector<double> nodes_;
  std::vector<cplx> values_;
  // Index into nodes_/values_ of point j of panel p, panels ordered from
  // -radius to +radius.
  std::vector<int> panel_index_;
};

/// (1 / 2 pi) int F(t) e^{-i t x} dt from a FourierTable: panel-wise exact
/// integration of the interpolant against the exponential plus an analytic
/// tail C1 |t|^{-p} + C2 |t|^{-p-1} beyond the table radius, matched to the
/// outermost samples on each side.
class FilonInverse {
 public:
  FilonInverse(FourierTable table, double tail_exponent);

  cplx operator()(double x) const;

  const FourierTable& table() const noexcept { return table_; }
  double tail_exponent() const noexcept { return tail_exponent_; }

 private:
  FourierTable table_;
  double tail_exponent_;
  std::array<cplx, 2> tail_plus_{};
  std::array<cplx, 2> tail_minus_{};
};

/// int_R^inf t^{-p} e^{-i t x} dt for p > 0, x > 0.
cplx power_tail_integral(double p, double radius, double x);

struct OscillatoryResult {
  cplx value;
  /// Set when tail_exponent <= 0.25 forced a widened truncation.
  bool widened = false;
};

/// (1 / 2 pi) int F(t) e^{-i t x} dt for a function decaying like
/// |t|^{-tail_exponent}; samples F on a fresh table each call.
OscillatoryResult oscillatory_inverse(const ComplexFunction& fhat, double tail_exponent, double x,
                                      const QuadratureSpec& spec);

}  // namespace whcontact::quad
