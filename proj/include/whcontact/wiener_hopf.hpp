#pragma once

#include <memory>
#include <vector>

#include "whcontact/params.hpp"
#include "whcontact/quadrature.hpp"
#include "whcontact/stress.hpp"

namespace whcontact::wh {

using quad::cplx;
using quad::QuadratureSpec;

/// A factorization choice bound to its model constants.
struct CoefficientCase {
  CaseKind kind = CaseKind::case_b;
  ModelParams params;

  /// Throws case_mismatch unless k > 0 for case_a/case_b and k == 0 for rigid.
  void validate() const;
  static CoefficientCase from(const ModelParams& params);
};

// Square roots with cuts along rays running to the right from the branch
// point, as required by the factorization:
//   sqrt_cut_plus(z, a)  = sqrt(a z + i), positive on the upper side of its cut
//   sqrt_cut_minus(z, a) = sqrt(a z - i), negative on the upper side of its cut
// sqrt_cut_plus matches the principal root where Im(a z + i) > 0, which holds
// on the real axis and in the upper half-plane; sqrt_cut_minus matches it
// where Im(a z - i) < 0, i.e. on the real axis and in the lower half-plane.
cplx sqrt_cut_plus(cplx z, double a);
cplx sqrt_cut_minus(cplx z, double a);

struct Coefficient {
  double G = 1.0;
  /// Explicit factors: plus is analytic and nonzero in Im z > 0, minus in
  /// Im z < 0. Case B: (1 - i sqrt(k) s, 1 + i sqrt(k) s).
  cplx factor_plus;
  cplx factor_minus;
};

/// G(s) and the rational/radical factors at real s (1/m).
Coefficient coefficient(const CoefficientCase& c, double s);

/// ln G as a quadrature handle in the nondimensional variable lambda s.
quad::RealFunction log_coefficient(const CoefficientCase& c);

/// X(z) = exp((1 / 2 pi i) int ln G(s) ds / (s - z)), z in 1/m, Im z != 0.
cplx canonical_X(const CoefficientCase& c, cplx z, const QuadratureSpec& spec);

struct CertificateOptions {
  int samples = 512;
  double half_width = 100.0;  ///< s sampled on [-half_width, half_width] (1/m)
  double far_point = 1e6;     ///< |X(i far_point) - 1| is reported
  double tolerance = 1e-7;
};

struct FactorizationCertificate {
  std::vector<double> s_samples;
  std::vector<double> G_values;
  std::vector<cplx> Xplus_values;
  std::vector<cplx> Xminus_values;
  double max_jump_residual = 0.0;
  double infinity_residual = 0.0;
  double min_modulus = 0.0;
  double tolerance = 1e-7;

  bool passed() const noexcept;
};

/// Samples the jump X+ = G X- with boundary values obtained as one-sided
/// limits from off the axis, independently of the Plemelj split.
FactorizationCertificate certify(const CoefficientCase& c, const QuadratureSpec& spec,
                                 const CertificateOptions& options = {});

namespace detail {
struct Kernel;
}

struct SpectralOptions {
  /// Nondimensional table radius; 0 picks 2e4 max(1, lambda^2 / k), or 2000
  /// in the rigid limit.
  double radius = 0.0;
  quad::FilonLayout layout;
  /// rms misfit (natural log) allowed in the algebraic tail fit.
  double tail_fit_tolerance = 0.1;
  bool certify = true;
};

/// Tabulated K-function of one case. Immutable once built.
class SpectralSolution {
 public:
  const CoefficientCase& coefficient_case() const noexcept { return case_; }
  /// Ktilde(t) = K(t + i0) + constant_shift, t in 1/m.
  cplx ktilde(double t) const;
  /// Phi(z) for Im z > 0 (z in 1/m, result in N).
  cplx phi(cplx z) const;
  double tail_exponent() const noexcept { return tail_exponent_; }
  double tail_fit_residual() const noexcept { return tail_fit_residual_; }
  double constant_shift() const noexcept { return 0.0; }
  /// Nondimensional table and its inverse.
  const quad::FilonInverse& inverse() const noexcept { return *inverse_; }
  const FactorizationCertificate& certificate() const noexcept { return certificate_; }

 private:
  friend SpectralSolution spectral_solution(const CoefficientCase&, const QuadratureSpec&,
                                            const SpectralOptions&);
  CoefficientCase case_;
  std::shared_ptr<const detail::Kernel> kernel_;
  std::shared_ptr<const quad::FilonInverse> inverse_;
  double tail_exponent_ = 0.0;
  double tail_fit_residual_ = 0.0;
  FactorizationCertificate certificate_;
};

SpectralSolution spectral_solution(const CoefficientCase& c, const QuadratureSpec& spec,
                                   const SpectralOptions& options = {});

/// Phi(z) for Im z > 0. Builds the Cauchy kernel from scratch; callers that
/// need many points should go through SpectralSolution::phi.
cplx phi_transform(const CoefficientCase& c, cplx z, const QuadratureSpec& spec);

/// tau(x) = (1/2 pi) int Ktilde(t) e^{-itx} dt and phi(x) = T - int_0^x tau on
/// a sorted grid of x > 0 (m).
StressSolution contact_stress(const SpectralSolution& solution, const std::vector<double>& x_grid,
                              const QuadratureSpec& spec);
StressSolution contact_stress(const CoefficientCase& c, const std::vector<double>& x_grid,
                              const QuadratureSpec& spec);

/// tau at a single x > 0 (m), without the realness check.
double stress_at(const SpectralSolution& solution, double x);

}  // namespace whcontact::wh
