#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "whcontact/analysis.hpp"
#include "whcontact/error.hpp"
#include "whcontact/oracle.hpp"
#include "whcontact/wiener_hopf.hpp"

using namespace whcontact;
using namespace whcontact::analysis;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = lo * std::pow(hi / lo, i / double(n - 1));
  return x;
}

StressSolution synthetic(const std::vector<double>& x, double (*f)(double)) {
  StressSolution s;
  s.x = x;
  for (double v : x) s.tau.push_back(f(v));
  return s;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::invalid_argument;
}

MaterialSpec physical_material() {
  MaterialSpec m;
  m.E1 = 120e9;
  m.nu1 = 0.5;
  m.h1 = 5e-2;
  m.E2 = 95e9;
  m.nu2 = 0.3;
  m.h0 = 5e-4;
  m.mu0 = 0.117e9;
  m.T = 1.0;
  return m;
}

const std::vector<double> table_k = {3.42e-2, 1.52e-2, 0.55e-2, 0.25e-2, 1.42e-3, 0.55e-3,
                                     0.25e-3, 1.0e-4,  0.7e-4,  1.0e-5,  0.5e-5};

}  // namespace

TEST_CASE("power-law recovery") {
  const auto x = log_grid(1e-4, 1e-2, 40);
  for (double alpha : {-0.4, 0.0, 0.3, 0.49}) {
    StressSolution s;
    s.x = x;
    for (double v : x) s.tau.push_back(2.5 * std::pow(v, -alpha));
    const auto fit = fit_endpoint_exponent(s, {1e-4, 1e-2});
    CHECK(std::abs(fit.alpha - alpha) <= 1e-6);
    CHECK(fit.C == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(fit.r_squared == doctest::Approx(1.0));
  }

  // Negative stresses fit through |tau|.
  StressSolution neg;
  neg.x = x;
  for (double v : x) neg.tau.push_back(-std::pow(v, -0.3));
  const auto fit = fit_endpoint_exponent(neg, {1e-4, 1e-2});
  CHECK(fit.alpha == doctest::Approx(0.3));
  CHECK(fit.C == doctest::Approx(-1.0));

  SUBCASE("noisy data") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
    for (double alpha : {-0.4, 0.0, 0.3, 0.49}) {
      StressSolution s;
      s.x = log_grid(1e-4, 1e-2, 200);
      for (double v : s.x) s.tau.push_back(std::pow(v, -alpha) * std::exp(jitter(rng)));
      const auto f = fit_endpoint_exponent(s, {1e-4, 1e-2});
      CHECK(std::abs(f.alpha - alpha) <= 1e-3);
      CHECK(f.r_squared >= 0.0);
      CHECK(f.r_squared <= 1.0);
    }
  }
}

TEST_CASE("exponent fit errors") {
  const auto s = synthetic(log_grid(1e-4, 1e-2, 7), [](double v) { return 1.0 / v; });
  CHECK(code_of([&] { fit_endpoint_exponent(s, {1e-4, 1e-2}); }) == ErrorCode::too_few_points);

  const auto flip = synthetic(log_grid(1e-4, 1e-2, 30), [](double v) { return v - 1e-3; });
  CHECK(code_of([&] { fit_endpoint_exponent(flip, {1e-4, 1e-2}); }) ==
        ErrorCode::sign_change_in_window);

  const auto ok = synthetic(log_grid(1e-4, 1e-2, 30), [](double v) { return v; });
  CHECK_THROWS_AS(fit_endpoint_exponent(ok, {1e-5, 1e-2}), Error);
  CHECK_THROWS_AS(fit_endpoint_exponent(ok, {1e-3, 1e-3}), Error);
}

TEST_CASE("equilibrium check") {
  const auto p = make_model_params(1.0, 1.0, 1.0, CaseKind::case_b);

  StressSolution zero;
  zero.x = log_grid(1e-3, 40.0, 50);
  zero.tau.assign(50, 0.0);
  zero.phi.assign(50, 0.0);
  CHECK(equilibrium_check(zero, make_model_params(1.0, 1.0, 0.0, CaseKind::case_b)) == 0.0);

  const auto short_grid = synthetic(log_grid(1e-3, 10.0, 50), [](double v) { return std::exp(-v); });
  CHECK(code_of([&] { equilibrium_check(short_grid, p); }) == ErrorCode::insufficient_domain);

  SUBCASE("algebraic tail is extrapolated") {
    // int_0^inf 2/(1+x)^3 = 1, and 1/41^2 of it lies beyond x = 40.
    auto s = synthetic(log_grid(1e-3, 40.0, 400), [](double v) { return 2.0 / std::pow(1.0 + v, 3); });
    for (double v : s.x) s.phi.push_back(1.0 / std::pow(1.0 + v, 2));
    s.method = Method::wiener_hopf_B;
    CHECK(equilibrium_check(s, p) <= 1e-4);
    s.method = Method::direct_collocation;
    CHECK(equilibrium_check(s, p) == doctest::Approx(1.0 / (41.0 * 41.0)).epsilon(1e-3));
  }

  SUBCASE("analytic and collocation solutions") {
    const auto x = log_grid(1e-4, 200.0, 600);
    const auto b = wh::contact_stress(wh::CoefficientCase::from(p), x, {});
    CHECK(equilibrium_check(b, p) <= 1e-3);
    const auto d = oracle::solve_direct(p);
    CHECK(equilibrium_check(d, p) <= 5e-3);
  }
}

TEST_CASE("endpoint exponents of the solvers") {
  const auto x = log_grid(1e-4, 1e-2, 64);
  for (auto [lambda, k] : {std::pair{1.0, 1.0}, std::pair{0.153263, 0.0342}}) {
    const auto p = make_model_params(lambda, k, 1.0, CaseKind::case_b);
    std::vector<double> xs;
    for (double v : x) xs.push_back(v * lambda);
    const auto s = wh::contact_stress(wh::CoefficientCase::from(p), xs, {});
    const auto fit = fit_endpoint_exponent(s, {1e-4 * lambda, 1e-2 * lambda});
    INFO("lambda = " << lambda << ", alpha = " << fit.alpha);
    CHECK(std::abs(fit.alpha) < 0.05);
  }

  // The rigid-limit stress behaves like x^-1/2 in this window.
  const auto rigid = make_model_params(1.0, 0.0, 1.0, CaseKind::rigid_limit);
  const auto s = wh::contact_stress(wh::CoefficientCase::from(rigid), x, {});
  const auto fit = fit_endpoint_exponent(s, {1e-4, 1e-2});
  INFO("rigid alpha = " << fit.alpha);
  CHECK(std::abs(fit.alpha - 0.5) < 0.02);
  CHECK(fit.r_squared > 0.999);
}

TEST_CASE("endpoint extrapolation") {
  const auto smooth = endpoint_limit([](double x) { return 3.0 + 2.0 * x * std::log(x) - x; }, 1e-4);
  CHECK(smooth.tau0 == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(std::abs(smooth.alpha) < 0.05);
  const auto singular = endpoint_limit([](double x) { return std::pow(x, -0.3); }, 1e-4);
  CHECK(singular.tau0 == std::numeric_limits<double>::infinity());
  CHECK(singular.alpha == doctest::Approx(0.3));
  CHECK(endpoint_limit([](double) { return 0.0; }, 1e-4).tau0 == 0.0);

  // tau(0+) = T / sqrt(k) from the large-t behaviour of the transform.
  for (auto [lambda, k] : {std::pair{1.0, 1.0}, std::pair{0.153263, 0.0342}, std::pair{1.0, 1e-3},
                           std::pair{0.153263, 5e-6}}) {
    const auto p = make_model_params(lambda, k, 2.0, CaseKind::case_b);
    wh::SpectralOptions o;
    o.certify = false;
    const auto sol = wh::spectral_solution(wh::CoefficientCase::from(p), {}, o);
    auto tau = [&](double x) { return wh::stress_at(sol, x); };
    const double x_min = endpoint_scale(p);
    const double t0 = endpoint_limit(tau, x_min).tau0;
    const double t1 = endpoint_limit(tau, 0.5 * x_min).tau0;
    INFO("lambda = " << lambda << ", k = " << k);
    CHECK(t0 == doctest::Approx(2.0 / std::sqrt(k)).epsilon(1e-3));
    CHECK(std::abs(t1 - t0) <= 1e-2 * t0);
  }
}

TEST_CASE("sweep table") {
  const auto m = physical_material();
  const auto one = sweep_table(m, {3.42e-2}, Method::wiener_hopf_B);
  REQUIRE(one.rows.size() == 1);
  CHECK(one.trend_monotone);
  CHECK(one.rows[0].tau0 == doctest::Approx(1.0 / std::sqrt(3.42e-2)).epsilon(1e-3));
  CHECK(one.ratio_to_first_row() == std::vector<double>{1.0});

  std::vector<double> shuffled = table_k;
  std::reverse(shuffled.begin(), shuffled.end());
  const auto t = sweep_table(m, shuffled, Method::wiener_hopf_B);
  REQUIRE(t.rows.size() == table_k.size());
  CHECK(t.trend_monotone);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].k == table_k[i]);
    CHECK(t.rows[i].method == Method::wiener_hopf_B);
    CHECK(std::abs(t.rows[i].alpha) < 0.05);
  }
  CHECK(t.ratio_to_first_row()[1] == doctest::Approx(std::sqrt(3.42e-2 / 1.52e-2)).epsilon(1e-3));

  const auto a = sweep_table(m, {3.42e-2, 1e-3}, Method::wiener_hopf_A);
  CHECK(a.rows[1].tau0 == doctest::Approx(t.rows[4].tau0 * std::sqrt(1.42e-3 / 1e-3)).epsilon(1e-3));

  CHECK_THROWS_AS(sweep_table(m, {1e-2, 0.0}, Method::wiener_hopf_B), Error);
  CHECK_THROWS_AS(sweep_table(m, {1e-2}, Method::rigid_limit), Error);
  CHECK_THROWS_AS(sweep_table(m, {1e-2}, Method::direct_collocation), Error);
}

TEST_CASE("cross validation") {
  const oracle::GridSpec grid;
  CHECK(code_of([&] {
          cross_validate(make_model_params(1.0, 0.0, 1.0, CaseKind::rigid_limit), grid, {});
        }) == ErrorCode::k_zero_unsupported);

  const auto zero = cross_validate(make_model_params(1.0, 1.0, 0.0, CaseKind::case_b), grid, {});
  CHECK(zero.at("caseA_vs_caseB") == 0.0);
  CHECK(zero.at("analytic_vs_collocation") == 0.0);
  CHECK(zero.at("analytic_residual") == 0.0);

  for (auto [lambda, k] : {std::pair{1.0, 1.0}, std::pair{0.153263, 0.0342}}) {
    const auto r = cross_validate(make_model_params(lambda, k, 1.0, CaseKind::case_b), grid, {});
    INFO("lambda = " << lambda << ", A/B = " << r.at("caseA_vs_caseB")
                     << ", direct = " << r.at("analytic_vs_collocation")
                     << ", residual = " << r.at("analytic_residual"));
    CHECK(r.at("caseA_vs_caseB") <= 1e-4);
    CHECK(r.at("analytic_vs_collocation") <= 1e-2);
    CHECK(r.at("analytic_residual") <= 1e-3);
    CHECK(r.at("equilibrium_analytic") <= 1e-3);
  }
}
