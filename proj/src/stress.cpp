#include "whcontact/stress.hpp"

#include <algorithm>

#include "whcontact/error.hpp"

namespace whcontact {

namespace {

std::size_t stencil_start(const std::vector<double>& xs, const std::vector<double>& ys, double at) {
  if (xs.size() < 4 || xs.size() != ys.size())
    throw Error(ErrorCode::too_few_points, "cubic interpolation needs 4 matching samples");
  const auto it = std::upper_bound(xs.begin(), xs.end(), at);
  const std::ptrdiff_t right = it - xs.begin();
  const std::ptrdiff_t start = std::clamp<std::ptrdiff_t>(right - 2, 0, xs.size() - 4);
  return static_cast<std::size_t>(start);
}

}  // namespace

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::wiener_hopf_A: return "wiener_hopf_A";
    case Method::wiener_hopf_B: return "wiener_hopf_B";
    case Method::rigid_limit: return "rigid_limit";
    case Method::direct_collocation: return "direct_collocation";
  }
  return "unknown";
}

double interpolate_cubic(const std::vector<double>& xs, const std::vector<double>& ys, double at) {
  const std::size_t s = stencil_start(xs, ys, at);
  double sum = 0.0;
  for (std::size_t i = s; i < s + 4; ++i) {
    double w = 1.0;
    for (std::size_t j = s; j < s + 4; ++j)
      if (j != i) w *= (at - xs[j]) / (xs[i] - xs[j]);
    sum += w * ys[i];
  }
  return sum;
}

double interpolate_cubic_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                               double at) {
  const std::size_t s = stencil_start(xs, ys, at);
  double sum = 0.0;
  for (std::size_t i = s; i < s + 4; ++i) {
    double denom = 1.0;
    for (std::size_t j = s; j < s + 4; ++j)
      if (j != i) denom *= xs[i] - xs[j];
    // d/dx prod_{j != i} (x - x_j) = sum_m prod_{j != i, m} (x - x_j)
    double num = 0.0;
    for (std::size_t m = s; m < s + 4; ++m) {
      if (m == i) continue;
      double p = 1.0;
      for (std::size_t j = s; j < s + 4; ++j)
        if (j != i && j != m) p *= at - xs[j];
      num += p;
    }
    sum += num / denom * ys[i];
  }
  return sum;
}

}  // namespace whcontact
