#pragma once

#include <map>
#include <string>
#include <vector>

namespace whcontact {

enum class Method { wiener_hopf_A, wiener_hopf_B, rigid_limit, direct_collocation };

const char* to_string(Method method) noexcept;

/// Tangential stress and patch force on a grid of x > 0. Dimensional: x in m,
/// tau in N/m^2, phi in N/m.
struct StressSolution {
  std::vector<double> x;
  std::vector<double> tau;
  std::vector<double> phi;
  Method method = Method::wiener_hopf_B;
  std::map<std::string, double> diagnostics;
};

/// Local cubic Lagrange interpolation through the four tabulated points
/// nearest `at` (xs strictly increasing, at least 4 points). Outside the
/// table the end stencil is extrapolated.
double interpolate_cubic(const std::vector<double>& xs, const std::vector<double>& ys, double at);

/// Derivative of the same local cubic.
double interpolate_cubic_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                               double at);

}  // namespace whcontact
