#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fowler::quad {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes by Newton iteration on P_n.
Rule gauss_legendre(std::size_t n);

/// Composite Gauss-Legendre over `panels` equal panels of [a, b].
double composite(const std::function<double(double)>& f, double a, double b, std::size_t panels,
                 const Rule& rule);

struct Result {
  double value;
  double error_estimate;
  std::size_t panels;
};

/// Doubles the panel count until two successive estimates agree to
/// max(abs_tol, rel_tol * |value|). Throws QuadratureFailure when max_panels is exceeded.
Result integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_tol = 0.0, std::size_t initial_panels = 8,
                 std::size_t max_panels = std::size_t{1} << 16);

}  // namespace fowler::quad
