#include "fowler/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fowler/error.hpp"

namespace fowler::quad {

Rule gauss_legendre(std::size_t n) {
  Rule r{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    // Tricomi initial guess for the i-th root.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

double composite(const std::function<double(double)>& f, double a, double b, std::size_t panels,
                 const Rule& rule) {
  const double h = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * s;
  }
  return total;
}

Result integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_tol, std::size_t initial_panels, std::size_t max_panels) {
  static const Rule rule = gauss_legendre(10);
  std::size_t panels = initial_panels;
  double prev = composite(f, a, b, panels, rule);
  while (panels < max_panels) {
    panels *= 2;
    const double next = composite(f, a, b, panels, rule);
    const double err = std::abs(next - prev);
    if (err <= std::max(abs_tol, rel_tol * std::abs(next))) return {next, err, panels};
    prev = next;
  }
  throw SolverError(ErrorCode::QuadratureFailure,
                    "no convergence after " + std::to_string(max_panels) + " panels");
}

}  // namespace fowler::quad
