#include "fowler/operators.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fowler/error.hpp"
#include "fowler/quadrature.hpp"

namespace fowler {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPiSq = 4.0 * kPi * kPi;

// sgn(xi) |xi|^p, continuous at 0 for p > 0.
double signed_power(double xi, double p) {
  if (xi == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(xi), p), xi);
}

}  // namespace

double lanczos_gamma(double x) {
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  x -= 1.0;
  double a = c[0];
  const double t = x + 7.5;
  for (std::size_t i = 1; i < c.size(); ++i) a += c[i] / (x + static_cast<double>(i));
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double gamma_two_thirds() { return lanczos_gamma(2.0 / 3.0); }

double default_a_I() { return 2.0 * kPi * kPi * gamma_two_thirds(); }
double default_b_I() { return std::sqrt(3.0) * default_a_I(); }

SymbolSpec SymbolSpec::make(double epsilon, double lambda) {
  return make(epsilon, lambda, default_a_I(), default_b_I());
}

SymbolSpec SymbolSpec::make(double epsilon, double lambda, double a_I, double b_I) {
  SymbolSpec s{epsilon, lambda, a_I, b_I};
  s.validate();
  return s;
}

SymbolSpec SymbolSpec::integral_consistent(double epsilon) {
  const double a = 0.5 * std::pow(2.0 * kPi, 4.0 / 3.0) * gamma_two_thirds();
  return make(epsilon, 4.0 / 3.0, a, std::sqrt(3.0) * a);
}

void SymbolSpec::validate() const {
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw SolverError(ErrorCode::InvalidArgument,
                      "epsilon must lie in [0, 1), got " + std::to_string(epsilon));
  if (!(lambda > 0.0 && lambda < 2.0))
    throw SolverError(ErrorCode::InvalidArgument,
                      "lambda must lie in (0, 2), got " + std::to_string(lambda));
  if (!(a_I > 0.0) || !(b_I > 0.0) || !std::isfinite(a_I) || !std::isfinite(b_I))
    throw SolverError(ErrorCode::InvalidArgument, "a_I and b_I must be positive");
}

Complex symbol_nonlocal(const SymbolSpec& spec, double xi) {
  const double mag = std::pow(std::abs(xi), spec.lambda);
  return {-spec.a_I * mag, spec.b_I * signed_power(xi, spec.lambda)};
}

Complex symbol_psi(const SymbolSpec& spec, double xi) {
  return kFourPiSq * xi * xi + symbol_nonlocal(spec, xi);
}

Complex symbol_phi(const SymbolSpec& spec, double xi) {
  return kFourPiSq * spec.eta() * xi * xi + symbol_nonlocal(spec, xi);
}

double symbol_heat(const SymbolSpec& spec, double xi) { return kFourPiSq * spec.epsilon * xi * xi; }

Complex symbol(SymbolKind kind, const SymbolSpec& spec, double xi) {
  switch (kind) {
    case SymbolKind::NonlocalI: return symbol_nonlocal(spec, xi);
    case SymbolKind::PsiI: return symbol_psi(spec, xi);
    case SymbolKind::PhiI: return symbol_phi(spec, xi);
    case SymbolKind::Heat: return symbol_heat(spec, xi);
  }
  return {};
}

double growth_minimizer(const SymbolSpec& spec, double diffusion) {
  // d/dxi (D xi^2 - a xi^lambda) = 0  =>  xi^(2 - lambda) = lambda a / (2 D)
  return std::pow(spec.lambda * spec.a_I / (2.0 * diffusion), 1.0 / (2.0 - spec.lambda));
}

namespace {

double negative_min(const SymbolSpec& spec, double diffusion) {
  if (!(diffusion > 0.0))
    throw SolverError(ErrorCode::InvalidArgument, "diffusion coefficient must be positive");
  const double xs = growth_minimizer(spec, diffusion);
  return -(diffusion * xs * xs - spec.a_I * std::pow(xs, spec.lambda));
}

}  // namespace

double alpha0(const SymbolSpec& spec) { return negative_min(spec, kFourPiSq); }

double beta0(const SymbolSpec& spec) { return negative_min(spec, kFourPiSq * spec.eta()); }

Field apply_nonlocal_spectral(const SymbolSpec& spec, const Field& f) {
  return apply_multiplier(f, [&spec](double xi) { return symbol_nonlocal(spec, xi); });
}

SmoothProfile gaussian_profile(double amplitude, double center, double width) {
  SmoothProfile p;
  p.value = [=](double x) {
    const double z = (x - center) / width;
    return amplitude * std::exp(-z * z);
  };
  p.second_derivative = [=](double x) {
    const double z = (x - center) / width;
    return amplitude * (4.0 * z * z - 2.0) / (width * width) * std::exp(-z * z);
  };
  p.tail_bound = [=](double x, double xi_max) {
    // Left of the inflection point phi'' > 0, so int_{-inf}^y |phi''| = phi'(y).
    const double y = x - xi_max;
    const double z = (y - center) / width;
    const double scale = std::pow(xi_max, -1.0 / 3.0) * std::abs(amplitude);
    if (z <= -std::sqrt(0.5)) return scale * (-2.0 * z / width) * std::exp(-z * z);
    return scale * 4.0 * std::sqrt(2.0) * std::exp(-0.5) / width;
  };
  return p;
}

SmoothProfile linear_profile(double slope, double offset) {
  return {[=](double x) { return slope * x + offset; }, [](double) { return 0.0; },
          [](double, double) { return 0.0; }};
}

double apply_nonlocal_quadrature(const SmoothProfile& f, double x, double xi_max,
                                 const QuadratureOptions& opts) {
  if (!(xi_max > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "xi_max must be positive");
  if (f.tail_bound) {
    const double tail = f.tail_bound(x, xi_max);
    if (tail > opts.tail_tolerance)
      throw SolverError(ErrorCode::ToleranceNotMet,
                        "tail bound " + std::to_string(tail) + " exceeds tolerance at xi_max " +
                            std::to_string(xi_max));
  }
  const auto integrand = [&](double s) { return 3.0 * s * f.second_derivative(x - s * s * s); };
  return quad::integrate(integrand, 0.0, std::cbrt(xi_max), opts.rel_tol, opts.abs_tol,
                         opts.initial_panels)
      .value;
}

double hs_bound_ratio(const SymbolSpec& spec, const Field& f, double s) {
  const double denom = hs_norm(f, s);
  if (denom == 0.0) throw SolverError(ErrorCode::ZeroField, "ratio undefined for the zero field");
  return hs_norm(apply_nonlocal_spectral(spec, f), s - spec.lambda) / denom;
}

}  // namespace fowler
