#pragma once

#include <functional>

#include "fowler/spectral.hpp"

namespace fowler {

/// Parameters of every Fourier symbol in the model.
///
/// The splitting viscosities always satisfy epsilon + eta = 1; only epsilon is
/// stored. The nonlocal operator is the multiplier
///
///     m(xi) = -a_I |xi|^lambda + i b_I sgn(xi) |xi|^lambda,
///
/// which for lambda = 4/3 reproduces -4 pi^2 Gamma(2/3) (1/2 - i sgn(xi) sqrt(3)/2) |xi|^{4/3}.
/// Note that the linear-flow symbol phi_I carries the imaginary unit on its b_I
/// term; without it phi_I + 4 pi^2 epsilon xi^2 = psi_I would not hold.
struct SymbolSpec {
  double epsilon = 0.5;
  double lambda = 4.0 / 3.0;
  double a_I = 0.0;
  double b_I = 0.0;

  double eta() const noexcept { return 1.0 - epsilon; }

  /// Defaults a_I = 2 pi^2 Gamma(2/3), b_I = sqrt(3) a_I (any lambda).
  static SymbolSpec make(double epsilon, double lambda = 4.0 / 3.0);
  static SymbolSpec make(double epsilon, double lambda, double a_I, double b_I);

  /// Constants matching the singular integral int_0^inf xi^{-1/3} phi''(x - xi) dxi
  /// under the transform F f(xi) = int e^{-2 pi i x xi} f(x) dx:
  /// a_I = (2 pi)^{4/3} Gamma(2/3) / 2, b_I = sqrt(3) a_I.
  static SymbolSpec integral_consistent(double epsilon);

  /// Throws InvalidArgument unless epsilon in [0,1), lambda in (0,2), a_I, b_I > 0.
  void validate() const;
};

enum class SymbolKind { NonlocalI, PsiI, PhiI, Heat };

/// Gamma function, Lanczos approximation (g = 7, 9 terms) with reflection below 1/2.
double lanczos_gamma(double x);
double gamma_two_thirds();

double default_a_I();
double default_b_I();

Complex symbol(SymbolKind kind, const SymbolSpec& spec, double xi);
Complex symbol_nonlocal(const SymbolSpec& spec, double xi);
Complex symbol_psi(const SymbolSpec& spec, double xi);
Complex symbol_phi(const SymbolSpec& spec, double xi);
double symbol_heat(const SymbolSpec& spec, double xi);

/// -min Re psi_I, from the closed-form minimizer.
double alpha0(const SymbolSpec& spec);
/// -min Re phi_I, from the closed-form minimizer.
double beta0(const SymbolSpec& spec);
/// Minimizer of Re(diffusion xi^2 - a_I |xi|^lambda) over xi >= 0.
double growth_minimizer(const SymbolSpec& spec, double diffusion);

Field apply_nonlocal_spectral(const SymbolSpec& spec, const Field& f);

/// A smooth profile on R, described by what the singular integral needs.
struct SmoothProfile {
  std::function<double(double)> value;
  std::function<double(double)> second_derivative;
  /// Upper bound of int_{xi_max}^inf xi^{-1/3} |phi''(x - xi)| dxi.
  std::function<double(double x, double xi_max)> tail_bound;
};

/// amplitude * exp(-((x - center) / width)^2).
SmoothProfile gaussian_profile(double amplitude = 1.0, double center = 0.0, double width = 1.0);

/// Affine profile slope * x + offset (phi'' == 0).
SmoothProfile linear_profile(double slope, double offset);

struct QuadratureOptions {
  double tail_tolerance = 1e-10;
  double rel_tol = 1e-13;
  double abs_tol = 1e-13;
  std::size_t initial_panels = 16;
};

/// I[phi](x) = int_0^xi_max xi^{-1/3} phi''(x - xi) dxi, evaluated after the
/// substitution xi = s^3 (integrand 3 s phi''(x - s^3)) by composite
/// Gauss-Legendre. Throws ToleranceNotMet when the tail bound exceeds the tolerance.
double apply_nonlocal_quadrature(const SmoothProfile& f, double x, double xi_max,
                                 const QuadratureOptions& opts = {});

/// hs_norm(I f, s - lambda) / hs_norm(f, s). Bounded by 4 pi^2 Gamma(2/3) for the default constants.
double hs_bound_ratio(const SymbolSpec& spec, const Field& f, double s);

}  // namespace fowler
