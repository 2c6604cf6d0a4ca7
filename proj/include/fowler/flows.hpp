#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fowler/operators.hpp"
#include "fowler/spectral.hpp"

namespace fowler {

/// Exact solution operator X^t of v_t + I[v] - eta v_xx = 0: the spectral
/// multiplier exp(-t phi_I(xi_k)).
class LinearPropagator {
 public:
  LinearPropagator(const SpectralGrid& grid, const SymbolSpec& spec);

  const SpectralGrid& grid() const noexcept { return grid_; }
  const SymbolSpec& spec() const noexcept { return spec_; }

  /// exp(-t phi_I(xi_k)) per bin. Throws NegativeTime for t < 0.
  std::vector<Complex> multipliers(double t) const;

  Field flow(const Field& f, double t) const;

 private:
  SpectralGrid grid_;
  SymbolSpec spec_;
  std::vector<Complex> phi_;  // phi_I(xi_k)
};

/// How burgers_flow splits a time interval t into explicit substeps.
enum class SubstepPolicy {
  /// M = smallest power of two with t / M <= dtau_max. On a dyadic ladder of
  /// times every call lands on the same substep, so the Euler error is shared
  /// between runs that a self-convergence study compares.
  Dyadic,
  /// M = ceil(t / dtau_max).
  Ceil,
};

struct FlowSettings {
  double cfl_safety = 0.9;
  SubstepPolicy policy = SubstepPolicy::Dyadic;
  /// Optional cap on the substep below the CFL bound; 0 disables it.
  double max_substep = 0.0;
  /// Substeps allowed in one flow call before it fails with CflViolation.
  std::size_t max_substeps = std::size_t{1} << 22;
};

struct FlowStats {
  std::size_t substeps = 0;
  double dtau = 0.0;
};

/// Explicit centered finite-difference solver for w_t + (w^2/2)_x - eps w_xx = 0
/// on the periodic grid.
class BurgersStepper {
 public:
  BurgersStepper(const SpectralGrid& grid, double epsilon, FlowSettings settings = {});

  const SpectralGrid& grid() const noexcept { return grid_; }
  double epsilon() const noexcept { return epsilon_; }
  const FlowSettings& settings() const noexcept { return settings_; }

  /// safety * min(dx / max(|v|, 1e-12), dx^2 / (2 eps)) with v = max_j |u_j|.
  double cfl_dt(const Field& u) const;

  /// One explicit step. Throws CflViolation when dtau exceeds cfl_dt(u).
  Field substep(const Field& u, double dtau) const;

  /// Advance by t with the substep frozen at the start of the call.
  Field flow(const Field& u, double t, FlowStats* stats = nullptr) const;

  /// Number of substeps the policy uses for an interval t when the bound is dtau_max.
  std::size_t substep_count(double t, double dtau_max) const;

 private:
  void step_in_place(std::vector<double>& u, std::vector<double>& scratch, double dtau) const;

  SpectralGrid grid_;
  double epsilon_;
  FlowSettings settings_;
};

/// Exact viscous Burgers solution on R by the Hopf-Cole formula
///
///   w(t,x) = int ((x-y)/t) E dy / int E dy,
///   E(x,y) = exp(-(x-y)^2 / (4 eps t) - W(y) / (2 eps)),  W(y) = int_0^y w0.
///
/// The outer integrals use composite Gauss-Legendre with panel doubling; W is
/// accumulated along the sorted quadrature nodes.
class HopfColeOracle {
 public:
  HopfColeOracle(std::function<double(double)> w0, double epsilon, double tol = 1e-10);

  /// Throws QuadratureFailure if the adaptive quadrature does not converge.
  double operator()(double t, double x) const;

 private:
  double evaluate(double t, double x, std::size_t panels) const;

  std::function<double(double)> w0_;
  double epsilon_;
  double tol_;
};

double hopf_cole_oracle(const std::function<double(double)>& w0, double epsilon, double t,
                        double x);

}  // namespace fowler
