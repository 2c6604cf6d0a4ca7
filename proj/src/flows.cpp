#include "fowler/flows.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "fowler/error.hpp"
#include "fowler/quadrature.hpp"

namespace fowler {

namespace {

void require_nonnegative(double t) {
  if (!(t >= 0.0))
    throw SolverError(ErrorCode::NegativeTime, "time must be non-negative, got " + std::to_string(t));
}

}  // namespace

LinearPropagator::LinearPropagator(const SpectralGrid& grid, const SymbolSpec& spec)
    : grid_(grid), spec_(spec), phi_(grid.size()) {
  spec_.validate();
  for (std::size_t k = 0; k < phi_.size(); ++k) phi_[k] = symbol_phi(spec_, grid_.frequency(k));
}

std::vector<Complex> LinearPropagator::multipliers(double t) const {
  require_nonnegative(t);
  std::vector<Complex> m(phi_.size());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::exp(-t * phi_[k]);
  return m;
}

Field LinearPropagator::flow(const Field& f, double t) const {
  if (t == 0.0) return f;
  return apply_multiplier(f, multipliers(t));
}

BurgersStepper::BurgersStepper(const SpectralGrid& grid, double epsilon, FlowSettings settings)
    : grid_(grid), epsilon_(epsilon), settings_(settings) {
  if (!(epsilon > 0.0))
    throw SolverError(ErrorCode::InvalidArgument, "Burgers viscosity must be positive");
  if (!(settings.cfl_safety > 0.0 && settings.cfl_safety <= 1.0))
    throw SolverError(ErrorCode::InvalidArgument, "cfl_safety must lie in (0, 1]");
  if (!(settings.max_substep >= 0.0))
    throw SolverError(ErrorCode::InvalidArgument, "max_substep must be non-negative");
}

double BurgersStepper::cfl_dt(const Field& u) const {
  const double dx = grid_.dx();
  const double v = std::max(u.max_abs(), 1e-12);
  return settings_.cfl_safety * std::min(dx / v, dx * dx / (2.0 * epsilon_));
}

void BurgersStepper::step_in_place(std::vector<double>& u, std::vector<double>& next,
                                   double dtau) const {
  const std::size_t n = u.size();
  const double dx = grid_.dx();
  const double adv = dtau / (2.0 * dx);
  const double diff = epsilon_ * dtau / (dx * dx);
  for (std::size_t j = 0; j < n; ++j) {
    const double up = u[(j + 1) % n];
    const double um = u[(j + n - 1) % n];
    next[j] = u[j] - adv * (0.5 * up * up - 0.5 * um * um) + diff * (up - 2.0 * u[j] + um);
  }
  u.swap(next);
}

Field BurgersStepper::substep(const Field& u, double dtau) const {
  require_nonnegative(dtau);
  const double bound = cfl_dt(u);
  if (dtau > bound * (1.0 + 1e-12))
    throw SolverError(ErrorCode::CflViolation, "substep " + std::to_string(dtau) +
                                                   " exceeds CFL bound " + std::to_string(bound));
  std::vector<double> v(u.values().begin(), u.values().end());
  std::vector<double> scratch(v.size());
  step_in_place(v, scratch, dtau);
  return Field(grid_, std::move(v));
}

std::size_t BurgersStepper::substep_count(double t, double dtau_max) const {
  if (t <= dtau_max) return 1;
  const double needed = t / dtau_max;
  std::size_t m = 1;
  if (needed <= static_cast<double>(settings_.max_substeps)) {
    if (settings_.policy == SubstepPolicy::Ceil) {
      m = static_cast<std::size_t>(std::ceil(needed));
    } else {
      while (t / static_cast<double>(m) > dtau_max) m *= 2;
    }
  }
  if (!(needed <= static_cast<double>(settings_.max_substeps)) || m > settings_.max_substeps) {
    std::ostringstream os;
    os << "flow over " << t << " needs " << needed << " substeps of at most " << dtau_max
       << ", above the limit " << settings_.max_substeps;
    throw SolverError(ErrorCode::CflViolation, os.str());
  }
  return m;
}

Field BurgersStepper::flow(const Field& u, double t, FlowStats* stats) const {
  require_nonnegative(t);
  if (stats) *stats = {};
  if (t == 0.0) return u;
  double dtau_max = cfl_dt(u);
  if (settings_.max_substep > 0.0) dtau_max = std::min(dtau_max, settings_.max_substep);
  const std::size_t m = substep_count(t, dtau_max);
  const double dtau = t / static_cast<double>(m);

  std::vector<double> v(u.values().begin(), u.values().end());
  std::vector<double> scratch(v.size());
  for (std::size_t i = 0; i < m; ++i) step_in_place(v, scratch, dtau);
  if (stats) *stats = {m, dtau};
  return Field(grid_, std::move(v));
}

HopfColeOracle::HopfColeOracle(std::function<double(double)> w0, double epsilon, double tol)
    : w0_(std::move(w0)), epsilon_(epsilon), tol_(tol) {
  if (!(epsilon > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "epsilon must be positive");
}

double HopfColeOracle::evaluate(double t, double x, std::size_t panels) const {
  static const quad::Rule outer = quad::gauss_legendre(10);
  static const quad::Rule inner = quad::gauss_legendre(8);
  // The heat kernel factor is below exp(-196) outside |x - y| < 14 sqrt(4 eps t).
  const double half_width = 14.0 * std::sqrt(4.0 * epsilon_ * t);
  const double lo = x - half_width;
  const double h = 2.0 * half_width / static_cast<double>(panels);

  // Nodes in ascending order; W is accumulated from lo, since an additive
  // constant in W cancels between numerator and denominator.
  std::vector<double> rule_nodes = outer.nodes;
  std::vector<double> rule_weights = outer.weights;
  std::vector<std::size_t> order(rule_nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rule_nodes[a] < rule_nodes[b]; });

  const auto segment = [&](double a, double b) {
    double s = 0.0;
    for (std::size_t i = 0; i < inner.nodes.size(); ++i)
      s += inner.weights[i] * w0_(0.5 * (a + b) + 0.5 * (b - a) * inner.nodes[i]);
    return 0.5 * (b - a) * s;
  };

  double prev_y = lo, primitive = 0.0, num = 0.0, den = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = lo + (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i : order) {
      const double y = mid + 0.5 * h * rule_nodes[i];
      primitive += segment(prev_y, y);
      prev_y = y;
      const double d = x - y;
      const double e = std::exp(-d * d / (4.0 * epsilon_ * t) - primitive / (2.0 * epsilon_));
      const double w = 0.5 * h * rule_weights[i];
      den += w * e;
      num += w * (d / t) * e;
    }
  }
  return num / den;
}

double HopfColeOracle::operator()(double t, double x) const {
  if (!(t > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "Hopf-Cole needs t > 0");
  std::size_t panels = 32;
  double prev = evaluate(t, x, panels);
  while (panels < (std::size_t{1} << 14)) {
    panels *= 2;
    const double next = evaluate(t, x, panels);
    if (std::abs(next - prev) <= tol_ * std::max(1.0, std::abs(next))) return next;
    prev = next;
  }
  throw SolverError(ErrorCode::QuadratureFailure,
                    "Hopf-Cole quadrature did not converge at x = " + std::to_string(x));
}

double hopf_cole_oracle(const std::function<double(double)>& w0, double epsilon, double t,
                        double x) {
  return HopfColeOracle(w0, epsilon)(t, x);
}

}  // namespace fowler
