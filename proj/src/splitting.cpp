#include "fowler/splitting.hpp"

#include <cmath>
#include <sstream>

#include "fowler/error.hpp"

namespace fowler {

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::LieXY: return "lie_xy";
    case SchemeKind::LieYX: return "lie_yx";
    case SchemeKind::StrangXYX: return "strang_xyx";
    case SchemeKind::StrangYXY: return "strang_yxy";
  }
  return "unknown";
}

std::optional<SchemeKind> parse_scheme(std::string_view name) {
  for (SchemeKind k : {SchemeKind::LieXY, SchemeKind::LieYX, SchemeKind::StrangXYX,
                       SchemeKind::StrangYXY})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

int formal_order(SchemeKind kind) {
  return kind == SchemeKind::LieXY || kind == SchemeKind::LieYX ? 1 : 2;
}

std::size_t SchemeSpec::n_steps() const {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw SolverError(ErrorCode::InvalidArgument, "dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final))
    throw SolverError(ErrorCode::InvalidArgument, "t_final must be non-negative");
  const double n = std::round(t_final / dt);
  if (std::abs(n * dt - t_final) > 1e-12 * t_final) {
    std::ostringstream os;
    os.precision(17);
    os << "dt = " << dt << " does not divide t_final = " << t_final;
    throw SolverError(ErrorCode::InvalidArgument, os.str());
  }
  return static_cast<std::size_t>(n);
}

void SchemeSpec::validate() const {
  n_steps();
  if (capture_every == 0)
    throw SolverError(ErrorCode::InvalidArgument, "capture_every must be positive");
}

SplitStepper::SplitStepper(SchemeKind kind, double dt, const SpectralGrid& grid,
                           const SymbolSpec& spec, FlowSettings settings)
    : kind_(kind),
      dt_(dt),
      linear_(grid, spec),
      burgers_(grid, spec.epsilon, settings),
      full_(linear_.multipliers(dt)),
      half_(linear_.multipliers(0.5 * dt)) {}

Field SplitStepper::x_flow(const Field& u, const std::vector<Complex>& m) const {
  return apply_multiplier(u, m);
}

Field SplitStepper::y_flow(const Field& u, double t, std::size_t& substeps) const {
  FlowStats st;
  Field out = burgers_.flow(u, t, &st);
  substeps += st.substeps;
  return out;
}

Field SplitStepper::step(const Field& u, FlowStats* stats) const {
  std::size_t substeps = 0;
  auto result = [&]() -> Field {
    switch (kind_) {
      case SchemeKind::LieXY: return x_flow(y_flow(u, dt_, substeps), full_);
      case SchemeKind::LieYX: return y_flow(x_flow(u, full_), dt_, substeps);
      case SchemeKind::StrangXYX: return x_flow(y_flow(x_flow(u, half_), dt_, substeps), half_);
      case SchemeKind::StrangYXY:
        return y_flow(x_flow(y_flow(u, 0.5 * dt_, substeps), full_), 0.5 * dt_, substeps);
    }
    throw SolverError(ErrorCode::InvalidArgument, "unknown scheme");
  }();
  if (stats) stats->substeps = substeps;
  return result;
}

Field split_step(const SchemeSpec& scheme, const LinearPropagator& prop, const BurgersStepper& st,
                 const Field& u) {
  const double dt = scheme.dt;
  const double half = 0.5 * dt;
  switch (scheme.kind) {
    case SchemeKind::LieXY: return prop.flow(st.flow(u, dt), dt);
    case SchemeKind::LieYX: return st.flow(prop.flow(u, dt), dt);
    case SchemeKind::StrangXYX: return prop.flow(st.flow(prop.flow(u, half), dt), half);
    case SchemeKind::StrangYXY: return st.flow(prop.flow(st.flow(u, half), dt), half);
  }
  throw SolverError(ErrorCode::InvalidArgument, "unknown scheme");
}

Trajectory evolve(const SchemeSpec& scheme, const SymbolSpec& spec, const Field& u0,
                  const FlowSettings& settings) {
  scheme.validate();
  const std::size_t n = scheme.n_steps();
  const double u0_norm = l2_norm(u0);

  Trajectory traj{scheme, {0.0}, {u0}, {u0_norm}, 0};
  if (n == 0) return traj;

  const SplitStepper stepper(scheme.kind, scheme.dt, u0.grid(), spec, settings);
  Field u = u0;
  for (std::size_t i = 1; i <= n; ++i) {
    FlowStats stats;
    try {
      u = stepper.step(u, &stats);
    } catch (const SolverError& e) {
      // Non-finite values, or round-off amplified into a non-real field, mean
      // the run has blown up.
      if (e.code() != ErrorCode::NonFiniteField && e.code() != ErrorCode::NonHermitianInput) throw;
      throw SolverError(ErrorCode::BlowUpDetected,
                        std::string(e.code() == ErrorCode::NonFiniteField ? "non-finite values"
                                                                          : "non-real field") +
                            " at step " + std::to_string(i) + " (t = " +
                            std::to_string(static_cast<double>(i) * scheme.dt) + ")");
    }
    traj.burgers_substeps += stats.substeps;
    const double norm = l2_norm(u);
    if (norm > 1e3 * u0_norm) {
      std::ostringstream os;
      os << "L2 norm " << norm << " exceeds 1e3 * ||u0|| = " << 1e3 * u0_norm << " at step " << i
         << " (t = " << static_cast<double>(i) * scheme.dt << ")";
      throw SolverError(ErrorCode::BlowUpDetected, os.str());
    }
    if (i % scheme.capture_every == 0 || i == n) {
      traj.times.push_back(i == n ? scheme.t_final : static_cast<double>(i) * scheme.dt);
      traj.snapshots.push_back(u);
      traj.l2_history.push_back(norm);
    }
  }
  return traj;
}

Field reference_solution(const SymbolSpec& spec, const Field& u0, double t_final, double dt_ref,
                         const FlowSettings& settings) {
  const SchemeSpec scheme{SchemeKind::StrangXYX, dt_ref, t_final, 1};
  const std::size_t n = scheme.n_steps();
  scheme.validate();
  if (n == 0) return u0;
  // Intermediate snapshots are not needed.
  SchemeSpec sparse = scheme;
  sparse.capture_every = n;
  return evolve(sparse, spec, u0, settings).final();
}

}  // namespace fowler
