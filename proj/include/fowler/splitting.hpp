#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fowler/flows.hpp"

namespace fowler {

/// X is the exact linear flow, Y the viscous Burgers flow.
enum class SchemeKind {
  LieXY,      // X^dt Y^dt
  LieYX,      // Y^dt X^dt
  StrangXYX,  // X^{dt/2} Y^dt X^{dt/2}
  StrangYXY,  // Y^{dt/2} X^dt Y^{dt/2}
};

std::string_view to_string(SchemeKind kind);
/// Accepts lie_xy, lie_yx, strang_xyx, strang_yxy.
std::optional<SchemeKind> parse_scheme(std::string_view name);
/// Formal order of accuracy in time: 1 for Lie, 2 for Strang.
int formal_order(SchemeKind kind);

struct SchemeSpec {
  SchemeKind kind = SchemeKind::StrangXYX;
  double dt = 1e-3;
  double t_final = 0.1;
  std::size_t capture_every = 1;

  /// round(t_final / dt); throws InvalidArgument unless dt divides t_final to 1e-12.
  std::size_t n_steps() const;
  void validate() const;
};

struct Trajectory {
  SchemeSpec scheme;
  std::vector<double> times;
  std::vector<Field> snapshots;
  std::vector<double> l2_history;
  std::size_t burgers_substeps = 0;

  const Field& final() const { return snapshots.back(); }
};

/// Applies one composition step. Caches the linear multipliers for dt and dt/2.
class SplitStepper {
 public:
  SplitStepper(SchemeKind kind, double dt, const SpectralGrid& grid, const SymbolSpec& spec,
               FlowSettings settings = {});

  Field step(const Field& u, FlowStats* stats = nullptr) const;

  const LinearPropagator& linear() const noexcept { return linear_; }
  const BurgersStepper& burgers() const noexcept { return burgers_; }

 private:
  Field x_flow(const Field& u, const std::vector<Complex>& m) const;
  Field y_flow(const Field& u, double t, std::size_t& substeps) const;

  SchemeKind kind_;
  double dt_;
  LinearPropagator linear_;
  BurgersStepper burgers_;
  std::vector<Complex> full_;
  std::vector<Complex> half_;
};

/// One step of the chosen composition.
Field split_step(const SchemeSpec& scheme, const LinearPropagator& prop, const BurgersStepper& st,
                 const Field& u);

/// Iterates split_step to t_final. Snapshots are kept every capture_every steps
/// plus the final step. Throws BlowUpDetected when ||u_n|| exceeds 1e3 ||u_0||.
Trajectory evolve(const SchemeSpec& scheme, const SymbolSpec& spec, const Field& u0,
                  const FlowSettings& settings = {});

/// Fine-step StrangXYX surrogate for the exact solution at t_final.
Field reference_solution(const SymbolSpec& spec, const Field& u0, double t_final, double dt_ref,
                         const FlowSettings& settings = {});

}  // namespace fowler
