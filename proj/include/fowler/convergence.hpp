#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fowler/splitting.hpp"

namespace fowler {

enum class InitialDataId { BumpSingle, BumpDouble, BumpAsym, Gaussian, Sine, Constant };

std::string_view to_string(InitialDataId id);
std::optional<InitialDataId> parse_initial_data(std::string_view name);

/// Shape parameters. Zero/negative entries mean "use the per-id default".
struct InitialDataParams {
  double amplitude = 0.0;  // bump: A in A exp(-1/(1-r^2)), default e (peak 1)
  double width = 0.0;      // bump half-width w, Gaussian e-folding width
  double center = -1.0;    // default length/2
};

/// Bumps are A exp(-1/(1-r^2)) for r = |x-c|/w < 1 and 0 elsewhere. Their
/// support must keep a margin of at least a quarter of the domain length on each
/// side (SupportTooWide otherwise). Gaussian, sine and constant are for tests only.
Field make_initial_data(InitialDataId id, const SpectralGrid& grid,
                        const InitialDataParams& params = {});

/// C-infinity bump profile A exp(-1/(1-r^2)).
double bump(double x, double center, double width, double amplitude);

struct ConvergenceRow {
  double dt;
  double error_l2;
};

struct ConvergenceReport {
  SchemeKind scheme;
  InitialDataId data;
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;
  double slope_ci = 0.0;  // standard error of the slope
  std::optional<std::string> failure;  // set when the cell could not be completed

  bool ok() const noexcept { return !failure.has_value(); }
};

struct OrderFit {
  double slope;
  double slope_ci;
};

/// Ordinary least squares of log(error) against log(dt).
/// Throws DegenerateFit on fewer than 3 rows, equal dts, or non-positive errors.
OrderFit fit_order(const std::vector<ConvergenceRow>& rows);

/// || u(T; dt/2) - u(T; dt/4) ||_L2.
double self_convergence_error(SchemeKind kind, double dt, const Field& u0, double t_final,
                              const SymbolSpec& spec, const FlowSettings& settings = {});

/// dts[i] = t_final / (first_divisor * 2^i), generated by exact halving.
std::vector<double> dyadic_ladder(double t_final, double first_divisor, std::size_t count);

struct StudySpec {
  std::vector<double> dts;  // descending, consecutive ratio 2
  std::vector<SchemeKind> schemes;
  std::vector<InitialDataId> data;
  InitialDataParams data_params;
  double t_final = 0.1;
  SpectralGrid grid{1024, 4.0};
  SymbolSpec spec = SymbolSpec::make(0.5);
  FlowSettings settings;
  /// Abort with SpatialFloorReached when the smallest error is within 3x of the
  /// reference self-consistency gap.
  bool floor_guard = true;
  /// Worker threads for study cells; 0 or 1 runs serially.
  std::size_t threads = 0;

  /// dts: >= 4 entries, ratio 2, span >= one decade, each dividing t_final.
  void validate() const;

  /// Default ladder {T/50 ... T/800}, N=1024, length 4, eps = 1/2, three bumps.
  static StudySpec defaults(std::vector<SchemeKind> schemes);
};

/// One report per (scheme, initial data), in the order schemes x data.
/// Results do not depend on the thread count.
std::vector<ConvergenceReport> run_study(const StudySpec& study);

/// || ref(dt_ref) - ref(dt_ref / 2) || for dt_ref = min(dts) / 16, with both
/// references sharing one Burgers substep.
double reference_gap(const StudySpec& study, const Field& u0);

/// FOWLER_SPLIT_THREADS when set to a non-negative integer, else nullopt.
std::optional<std::size_t> threads_from_env();

}  // namespace fowler
