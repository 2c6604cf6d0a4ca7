#include "fowler/convergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "fowler/error.hpp"

namespace fowler {

OrderFit fit_order(const std::vector<ConvergenceRow>& rows) {
  if (rows.size() < 3)
    throw SolverError(ErrorCode::DegenerateFit, "need at least 3 rows, got " +
                                                    std::to_string(rows.size()));
  const double n = static_cast<double>(rows.size());
  double mx = 0.0, my = 0.0;
  for (const auto& r : rows) {
    if (!(r.error_l2 > 0.0) || !(r.dt > 0.0))
      throw SolverError(ErrorCode::DegenerateFit, "dt and error must be positive");
    mx += std::log(r.dt);
    my += std::log(r.error_l2);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& r : rows) {
    const double dx = std::log(r.dt) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(r.error_l2) - my);
  }
  if (sxx <= 0.0) throw SolverError(ErrorCode::DegenerateFit, "all dt values are equal");
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (const auto& r : rows) {
    const double res = std::log(r.error_l2) - (my + slope * (std::log(r.dt) - mx));
    rss += res * res;
  }
  return {slope, std::sqrt(rss / (n - 2.0) / sxx)};
}

double self_convergence_error(SchemeKind kind, double dt, const Field& u0, double t_final,
                              const SymbolSpec& spec, const FlowSettings& settings) {
  const auto run = [&](double step) {
    const SchemeSpec scheme{kind, step, t_final, std::numeric_limits<std::size_t>::max()};
    return evolve(scheme, spec, u0, settings).final();
  };
  return l2_norm(run(0.5 * dt) - run(0.25 * dt));
}

std::vector<double> dyadic_ladder(double t_final, double first_divisor, std::size_t count) {
  std::vector<double> dts;
  double dt = t_final / first_divisor;
  for (std::size_t i = 0; i < count; ++i, dt *= 0.5) dts.push_back(dt);
  return dts;
}

void StudySpec::validate() const {
  if (dts.size() < 4)
    throw SolverError(ErrorCode::InvalidArgument, "a study needs at least 4 time steps");
  for (std::size_t i = 1; i < dts.size(); ++i) {
    if (std::abs(dts[i - 1] / dts[i] - 2.0) > 1e-12)
      throw SolverError(ErrorCode::InvalidArgument, "consecutive time steps must halve");
  }
  if (dts.front() / dts.back() < 10.0 * (1.0 - 1e-12))
    throw SolverError(ErrorCode::InvalidArgument, "time steps must span at least one decade");
  for (double dt : dts) SchemeSpec{SchemeKind::LieXY, 0.25 * dt, t_final, 1}.validate();
  if (schemes.empty() || data.empty())
    throw SolverError(ErrorCode::InvalidArgument, "a study needs schemes and initial data");
  spec.validate();
}

StudySpec StudySpec::defaults(std::vector<SchemeKind> schemes) {
  StudySpec s;
  s.dts = dyadic_ladder(s.t_final, 50.0, 5);
  s.schemes = std::move(schemes);
  s.data = {InitialDataId::BumpSingle, InitialDataId::BumpDouble, InitialDataId::BumpAsym};
  return s;
}

std::optional<std::size_t> threads_from_env() {
  const char* v = std::getenv("FOWLER_SPLIT_THREADS");
  if (!v) return std::nullopt;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 0) return std::nullopt;
  return static_cast<std::size_t>(n);
}

double reference_gap(const StudySpec& study, const Field& u0) {
  const double dt_ref = *std::min_element(study.dts.begin(), study.dts.end()) / 16.0;
  FlowSettings settings = study.settings;
  const double cap = 0.5 * dt_ref;
  settings.max_substep = settings.max_substep > 0.0 ? std::min(settings.max_substep, cap) : cap;
  const Field a = reference_solution(study.spec, u0, study.t_final, dt_ref, settings);
  const Field b = reference_solution(study.spec, u0, study.t_final, 0.5 * dt_ref, settings);
  return l2_norm(a - b);
}

namespace {

// Runs job(i) for i in [0, count) on up to `threads` workers.
template <class Job>
void parallel_for(std::size_t count, std::size_t threads, Job job) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (std::size_t w = 0; w < std::min(threads, count); ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) job(i);
    });
  }
}

}  // namespace

std::vector<ConvergenceReport> run_study(const StudySpec& study) {
  study.validate();

  std::vector<Field> initial;
  for (InitialDataId id : study.data)
    initial.push_back(make_initial_data(id, study.grid, study.data_params));

  const std::size_t n_dt = study.dts.size();
  const std::size_t n_data = study.data.size();
  const std::size_t n_cells = study.schemes.size() * n_data * n_dt;

  struct Cell {
    double error = 0.0;
    std::optional<std::string> failure;
  };
  std::vector<Cell> cells(n_cells);
  std::vector<double> gaps(n_data, 0.0);
  std::vector<std::optional<std::string>> gap_failures(n_data);

  // Jobs [0, n_cells) are study cells; the rest are the floor-guard references.
  const std::size_t n_jobs = n_cells + (study.floor_guard ? n_data : 0);
  parallel_for(n_jobs, study.threads, [&](std::size_t job) {
    try {
      if (job >= n_cells) {
        const std::size_t d = job - n_cells;
        gaps[d] = reference_gap(study, initial[d]);
        return;
      }
      const std::size_t s = job / (n_data * n_dt);
      const std::size_t d = (job / n_dt) % n_data;
      const std::size_t i = job % n_dt;
      cells[job].error = self_convergence_error(study.schemes[s], study.dts[i], initial[d],
                                                study.t_final, study.spec, study.settings);
    } catch (const std::exception& e) {
      if (job >= n_cells)
        gap_failures[job - n_cells] = e.what();
      else
        cells[job].failure = e.what();
    }
  });

  std::vector<ConvergenceReport> reports;
  for (std::size_t s = 0; s < study.schemes.size(); ++s) {
    for (std::size_t d = 0; d < n_data; ++d) {
      ConvergenceReport r{study.schemes[s], study.data[d], {}, 0.0, 0.0, std::nullopt};
      for (std::size_t i = 0; i < n_dt; ++i) {
        const Cell& c = cells[(s * n_data + d) * n_dt + i];
        if (c.failure && !r.failure)
          r.failure = "dt = " + std::to_string(study.dts[i]) + ": " + *c.failure;
        r.rows.push_back({study.dts[i], c.error});
      }
      if (!r.failure) {
        try {
          const OrderFit fit = fit_order(r.rows);
          r.slope = fit.slope;
          r.slope_ci = fit.slope_ci;
        } catch (const SolverError& e) {
          r.failure = e.what();
        }
      }
      if (!r.failure) r.failure = gap_failures[d];
      if (r.failure) r.slope = r.slope_ci = std::numeric_limits<double>::quiet_NaN();
      reports.push_back(std::move(r));
    }
  }

  if (study.floor_guard) {
    for (const auto& r : reports) {
      if (!r.ok()) continue;
      double smallest = std::numeric_limits<double>::infinity();
      for (const auto& row : r.rows) smallest = std::min(smallest, row.error_l2);
      const double gap = gaps[static_cast<std::size_t>(
          std::find(study.data.begin(), study.data.end(), r.data) - study.data.begin())];
      if (smallest < 3.0 * gap) {
        std::ostringstream os;
        os << to_string(r.scheme) << "/" << to_string(r.data) << ": smallest error " << smallest
           << " is within 3x of the reference gap " << gap;
        throw SolverError(ErrorCode::SpatialFloorReached, os.str());
      }
    }
  }
  return reports;
}

}  // namespace fowler
