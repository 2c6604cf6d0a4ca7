#include <cmath>
#include <numbers>
#include <string>

#include "fowler/convergence.hpp"
#include "fowler/error.hpp"

namespace fowler {

std::string_view to_string(InitialDataId id) {
  switch (id) {
    case InitialDataId::BumpSingle: return "bump_single";
    case InitialDataId::BumpDouble: return "bump_double";
    case InitialDataId::BumpAsym: return "bump_asym";
    case InitialDataId::Gaussian: return "gaussian";
    case InitialDataId::Sine: return "sine";
    case InitialDataId::Constant: return "constant";
  }
  return "unknown";
}

std::optional<InitialDataId> parse_initial_data(std::string_view name) {
  for (InitialDataId id : {InitialDataId::BumpSingle, InitialDataId::BumpDouble,
                           InitialDataId::BumpAsym, InitialDataId::Gaussian, InitialDataId::Sine,
                           InitialDataId::Constant})
    if (to_string(id) == name) return id;
  return std::nullopt;
}

double bump(double x, double center, double width, double amplitude) {
  const double r = std::abs(x - center) / width;
  if (r >= 1.0) return 0.0;
  return amplitude * std::exp(-1.0 / (1.0 - r * r));
}

namespace {

void check_support(const SpectralGrid& grid, double lo, double hi) {
  const double margin = 0.25 * grid.length();
  const double slack = 1e-12 * grid.length();
  if (lo < margin - slack || hi > grid.length() - margin + slack)
    throw SolverError(ErrorCode::SupportTooWide,
                      "support [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] leaves less than length/4 on a side of [0, " +
                          std::to_string(grid.length()) + ")");
}

}  // namespace

Field make_initial_data(InitialDataId id, const SpectralGrid& grid,
                        const InitialDataParams& params) {
  const double L = grid.length();
  const double amp = params.amplitude > 0.0 ? params.amplitude : std::numbers::e;
  const double c = params.center >= 0.0 ? params.center : 0.5 * L;

  switch (id) {
    case InitialDataId::BumpSingle: {
      const double w = params.width > 0.0 ? params.width : 0.5;
      check_support(grid, c - w, c + w);
      return Field::sample(grid, [=](double x) { return bump(x, c, w, amp); });
    }
    case InitialDataId::BumpDouble:
    case InitialDataId::BumpAsym: {
      const double w = params.width > 0.0 ? params.width : 0.4;
      const double offset = 1.5 * w;
      check_support(grid, c - offset - w, c + offset + w);
      const double second = id == InitialDataId::BumpAsym ? 0.5 * amp : amp;
      return Field::sample(grid, [=](double x) {
        return bump(x, c - offset, w, amp) + bump(x, c + offset, w, second);
      });
    }
    case InitialDataId::Gaussian: {
      const double w = params.width > 0.0 ? params.width : 0.25;
      const double a = params.amplitude > 0.0 ? params.amplitude : 1.0;
      return Field::sample(grid, [=](double x) {
        const double z = (x - c) / w;
        return a * std::exp(-z * z);
      });
    }
    case InitialDataId::Sine: {
      const double a = params.amplitude > 0.0 ? params.amplitude : 1.0;
      return Field::sample(grid,
                           [=](double x) { return a * std::sin(2.0 * std::numbers::pi * x / L); });
    }
    case InitialDataId::Constant: {
      const double a = params.amplitude > 0.0 ? params.amplitude : 1.0;
      return Field(grid, std::vector<double>(grid.size(), a));
    }
  }
  throw SolverError(ErrorCode::InvalidArgument, "unknown initial data id");
}

}  // namespace fowler
