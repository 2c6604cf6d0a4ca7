#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fowler/convergence.hpp"

namespace fowler::cli {

/// Invalid user configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Simulate, Converge, Symbol };

/// Every knob of the three subcommands. Keys of the flat key=value config file
/// are the long flag names without the leading dashes.
struct RunConfig {
  // grid
  std::size_t n = 1024;
  double length = 4.0;
  // symbols
  double epsilon = 0.5;
  double lambda = 4.0 / 3.0;
  std::optional<double> a_I;
  std::optional<double> b_I;
  // time stepping
  std::string scheme = "strang_xyx";
  double dt = 2e-3;  // for converge: the largest step of the ladder
  double t_final = 0.1;
  std::size_t capture_every = 10;
  double cfl_safety = 0.9;
  std::string substep_policy = "dyadic";
  // initial data
  std::string init = "bump_single";
  double amplitude = 0.0;
  double width = 0.0;
  double center = -1.0;
  // output
  std::string out = "fowler_run";
  std::string format = "csv";
  long seed = 0;  // reserved; runs are deterministic
  // converge
  std::string schemes = "lie_xy,lie_yx,strang_xyx,strang_yxy";
  std::string inits = "bump_single,bump_double,bump_asym";
  std::size_t levels = 5;
  bool floor_guard = true;
  // symbol
  std::string xi = "0,1";

  /// Throws ConfigError. Symbol dumps also accept epsilon = 0 (eta = 1).
  void validate(Command cmd) const;

  SpectralGrid grid() const;
  SymbolSpec symbol_spec() const;
  FlowSettings flow_settings() const;
  SchemeSpec scheme_spec() const;
  InitialDataParams data_params() const;
  StudySpec study_spec() const;
  std::vector<double> xi_values() const;

  /// Flat key -> value echo; feeding it back as a config reproduces the run.
  std::map<std::string, std::string> echo() const;
};

/// Parses a flat key=value file ('#' starts a comment) or, when the file is a
/// JSON object, the string map under its "config" key.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Splits "a,b,c" on commas, dropping empty items.
std::vector<std::string> split_list(const std::string& s);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

}  // namespace fowler::cli
