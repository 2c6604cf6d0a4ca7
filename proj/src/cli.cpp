#include "fowler/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "fowler/error.hpp"

namespace fowler::cli {

namespace {

using nlohmann::json;

json config_json(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.echo()) j[k] = v;
  return j;
}

void ensure_parent(const std::filesystem::path& p) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  ensure_parent(p);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_error(const RunConfig& cfg, const std::string& command, const SolverError& e,
                 std::ostream& err) {
  const json j{{"command", command},
               {"status", "error"},
               {"error", std::string(to_string(e.code()))},
               {"message", e.what()},
               {"config", config_json(cfg)}};
  write_text(cfg.out + ".error.json", dump(j));
  err << "error: " << e.what() << "\n";
}

void register_options(CLI::App* app, RunConfig& cfg, double& a_I, double& b_I,
                      std::string& config_path) {
  app->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app->add_option("--config", config_path, "flat key=value file or JSON sidecar; flags override it");
  app->add_option("--n", cfg.n, "number of grid nodes (power of two >= 16)");
  app->add_option("--length", cfg.length, "periodic domain length");
  app->add_option("--epsilon", cfg.epsilon, "Burgers viscosity; the linear flow gets 1 - epsilon");
  app->add_option("--lambda", cfg.lambda, "order of the nonlocal multiplier");
  app->add_option("--a-i", a_I, "override a_I");
  app->add_option("--b-i", b_I, "override b_I");
  app->add_option("--scheme", cfg.scheme, "lie_xy | lie_yx | strang_xyx | strang_yxy");
  app->add_option("--dt", cfg.dt, "splitting step (converge: largest step of the ladder)");
  app->add_option("--t-final", cfg.t_final, "final time");
  app->add_option("--capture-every", cfg.capture_every, "snapshot stride in steps");
  app->add_option("--cfl-safety", cfg.cfl_safety, "safety factor on the CFL-Peclet bound");
  app->add_option("--substep-policy", cfg.substep_policy, "dyadic | ceil");
  app->add_option("--init", cfg.init, "bump_single | bump_double | bump_asym | gaussian | sine | constant");
  app->add_option("--amplitude", cfg.amplitude, "initial data amplitude (0: default)");
  app->add_option("--width", cfg.width, "initial data width (0: default)");
  app->add_option("--center", cfg.center, "initial data center (<0: length/2)");
  app->add_option("--out", cfg.out, "output path stem");
  app->add_option("--format", cfg.format, "csv | json");
  app->add_option("--seed", cfg.seed, "reserved; runs are deterministic");
  app->add_option("--schemes", cfg.schemes, "comma-separated schemes for converge");
  app->add_option("--inits", cfg.inits, "comma-separated initial data for converge");
  app->add_option("--levels", cfg.levels, "number of steps in the dt ladder");
  app->add_option("--floor-guard", cfg.floor_guard, "abort when errors reach the reference gap");
  app->add_option("--xi", cfg.xi, "symbol frequencies: list a,b,c or range lo:hi:count");
}

// Config file entries go first so that explicit flags (TakeLast) override them.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.size() < 2) return args;
  std::vector<std::string> expanded(args.begin(), args.begin() + 2);
  for (const auto& [k, v] : read_config_file(path)) {
    expanded.push_back("--" + k);
    expanded.push_back(v);
  }
  expanded.insert(expanded.end(), args.begin() + 2, args.end());
  return expanded;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SpectralGrid grid = cfg.grid();
  const SymbolSpec spec = cfg.symbol_spec();
  const SchemeSpec scheme = cfg.scheme_spec();
  const Field u0 = make_initial_data(*parse_initial_data(cfg.init), grid, cfg.data_params());

  Trajectory traj;
  try {
    traj = evolve(scheme, spec, u0, cfg.flow_settings());
  } catch (const SolverError& e) {
    write_error(cfg, "simulate", e, err);
    return kRuntime;
  }

  std::ostringstream data;
  data.precision(17);
  std::string data_path;
  if (cfg.format == "csv") {
    data_path = cfg.out + ".csv";
    data << "t,x,u\n";
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s)
      for (std::size_t j = 0; j < grid.size(); ++j)
        data << traj.times[s] << ',' << grid.node(j) << ',' << traj.snapshots[s][j] << '\n';
  } else {
    data_path = cfg.out + ".json";
    json x = json::array(), u = json::array();
    for (std::size_t j = 0; j < grid.size(); ++j) x.push_back(grid.node(j));
    for (const auto& snap : traj.snapshots)
      u.push_back(std::vector<double>(snap.values().begin(), snap.values().end()));
    data << dump(json{{"x", x}, {"times", traj.times}, {"u", u}});
  }
  write_text(data_path, data.str());

  const json meta{{"command", "simulate"},
                  {"status", "ok"},
                  {"config", config_json(cfg)},
                  {"a_I", spec.a_I},
                  {"b_I", spec.b_I},
                  {"alpha0", alpha0(spec)},
                  {"beta0", beta0(spec)},
                  {"n_steps", scheme.n_steps()},
                  {"burgers_substeps", traj.burgers_substeps},
                  {"times", traj.times},
                  {"l2_history", traj.l2_history},
                  {"data_file", std::filesystem::path(data_path).filename().string()}};
  write_text(cfg.out + ".meta.json", dump(meta));
  out << "wrote " << data_path << " and " << cfg.out << ".meta.json (" << traj.snapshots.size()
      << " snapshots)\n";
  return kOk;
}

int cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  StudySpec study = cfg.study_spec();
  study.threads = threads_from_env().value_or(std::thread::hardware_concurrency());

  std::vector<ConvergenceReport> reports;
  try {
    reports = run_study(study);
  } catch (const SolverError& e) {
    write_error(cfg, "converge", e, err);
    return e.code() == ErrorCode::SpatialFloorReached ? kStudyQuality : kRuntime;
  }

  bool partial = false;
  json entries = json::array();
  for (const auto& r : reports) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "dt,error_l2\n";
    json rows = json::array();
    for (const auto& row : r.rows) {
      csv << row.dt << ',' << row.error_l2 << '\n';
      rows.push_back({{"dt", row.dt}, {"error_l2", row.error_l2}});
    }
    const std::string name =
        cfg.out + "_" + std::string(to_string(r.scheme)) + "_" + std::string(to_string(r.data)) +
        ".csv";
    write_text(name, csv.str());

    json e{{"scheme", std::string(to_string(r.scheme))},
           {"data", std::string(to_string(r.data))},
           {"rows", rows},
           {"csv", std::filesystem::path(name).filename().string()}};
    if (r.ok()) {
      e["slope"] = r.slope;
      e["slope_ci"] = r.slope_ci;
      e["status"] = "ok";
      out << to_string(r.scheme) << " / " << to_string(r.data) << ": slope " << r.slope
          << " +- " << r.slope_ci << "\n";
    } else {
      partial = true;
      e["slope"] = nullptr;
      e["slope_ci"] = nullptr;
      e["status"] = "failed";
      e["failure"] = *r.failure;
      err << to_string(r.scheme) << " / " << to_string(r.data) << ": FAILED " << *r.failure
          << "\n";
    }
    entries.push_back(e);
  }
  const json summary{{"command", "converge"},
                     {"status", partial ? "partial" : "ok"},
                     {"partial", partial},
                     {"config", config_json(cfg)},
                     {"t_final", study.t_final},
                     {"dts", study.dts},
                     {"reports", entries}};
  write_text(cfg.out + "_summary.json", dump(summary));
  return partial ? kRuntime : kOk;
}

int cmd_symbol(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const SymbolSpec spec = cfg.symbol_spec();
  const double a0 = alpha0(spec);
  const double b0 = beta0(spec);
  json entries = json::array();
  for (double xi : cfg.xi_values()) {
    const Complex psi = symbol_psi(spec, xi);
    const Complex phi = symbol_phi(spec, xi);
    entries.push_back({{"xi", xi},
                       {"re_psi", psi.real()},
                       {"im_psi", psi.imag()},
                       {"re_phi", phi.real()},
                       {"im_phi", phi.imag()},
                       {"alpha0", a0},
                       {"beta0", b0},
                       {"a_I", spec.a_I},
                       {"b_I", spec.b_I}});
  }
  out << dump(json{{"epsilon", spec.epsilon},
                   {"eta", spec.eta()},
                   {"lambda", spec.lambda},
                   {"a_I", spec.a_I},
                   {"b_I", spec.b_I},
                   {"alpha0", a0},
                   {"beta0", b0},
                   {"symbols", entries}});
  return kOk;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Operator-splitting solver for the nonlocal Fowler dune equation"};
  app.require_subcommand(1);

  RunConfig cfg;
  double a_I = 0.0, b_I = 0.0;
  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "run one splitting simulation");
  auto* converge = app.add_subcommand("converge", "self-convergence study of the splitting order");
  auto* symbol = app.add_subcommand("symbol", "dump Fourier symbols and growth constants as JSON");
  for (auto* sub : {simulate, converge, symbol}) register_options(sub, cfg, a_I, b_I, config_path);

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return e.get_exit_code() == 0 ? kOk : kConfig;
  }

  auto* active = app.get_subcommands().front();
  if (active->count("--a-i") > 0) cfg.a_I = a_I;
  if (active->count("--b-i") > 0) cfg.b_I = b_I;

  const Command cmd = active == simulate   ? Command::Simulate
                      : active == converge ? Command::Converge
                                           : Command::Symbol;
  try {
    cfg.validate(cmd);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  }

  try {
    switch (cmd) {
      case Command::Simulate: return cmd_simulate(cfg, out, err);
      case Command::Converge: return cmd_converge(cfg, out, err);
      case Command::Symbol: return cmd_symbol(cfg, out, err);
    }
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kOk;
}

}  // namespace fowler::cli
