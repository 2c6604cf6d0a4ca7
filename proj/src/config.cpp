#include "fowler/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fowler/error.hpp"

namespace fowler::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " value '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("cannot parse " + what + " value '" + s + "'");
  return v;
}

}  // namespace

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void RunConfig::validate(Command cmd) const {
  try {
    grid();
  } catch (const SolverError& e) {
    throw ConfigError(e.what());
  }
  const bool eps_ok = cmd == Command::Symbol ? (epsilon >= 0.0 && epsilon < 1.0)
                                             : (epsilon > 0.0 && epsilon < 1.0);
  if (!eps_ok) throw ConfigError("epsilon must lie in (0, 1), got " + format_double(epsilon));
  if (!(lambda > 0.0 && lambda < 2.0))
    throw ConfigError("lambda must lie in (0, 2), got " + format_double(lambda));
  if ((a_I && !(*a_I > 0.0)) || (b_I && !(*b_I > 0.0)))
    throw ConfigError("a_I and b_I overrides must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw ConfigError("cfl-safety must lie in (0, 1]");
  if (substep_policy != "dyadic" && substep_policy != "ceil")
    throw ConfigError("substep-policy must be dyadic or ceil");
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  if (out.empty()) throw ConfigError("out must not be empty");

  switch (cmd) {
    case Command::Simulate: {
      if (!parse_scheme(scheme)) throw ConfigError("unknown scheme '" + scheme + "'");
      if (!parse_initial_data(init)) throw ConfigError("unknown initial data '" + init + "'");
      if (capture_every == 0) throw ConfigError("capture-every must be positive");
      try {
        scheme_spec().validate();
        make_initial_data(*parse_initial_data(init), grid(), data_params());
      } catch (const SolverError& e) {
        throw ConfigError(e.what());
      }
      break;
    }
    case Command::Converge: {
      for (const auto& s : split_list(schemes))
        if (!parse_scheme(s)) throw ConfigError("unknown scheme '" + s + "'");
      for (const auto& s : split_list(inits))
        if (!parse_initial_data(s)) throw ConfigError("unknown initial data '" + s + "'");
      try {
        const StudySpec study = study_spec();
        study.validate();
        for (auto id : study.data) make_initial_data(id, study.grid, study.data_params);
      } catch (const SolverError& e) {
        throw ConfigError(e.what());
      }
      break;
    }
    case Command::Symbol: {
      xi_values();
      try {
        symbol_spec();
      } catch (const SolverError& e) {
        throw ConfigError(e.what());
      }
      break;
    }
  }
}

SpectralGrid RunConfig::grid() const { return SpectralGrid(n, length); }

SymbolSpec RunConfig::symbol_spec() const {
  const SymbolSpec base = SymbolSpec::make(epsilon, lambda);
  return SymbolSpec::make(epsilon, lambda, a_I.value_or(base.a_I), b_I.value_or(base.b_I));
}

FlowSettings RunConfig::flow_settings() const {
  return {cfl_safety, substep_policy == "ceil" ? SubstepPolicy::Ceil : SubstepPolicy::Dyadic, 0.0};
}

SchemeSpec RunConfig::scheme_spec() const {
  return {parse_scheme(scheme).value_or(SchemeKind::StrangXYX), dt, t_final, capture_every};
}

InitialDataParams RunConfig::data_params() const { return {amplitude, width, center}; }

StudySpec RunConfig::study_spec() const {
  StudySpec s;
  s.t_final = t_final;
  s.dts = dyadic_ladder(t_final, t_final / dt, levels);
  for (const auto& name : split_list(schemes))
    if (auto k = parse_scheme(name)) s.schemes.push_back(*k);
  for (const auto& name : split_list(inits))
    if (auto id = parse_initial_data(name)) s.data.push_back(*id);
  s.data_params = data_params();
  s.grid = grid();
  s.spec = symbol_spec();
  s.settings = flow_settings();
  s.floor_guard = floor_guard;
  return s;
}

std::vector<double> RunConfig::xi_values() const {
  std::vector<double> values;
  if (xi.find(':') != std::string::npos) {
    // lo:hi:count
    std::vector<std::string> parts;
    std::stringstream ss(xi);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(trim(p));
    if (parts.size() != 3) throw ConfigError("xi range must be lo:hi:count");
    const double lo = parse_number(parts[0], "xi");
    const double hi = parse_number(parts[1], "xi");
    const double count = parse_number(parts[2], "xi count");
    if (!(count >= 1.0) || count != std::floor(count))
      throw ConfigError("xi count must be a positive integer");
    const auto n = static_cast<std::size_t>(count);
    for (std::size_t i = 0; i < n; ++i)
      values.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                              static_cast<double>(n - 1));
  } else {
    for (const auto& item : split_list(xi)) values.push_back(parse_number(item, "xi"));
  }
  if (values.empty()) throw ConfigError("no xi values requested");
  for (double v : values)
    if (!std::isfinite(v)) throw ConfigError("xi values must be finite");
  return values;
}

std::map<std::string, std::string> RunConfig::echo() const {
  std::map<std::string, std::string> m{
      {"n", std::to_string(n)},
      {"length", format_double(length)},
      {"epsilon", format_double(epsilon)},
      {"lambda", format_double(lambda)},
      {"scheme", scheme},
      {"dt", format_double(dt)},
      {"t-final", format_double(t_final)},
      {"capture-every", std::to_string(capture_every)},
      {"cfl-safety", format_double(cfl_safety)},
      {"substep-policy", substep_policy},
      {"init", init},
      {"amplitude", format_double(amplitude)},
      {"width", format_double(width)},
      {"center", format_double(center)},
      {"out", out},
      {"format", format},
      {"seed", std::to_string(seed)},
      {"schemes", schemes},
      {"inits", inits},
      {"levels", std::to_string(levels)},
      {"floor-guard", floor_guard ? "true" : "false"},
      {"xi", xi},
  };
  if (a_I) m["a-i"] = format_double(*a_I);
  if (b_I) m["b-i"] = format_double(*b_I);
  return m;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::map<std::string, std::string> m;
  if (const auto first = text.find_first_not_of(" \t\r\n");
      first != std::string::npos && text[first] == '{') {
    try {
      const auto j = nlohmann::json::parse(text);
      const auto& cfg = j.contains("config") ? j.at("config") : j;
      for (const auto& [k, v] : cfg.items()) m[k] = v.is_string() ? v.get<std::string>() : v.dump();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("invalid JSON config '" + path + "': " + e.what());
    }
    return m;
  }

  std::string line;
  std::size_t lineno = 0;
  std::istringstream lines(text);
  while (std::getline(lines, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    m[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return m;
}

}  // namespace fowler::cli
