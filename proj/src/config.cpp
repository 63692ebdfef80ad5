#include "icgrad/config.hpp"

#include <set>

#include <json.hpp>

#include "icgrad/errors.hpp"
#include "icgrad/io.hpp"
#include "icgrad/quantum.hpp"

namespace icgrad {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& path, const std::string& why) {
  throw ArgumentError("config: " + path + " " + why);
}

void check_keys(const json& j, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!j.is_object()) bad_field(path, "must be an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key))
      throw ArgumentError("config: unknown key '" + key + "' in " + path);
}

template <class T>
T get_field(const json& j, const std::string& path, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad_field(path + "." + key, "has the wrong type");
  }
}

}  // namespace

void validate_config(const ExperimentConfig& c) {
  if (c.repetitions < 1) bad_field("repetitions", "must be >= 1");
  if (c.jobs < 1) bad_field("jobs", "must be >= 1");
  if (c.output_dir.empty()) bad_field("output_dir", "must be non-empty");

  if (c.landscape.type == "quantum") {
    AnsatzSpec spec{c.landscape.qubits, c.landscape.layers};
    try {
      spec.validate();
      parse_observable(c.landscape.observable);
    } catch (const ArgumentError& e) {
      bad_field("landscape", std::string("invalid: ") + e.what());
    }
  } else if (c.landscape.type == "analytic") {
    try {
      make_analytic_landscape(c.landscape.kind, c.landscape.coefficients);
    } catch (const ArgumentError& e) {
      bad_field("landscape", std::string("invalid: ") + e.what());
    }
  } else {
    bad_field("landscape.type", "must be 'quantum' or 'analytic'");
  }

  if (!(c.walk.step_size > 0.0)) bad_field("walk.step_size", "must be > 0");
  if (c.walk.num_steps != 0 && c.walk.num_steps < 2)
    bad_field("walk.num_steps", "must be 0 (auto) or >= 2");
  if (c.walk.mode != "isotropic" && c.walk.mode != "walk-over-sample")
    bad_field("walk.mode", "must be 'isotropic' or 'walk-over-sample'");
  if (c.walk.sample_multiplier < 1) bad_field("walk.sample_multiplier", "must be >= 1");

  if (!(c.ic.eta > 0.0 && c.ic.eta <= 1.0 / 6.0 + 1e-12))
    bad_field("ic.eta", "must be in (0, 1/6]");
  if (c.ic.grid_points < 2) bad_field("ic.grid_points", "must be >= 2");
  for (std::size_t i = 0; i < c.ic.epsilon_grid.size(); ++i) {
    if (!(c.ic.epsilon_grid[i] >= 0.0))
      bad_field("ic.epsilon_grid", "values must be >= 0");
    if (i > 0 && !(c.ic.epsilon_grid[i] > c.ic.epsilon_grid[i - 1]))
      bad_field("ic.epsilon_grid", "must be strictly increasing");
  }

  if (c.scan.qubits.empty()) bad_field("scan.qubits", "must be non-empty");
  for (int n : c.scan.qubits)
    if (n < 2 || n > 16) bad_field("scan.qubits", "entries must be in [2, 16]");
  if (c.scan.layers.empty()) bad_field("scan.layers", "must be non-empty");
  for (int l : c.scan.layers)
    if (l < 1) bad_field("scan.layers", "entries must be >= 1");
  if (c.scan.observables.empty()) bad_field("scan.observables", "must be non-empty");
  for (const auto& o : c.scan.observables)
    if (o != "local" && o != "global")
      bad_field("scan.observables", "entries must be 'local' or 'global'");
}

std::string config_to_json_text(const ExperimentConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["repetitions"] = c.repetitions;
  j["jobs"] = c.jobs;
  j["output_dir"] = c.output_dir;
  j["dump_theta"] = c.dump_theta;
  j["landscape"] = {{"type", c.landscape.type},
                    {"qubits", c.landscape.qubits},
                    {"layers", c.landscape.layers},
                    {"observable", c.landscape.observable},
                    {"kind", c.landscape.kind},
                    {"coefficients", c.landscape.coefficients}};
  j["walk"] = {{"step_size", c.walk.step_size},
               {"num_steps", c.walk.num_steps},
               {"mode", c.walk.mode},
               {"sample_multiplier", c.walk.sample_multiplier},
               {"start", c.walk.start}};
  j["ic"] = {{"eta", c.ic.eta},
             {"grid_points", c.ic.grid_points},
             {"epsilon_grid", c.ic.epsilon_grid}};
  j["scan"] = {{"qubits", c.scan.qubits},
               {"layers", c.scan.layers},
               {"observables", c.scan.observables}};
  return j.dump(2) + "\n";
}

ExperimentConfig config_from_json_text(const std::string& text,
                                       const std::string& source_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source_name + ": " + e.what());
  }
  check_keys(j, source_name,
             {"seed", "repetitions", "jobs", "output_dir", "dump_theta", "landscape",
              "walk", "ic", "scan"});

  ExperimentConfig c;
  c.seed = get_field<std::uint64_t>(j, source_name, "seed", c.seed);
  c.repetitions = get_field<int>(j, source_name, "repetitions", c.repetitions);
  c.jobs = get_field<int>(j, source_name, "jobs", c.jobs);
  c.output_dir = get_field<std::string>(j, source_name, "output_dir", c.output_dir);
  c.dump_theta = get_field<bool>(j, source_name, "dump_theta", c.dump_theta);

  if (j.contains("landscape")) {
    const json& l = j.at("landscape");
    check_keys(l, "landscape",
               {"type", "qubits", "layers", "observable", "kind", "coefficients"});
    c.landscape.type = get_field<std::string>(l, "landscape", "type", c.landscape.type);
    c.landscape.qubits = get_field<int>(l, "landscape", "qubits", c.landscape.qubits);
    c.landscape.layers = get_field<int>(l, "landscape", "layers", c.landscape.layers);
    c.landscape.observable =
        get_field<std::string>(l, "landscape", "observable", c.landscape.observable);
    c.landscape.kind = get_field<std::string>(l, "landscape", "kind", c.landscape.kind);
    c.landscape.coefficients = get_field<std::vector<double>>(
        l, "landscape", "coefficients", c.landscape.coefficients);
  }
  if (j.contains("walk")) {
    const json& w = j.at("walk");
    check_keys(w, "walk",
               {"step_size", "num_steps", "mode", "sample_multiplier", "start"});
    c.walk.step_size = get_field<double>(w, "walk", "step_size", c.walk.step_size);
    c.walk.num_steps = get_field<int>(w, "walk", "num_steps", c.walk.num_steps);
    c.walk.mode = get_field<std::string>(w, "walk", "mode", c.walk.mode);
    c.walk.sample_multiplier =
        get_field<int>(w, "walk", "sample_multiplier", c.walk.sample_multiplier);
    c.walk.start = get_field<std::vector<double>>(w, "walk", "start", c.walk.start);
  }
  if (j.contains("ic")) {
    const json& i = j.at("ic");
    check_keys(i, "ic", {"eta", "grid_points", "epsilon_grid"});
    c.ic.eta = get_field<double>(i, "ic", "eta", c.ic.eta);
    c.ic.grid_points = get_field<int>(i, "ic", "grid_points", c.ic.grid_points);
    c.ic.epsilon_grid =
        get_field<std::vector<double>>(i, "ic", "epsilon_grid", c.ic.epsilon_grid);
  }
  if (j.contains("scan")) {
    const json& s = j.at("scan");
    check_keys(s, "scan", {"qubits", "layers", "observables"});
    c.scan.qubits = get_field<std::vector<int>>(s, "scan", "qubits", c.scan.qubits);
    c.scan.layers = get_field<std::vector<int>>(s, "scan", "layers", c.scan.layers);
    c.scan.observables = get_field<std::vector<std::string>>(s, "scan", "observables",
                                                             c.scan.observables);
  }
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return config_from_json_text(read_text_file(path), path.string());
}

std::unique_ptr<CostFunction> make_landscape(const LandscapeConfig& config) {
  if (config.type == "quantum") {
    AnsatzSpec spec{config.qubits, config.layers};
    return quantum_cost(spec, parse_observable(config.observable));
  }
  if (config.type == "analytic")
    return make_analytic_landscape(config.kind, config.coefficients);
  throw ArgumentError("config: landscape.type must be 'quantum' or 'analytic'");
}

}  // namespace icgrad
