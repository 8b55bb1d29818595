#include "cli_config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qee::cli {

using nlohmann::json;

GridSpec GridConfig::to_grid_spec() const {
  GridSpec spec;
  spec.tau_min_us = tau_min_us;
  spec.tau_max_us = tau_max_us;
  spec.tau_steps = tau_steps;
  spec.t_min_us = t_min_us;
  spec.t_max_us = t_max_us;
  spec.t_steps = t_steps;
  spec.diagonal = diagonal;
  return spec;
}

NoiseProcess NoiseConfig::to_process(std::uint64_t seed) const {
  NoiseProcess process;
  if (kind == "ornstein-uhlenbeck") {
    process.kind = NoiseKind::ornstein_uhlenbeck;
  } else if (kind == "random-telegraph") {
    process.kind = NoiseKind::random_telegraph;
  } else {
    throw ValidationError("noise kind must be ornstein-uhlenbeck or random-telegraph, got '" +
                          kind + "'");
  }
  process.sigma_rad_us = sigma_rad_us;
  process.corr_time_us = corr_time_us;
  process.mean_rad_us = mean_rad_us;
  process.seed = seed;
  return process;
}

LatticeConfig RunConfig::to_lattice_config() const {
  LatticeConfig cfg;
  cfg.lattice_constant_nm = lattice.lattice_constant_nm;
  cfg.bath_radius_nm = lattice.bath_radius_nm;
  cfg.abundance = lattice.abundance;
  cfg.exclusion_radius_nm = lattice.exclusion_radius_nm;
  cfg.seed = seed;
  return cfg;
}

ContactModel RunConfig::to_contact_model() const {
  ContactModel model;
  model.enabled = contact.enabled;
  model.amplitude_rad_us = contact.amplitude_rad_us;
  model.decay_length_nm = contact.decay_length_nm;
  model.cutoff_radius_nm = contact.cutoff_radius_nm;
  return model;
}

double parse_field(const std::string& text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(compact, &consumed);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse field value '" + text + "'");
  }
  std::string unit = compact.substr(consumed);
  std::transform(unit.begin(), unit.end(), unit.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (unit == "g" || unit == "gauss") return gauss_to_tesla(value);
  if (unit == "t" || unit == "tesla") return value;
  throw ValidationError("field needs an explicit unit suffix (G/gauss or T/tesla), got '" +
                        text + "'");
}

namespace {

// Strict key handling: a typo in a config file is an error, not a default.
void check_keys(const json& node, std::initializer_list<const char*> allowed,
                const std::string& scope) {
  for (const auto& item : node.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end()) {
      throw ValidationError("unknown config key '" + scope + item.key() + "'");
    }
  }
}

template <typename T>
void read(const json& node, const char* key, T& out) {
  if (node.contains(key)) {
    try {
      out = node.at(key).get<T>();
    } catch (const json::exception&) {
      throw ValidationError(std::string("config key '") + key + "' has the wrong type");
    }
  }
}

}  // namespace

RunConfig parse_config_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw ValidationError("config root must be a JSON object");
  }
  check_keys(root,
             {"seed", "field", "b_z_tesla", "gamma_e_ghz_per_t", "gamma_n_mhz_per_t",
              "lattice", "contact", "polarization", "grid", "noise", "qee_tolerance",
              "threads", "bath", "out"},
             "");

  RunConfig config;
  read(root, "seed", config.seed);
  if (root.contains("field")) {
    config.b_z_tesla = parse_field(root.at("field").get<std::string>());
  }
  read(root, "b_z_tesla", config.b_z_tesla);
  read(root, "gamma_e_ghz_per_t", config.gamma_e_ghz_per_t);
  read(root, "gamma_n_mhz_per_t", config.gamma_n_mhz_per_t);
  read(root, "qee_tolerance", config.qee_tolerance);
  read(root, "threads", config.threads);
  read(root, "bath", config.bath_path);
  read(root, "out", config.out_path);

  if (root.contains("lattice")) {
    const json& node = root.at("lattice");
    check_keys(node,
               {"lattice_constant_nm", "bath_radius_nm", "abundance", "exclusion_radius_nm"},
               "lattice.");
    read(node, "lattice_constant_nm", config.lattice.lattice_constant_nm);
    read(node, "bath_radius_nm", config.lattice.bath_radius_nm);
    read(node, "abundance", config.lattice.abundance);
    read(node, "exclusion_radius_nm", config.lattice.exclusion_radius_nm);
  }
  if (root.contains("contact")) {
    const json& node = root.at("contact");
    check_keys(node, {"enabled", "amplitude_rad_us", "decay_length_nm", "cutoff_radius_nm"},
               "contact.");
    read(node, "enabled", config.contact.enabled);
    read(node, "amplitude_rad_us", config.contact.amplitude_rad_us);
    read(node, "decay_length_nm", config.contact.decay_length_nm);
    read(node, "cutoff_radius_nm", config.contact.cutoff_radius_nm);
  }
  if (root.contains("polarization")) {
    const json& node = root.at("polarization");
    check_keys(node, {"r_p_nm", "p_inner"}, "polarization.");
    read(node, "r_p_nm", config.polarization.r_p_nm);
    read(node, "p_inner", config.polarization.p_inner);
  }
  if (root.contains("grid")) {
    const json& node = root.at("grid");
    check_keys(node,
               {"tau_min_us", "tau_max_us", "tau_steps", "t_min_us", "t_max_us", "t_steps",
                "diagonal"},
               "grid.");
    read(node, "tau_min_us", config.grid.tau_min_us);
    read(node, "tau_max_us", config.grid.tau_max_us);
    read(node, "tau_steps", config.grid.tau_steps);
    read(node, "t_min_us", config.grid.t_min_us);
    read(node, "t_max_us", config.grid.t_max_us);
    read(node, "t_steps", config.grid.t_steps);
    read(node, "diagonal", config.grid.diagonal);
  }
  if (root.contains("noise")) {
    const json& node = root.at("noise");
    check_keys(node,
               {"kind", "sigma_rad_us", "corr_time_us", "mean_rad_us", "dt_us", "horizon_us",
                "trajectories", "tau_us"},
               "noise.");
    read(node, "kind", config.noise.kind);
    read(node, "sigma_rad_us", config.noise.sigma_rad_us);
    read(node, "corr_time_us", config.noise.corr_time_us);
    read(node, "mean_rad_us", config.noise.mean_rad_us);
    read(node, "dt_us", config.noise.dt_us);
    read(node, "horizon_us", config.noise.horizon_us);
    read(node, "trajectories", config.noise.trajectories);
    read(node, "tau_us", config.noise.tau_us);
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str());
}

std::string config_to_json(const RunConfig& config) {
  json root;
  root["seed"] = config.seed;
  root["b_z_tesla"] = config.b_z_tesla;
  root["gamma_e_ghz_per_t"] = config.gamma_e_ghz_per_t;
  root["gamma_n_mhz_per_t"] = config.gamma_n_mhz_per_t;
  root["lattice"] = {{"lattice_constant_nm", config.lattice.lattice_constant_nm},
                     {"bath_radius_nm", config.lattice.bath_radius_nm},
                     {"abundance", config.lattice.abundance},
                     {"exclusion_radius_nm", config.lattice.exclusion_radius_nm}};
  root["contact"] = {{"enabled", config.contact.enabled},
                     {"amplitude_rad_us", config.contact.amplitude_rad_us},
                     {"decay_length_nm", config.contact.decay_length_nm},
                     {"cutoff_radius_nm", config.contact.cutoff_radius_nm}};
  root["polarization"] = {{"r_p_nm", config.polarization.r_p_nm},
                          {"p_inner", config.polarization.p_inner}};
  root["grid"] = {{"tau_min_us", config.grid.tau_min_us},
                  {"tau_max_us", config.grid.tau_max_us},
                  {"tau_steps", config.grid.tau_steps},
                  {"t_min_us", config.grid.t_min_us},
                  {"t_max_us", config.grid.t_max_us},
                  {"t_steps", config.grid.t_steps},
                  {"diagonal", config.grid.diagonal}};
  root["noise"] = {{"kind", config.noise.kind},
                   {"sigma_rad_us", config.noise.sigma_rad_us},
                   {"corr_time_us", config.noise.corr_time_us},
                   {"mean_rad_us", config.noise.mean_rad_us},
                   {"dt_us", config.noise.dt_us},
                   {"horizon_us", config.noise.horizon_us},
                   {"trajectories", config.noise.trajectories},
                   {"tau_us", config.noise.tau_us}};
  root["qee_tolerance"] = config.qee_tolerance;
  root["threads"] = config.threads;
  root["bath"] = config.bath_path;
  root["out"] = config.out_path;
  return root.dump(2) + "\n";
}

void write_config(const std::filesystem::path& path, const RunConfig& config) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot open config output " + path.string());
  }
  out << config_to_json(config);
}

}  // namespace qee::cli
