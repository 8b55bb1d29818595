#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "qee/nv_bath.hpp"
#include "qee/noise.hpp"
#include "qee/protocol.hpp"

namespace qee::cli {

struct GridConfig {
  double tau_min_us = 0.0;
  double tau_max_us = 40.0;
  int tau_steps = 200;
  double t_min_us = 0.0;
  double t_max_us = 40.0;
  int t_steps = 200;
  bool diagonal = false;

  GridSpec to_grid_spec() const;
  bool operator==(const GridConfig&) const = default;
};

struct PolarizationConfig {
  double r_p_nm = 0.9;
  double p_inner = 1.0;
  bool operator==(const PolarizationConfig&) const = default;
};

struct NoiseConfig {
  std::string kind = "ornstein-uhlenbeck";  // or "random-telegraph"
  double sigma_rad_us = 0.5;
  double corr_time_us = 1.0;
  double mean_rad_us = 0.0;
  double dt_us = 0.05;
  double horizon_us = 20.0;
  int trajectories = 10000;
  double tau_us = 0.0;

  NoiseProcess to_process(std::uint64_t seed) const;
  bool operator==(const NoiseConfig&) const = default;
};

struct LatticeSettings {
  double lattice_constant_nm = 0.3567;
  double bath_radius_nm = 4.0;
  double abundance = 0.011;
  double exclusion_radius_nm = 0.1;
  bool operator==(const LatticeSettings&) const = default;
};

struct ContactSettings {
  bool enabled = false;
  double amplitude_rad_us = 46.43;
  double decay_length_nm = 0.15;
  double cutoff_radius_nm = 0.5;
  bool operator==(const ContactSettings&) const = default;
};

/// One of these fully determines a run; flags override file values.
struct RunConfig {
  std::uint64_t seed = 1;
  double b_z_tesla = gauss_to_tesla(200.0);
  double gamma_e_ghz_per_t = kGammaElectronGHzPerT;
  double gamma_n_mhz_per_t = kGammaCarbon13MHzPerT;
  LatticeSettings lattice;
  ContactSettings contact;
  PolarizationConfig polarization;
  GridConfig grid;
  NoiseConfig noise;
  double qee_tolerance = kQeeDistanceTol;
  int threads = 1;
  std::string bath_path;
  std::string out_path;

  LatticeConfig to_lattice_config() const;
  ContactModel to_contact_model() const;
  bool operator==(const RunConfig&) const = default;
};

/// "200 G", "200gauss", "0.02T", "2e-2 tesla" -> tesla.
double parse_field(const std::string& text);

RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config_json(const std::string& text);
std::string config_to_json(const RunConfig& config);
void write_config(const std::filesystem::path& path, const RunConfig& config);

}  // namespace qee::cli
