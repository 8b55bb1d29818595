#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qee/errors.hpp"
#include "qee/units.hpp"

namespace qee {

/// Diamond-cubic lattice and occupation parameters. The qubit sits at the
/// origin; sites inside exclusion_radius_nm (the vacancy itself) are dropped.
struct LatticeConfig {
  double lattice_constant_nm = 0.3567;
  double bath_radius_nm = 4.0;
  double abundance = 0.011;  // 13C occupation probability per site
  std::uint64_t seed = 0;
  double exclusion_radius_nm = 0.1;
};

/// One nuclear spin of the bath. hyperfine = (A_zx, A_zy, A_zz) in rad/us.
struct BathSpin {
  Eigen::Vector3d position_nm = Eigen::Vector3d::Zero();
  Eigen::Vector3d hyperfine = Eigen::Vector3d::Zero();
  double larmor_rad_us = 0.0;
  double polarization = 0.0;  // p_k in [-1, 1]
};

/// Fermi-contact envelope: amplitude * exp(-2 r / decay_length), identically
/// zero beyond cutoff_radius_nm, added to the A_zz component only.
struct ContactModel {
  bool enabled = false;
  double amplitude_rad_us = 46.43;
  double decay_length_nm = 0.15;
  double cutoff_radius_nm = 0.5;
};

/// All diamond lattice sites with exclusion_radius < |r| <= bath_radius,
/// in a fixed deterministic order. No randomness here.
std::vector<Eigen::Vector3d> generate_sites(const LatticeConfig& cfg);

/// Occupies each site independently with probability cfg.abundance using the
/// seeded generator; couplings are left zero until compute_couplings.
std::vector<BathSpin> sample_bath(const std::vector<Eigen::Vector3d>& sites,
                                  const LatticeConfig& cfg, double b_z_tesla,
                                  double gamma_n_mhz_per_t);

/// Fills the hyperfine vector with the secular dipolar row plus the optional
/// contact term, for the NV quantization axis nv_axis.
BathSpin compute_couplings(BathSpin spin, double gamma_e_ghz_per_t,
                           double gamma_n_mhz_per_t, const ContactModel& contact,
                           const Eigen::Vector3d& nv_axis = Eigen::Vector3d(0, 0, 1));

/// p_k = p_inner for |r_k| <= r_p, 0 otherwise.
void apply_polarization(std::vector<BathSpin>& bath, double r_p_nm, double p_inner);

/// A bath plus everything needed to interpret and regenerate it.
struct BathFile {
  LatticeConfig cfg;
  double b_z_tesla = gauss_to_tesla(200.0);
  double gamma_e_ghz_per_t = kGammaElectronGHzPerT;
  double gamma_n_mhz_per_t = kGammaCarbon13MHzPerT;
  double larmor_rad_us = 0.0;
  double r_p_nm = 0.0;
  double p_inner = 0.0;
  std::vector<BathSpin> spins;
};

// Line-oriented text serialization, bit-exact round trip (17 significant
// digits per value). One record per spin: index x y z A_zx A_zy A_zz p.
void save_bath(const std::filesystem::path& path, const BathFile& bath);
BathFile load_bath(const std::filesystem::path& path);

}  // namespace qee
