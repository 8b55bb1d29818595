#include "qee/nv_bath.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "qee/rng.hpp"

namespace qee {

namespace {

void validate(const LatticeConfig& cfg) {
  if (!(cfg.lattice_constant_nm > 0)) {
    throw ValidationError("LatticeConfig: lattice_constant must be > 0");
  }
  if (!(cfg.exclusion_radius_nm > 0) || !(cfg.exclusion_radius_nm < cfg.bath_radius_nm)) {
    throw ValidationError("LatticeConfig: need 0 < exclusion_radius < bath_radius");
  }
  if (!(cfg.abundance >= 0.0 && cfg.abundance <= 1.0)) {
    throw ValidationError("LatticeConfig: abundance must be in [0, 1]");
  }
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<Eigen::Vector3d> generate_sites(const LatticeConfig& cfg) {
  validate(cfg);
  const double a = cfg.lattice_constant_nm;
  // Diamond cubic: FCC with a two-atom basis, 8 atoms per conventional cell.
  static constexpr std::array<std::array<double, 3>, 8> kBasis = {{
      {0.00, 0.00, 0.00},
      {0.00, 0.50, 0.50},
      {0.50, 0.00, 0.50},
      {0.50, 0.50, 0.00},
      {0.25, 0.25, 0.25},
      {0.25, 0.75, 0.75},
      {0.75, 0.25, 0.75},
      {0.75, 0.75, 0.25},
  }};
  const int n = static_cast<int>(std::ceil(cfg.bath_radius_nm / a)) + 1;
  const double r2_min = cfg.exclusion_radius_nm * cfg.exclusion_radius_nm;
  const double r2_max = cfg.bath_radius_nm * cfg.bath_radius_nm;

  std::vector<Eigen::Vector3d> sites;
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      for (int k = -n; k <= n; ++k) {
        for (const auto& b : kBasis) {
          const Eigen::Vector3d r(a * (i + b[0]), a * (j + b[1]), a * (k + b[2]));
          const double r2 = r.squaredNorm();
          if (r2 > r2_min && r2 <= r2_max) {
            sites.push_back(r);
          }
        }
      }
    }
  }
  return sites;
}

std::vector<BathSpin> sample_bath(const std::vector<Eigen::Vector3d>& sites,
                                  const LatticeConfig& cfg, double b_z_tesla,
                                  double gamma_n_mhz_per_t) {
  validate(cfg);
  const double larmor = larmor_rad_per_us(gamma_n_mhz_per_t, b_z_tesla);
  Rng rng(cfg.seed);
  std::vector<BathSpin> bath;
  for (const auto& site : sites) {
    if (rng.uniform() < cfg.abundance) {
      BathSpin spin;
      spin.position_nm = site;
      spin.larmor_rad_us = larmor;
      bath.push_back(spin);
    }
  }
  return bath;
}

BathSpin compute_couplings(BathSpin spin, double gamma_e_ghz_per_t,
                           double gamma_n_mhz_per_t, const ContactModel& contact,
                           const Eigen::Vector3d& nv_axis) {
  const double r = spin.position_nm.norm();
  if (!(r > 0.0)) {
    throw ValidationError("compute_couplings: zero-length position");
  }
  // Orthonormal frame with z' along the NV quantization axis.
  const Eigen::Vector3d ez = nv_axis.normalized();
  Eigen::Vector3d seed = std::abs(ez.z()) < 0.9 ? Eigen::Vector3d(0, 0, 1)
                                                : Eigen::Vector3d(1, 0, 0);
  const Eigen::Vector3d ex = (seed - seed.dot(ez) * ez).normalized();
  const Eigen::Vector3d ey = ez.cross(ex);

  const Eigen::Vector3d n = spin.position_nm / r;
  const double nx = n.dot(ex);
  const double ny = n.dot(ey);
  const double nz = n.dot(ez);

  const double c = dipolar_prefactor_rad_per_us(gamma_e_ghz_per_t, gamma_n_mhz_per_t, r);
  spin.hyperfine = Eigen::Vector3d(c * (-3.0 * nz * nx),
                                   c * (-3.0 * nz * ny),
                                   c * (1.0 - 3.0 * nz * nz));
  if (contact.enabled && r <= contact.cutoff_radius_nm) {
    spin.hyperfine.z() += contact.amplitude_rad_us * std::exp(-2.0 * r / contact.decay_length_nm);
  }
  return spin;
}

void apply_polarization(std::vector<BathSpin>& bath, double r_p_nm, double p_inner) {
  if (!(r_p_nm >= 0.0)) {
    throw ValidationError("apply_polarization: r_p must be >= 0");
  }
  if (std::abs(p_inner) > 1.0) {
    throw ValidationError("apply_polarization: |p_inner| must be <= 1");
  }
  for (auto& spin : bath) {
    spin.polarization = spin.position_nm.norm() <= r_p_nm ? p_inner : 0.0;
  }
}

void save_bath(const std::filesystem::path& path, const BathFile& bath) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("save_bath: cannot open " + path.string());
  }
  out << "# qee-bath v1\n";
  out << "# lattice_constant_nm " << format17(bath.cfg.lattice_constant_nm) << "\n";
  out << "# bath_radius_nm " << format17(bath.cfg.bath_radius_nm) << "\n";
  out << "# exclusion_radius_nm " << format17(bath.cfg.exclusion_radius_nm) << "\n";
  out << "# abundance " << format17(bath.cfg.abundance) << "\n";
  out << "# seed " << bath.cfg.seed << "\n";
  out << "# b_z_tesla " << format17(bath.b_z_tesla) << "\n";
  out << "# gamma_e_ghz_per_t " << format17(bath.gamma_e_ghz_per_t) << "\n";
  out << "# gamma_n_mhz_per_t " << format17(bath.gamma_n_mhz_per_t) << "\n";
  out << "# larmor_rad_us " << format17(bath.larmor_rad_us) << "\n";
  out << "# r_p_nm " << format17(bath.r_p_nm) << "\n";
  out << "# p_inner " << format17(bath.p_inner) << "\n";
  out << "# count " << bath.spins.size() << "\n";
  for (std::size_t i = 0; i < bath.spins.size(); ++i) {
    const BathSpin& s = bath.spins[i];
    out << i << ' ' << format17(s.position_nm.x()) << ' ' << format17(s.position_nm.y())
        << ' ' << format17(s.position_nm.z()) << ' ' << format17(s.hyperfine.x()) << ' '
        << format17(s.hyperfine.y()) << ' ' << format17(s.hyperfine.z()) << ' '
        << format17(s.polarization) << '\n';
  }
  if (!out) {
    throw ValidationError("save_bath: write failed for " + path.string());
  }
}

BathFile load_bath(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("load_bath: cannot open " + path.string());
  }
  BathFile bath;
  std::size_t expected = 0;
  bool have_count = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "lattice_constant_nm") hs >> bath.cfg.lattice_constant_nm;
      else if (key == "bath_radius_nm") hs >> bath.cfg.bath_radius_nm;
      else if (key == "exclusion_radius_nm") hs >> bath.cfg.exclusion_radius_nm;
      else if (key == "abundance") hs >> bath.cfg.abundance;
      else if (key == "seed") hs >> bath.cfg.seed;
      else if (key == "b_z_tesla") hs >> bath.b_z_tesla;
      else if (key == "gamma_e_ghz_per_t") hs >> bath.gamma_e_ghz_per_t;
      else if (key == "gamma_n_mhz_per_t") hs >> bath.gamma_n_mhz_per_t;
      else if (key == "larmor_rad_us") hs >> bath.larmor_rad_us;
      else if (key == "r_p_nm") hs >> bath.r_p_nm;
      else if (key == "p_inner") hs >> bath.p_inner;
      else if (key == "count") { hs >> expected; have_count = true; }
      continue;
    }
    std::istringstream rs(line);
    std::size_t index = 0;
    BathSpin spin;
    spin.larmor_rad_us = bath.larmor_rad_us;
    if (!(rs >> index >> spin.position_nm.x() >> spin.position_nm.y() >>
          spin.position_nm.z() >> spin.hyperfine.x() >> spin.hyperfine.y() >>
          spin.hyperfine.z() >> spin.polarization)) {
      throw ValidationError("load_bath: malformed record in " + path.string());
    }
    if (index != bath.spins.size()) {
      throw ValidationError("load_bath: record index out of order in " + path.string());
    }
    bath.spins.push_back(spin);
  }
  if (have_count && bath.spins.size() != expected) {
    throw ValidationError("load_bath: record count mismatch in " + path.string());
  }
  return bath;
}

}  // namespace qee
