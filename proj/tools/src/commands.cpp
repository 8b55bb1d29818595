#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <vector>

#include "qee/dephasing.hpp"
#include "qee/noise.hpp"
#include "qee/rng.hpp"
#include "qee/trace_io.hpp"

namespace qee::cli {

namespace {

void require_out(const RunConfig& config) {
  if (config.out_path.empty()) {
    throw ValidationError("no output path: set --out or \"out\" in the config");
  }
}

BathFile load_input_bath(const RunConfig& config) {
  if (config.bath_path.empty()) {
    throw ValidationError("no bath file: set --bath or \"bath\" in the config");
  }
  return load_bath(config.bath_path);
}

}  // namespace

int cmd_gen_bath(const RunConfig& config) {
  require_out(config);
  const LatticeConfig lattice = config.to_lattice_config();
  const ContactModel contact = config.to_contact_model();

  const auto sites = generate_sites(lattice);
  auto spins = sample_bath(sites, lattice, config.b_z_tesla, config.gamma_n_mhz_per_t);
  for (auto& spin : spins) {
    spin = compute_couplings(spin, config.gamma_e_ghz_per_t, config.gamma_n_mhz_per_t, contact);
  }
  apply_polarization(spins, config.polarization.r_p_nm, config.polarization.p_inner);

  BathFile bath;
  bath.cfg = lattice;
  bath.b_z_tesla = config.b_z_tesla;
  bath.gamma_e_ghz_per_t = config.gamma_e_ghz_per_t;
  bath.gamma_n_mhz_per_t = config.gamma_n_mhz_per_t;
  bath.larmor_rad_us = larmor_rad_per_us(config.gamma_n_mhz_per_t, config.b_z_tesla);
  bath.r_p_nm = config.polarization.r_p_nm;
  bath.p_inner = config.polarization.p_inner;
  bath.spins = spins;
  save_bath(config.out_path, bath);

  std::size_t polarized = 0;
  double min_coupling = std::numeric_limits<double>::infinity();
  double max_coupling = 0.0;
  for (const auto& spin : spins) {
    if (spin.polarization != 0.0) ++polarized;
    const double a = spin.hyperfine.norm();
    min_coupling = std::min(min_coupling, a);
    max_coupling = std::max(max_coupling, a);
  }
  std::printf("sites: %zu within %.3g nm\n", sites.size(), lattice.bath_radius_nm);
  std::printf("bath: %zu spins (%zu polarized), larmor %.6g rad/us\n", spins.size(), polarized,
              bath.larmor_rad_us);
  if (!spins.empty()) {
    std::printf("|A| range: [%.6g, %.6g] rad/us\n", min_coupling, max_coupling);
  }
  std::printf("wrote %s\n", config.out_path.c_str());
  return 0;
}

int cmd_run_protocol(const RunConfig& config) {
  require_out(config);
  const BathFile bath = load_input_bath(config);
  if (bath.spins.empty()) {
    throw ValidationError("bath file contains no spins");
  }
  const GridSpec grid = config.grid.to_grid_spec();
  TraceOptions options;
  options.threads = config.threads;
  ProtocolTrace trace = protocol_trace(bath.spins, grid, options);
  trace.meta.bath_ref = config.bath_path;
  trace.meta.b_z_tesla = bath.b_z_tesla;
  trace.meta.seed = config.seed;
  write_trace_csv(config.out_path, trace);

  std::vector<EntanglementReport> reports;
  reports.reserve(trace.tau_us.size());
  std::size_t detected = 0;
  for (double tau : trace.tau_us) {
    EntanglementReport report;
    report.tau_us = tau;
    report.distance = criterion_distance(bath.spins, tau);
    report.tolerance_used = config.qee_tolerance;
    report.qee_detected = report.distance > config.qee_tolerance;
    if (report.qee_detected) ++detected;
    reports.push_back(report);
  }
  const std::string report_path = config.out_path + ".report.jsonl";
  write_entanglement_report(report_path, reports);

  double max_re = 0.0, max_im = 0.0;
  for (const Complex& d : trace.delta_norm) {
    max_re = std::max(max_re, std::abs(d.real()));
    max_im = std::max(max_im, std::abs(d.imag()));
  }
  std::printf("trace: %zu points (%s), max |Re dnorm| = %.6g, max |Im dnorm| = %.6g\n",
              trace.rho0.size(), grid.diagonal ? "diagonal t = tau" : "full grid", max_re,
              max_im);
  const std::size_t transverse = static_cast<std::size_t>(
      std::count_if(bath.spins.begin(), bath.spins.end(), [](const BathSpin& spin) {
        return spin.hyperfine.x() != 0.0 || spin.hyperfine.y() != 0.0;
      }));
  if (transverse == 0) {
    std::printf("all couplings longitudinal: conditional Hamiltonians commute - witness "
                "blind spot possible\n");
  } else {
    std::printf("transverse couplings on %zu of %zu spins (conditional Hamiltonians do not "
                "commute)\n",
                transverse, bath.spins.size());
  }
  std::printf("entanglement witnessed at %zu of %zu tau points (tolerance %.3g)\n", detected,
              reports.size(), config.qee_tolerance);
  std::printf("wrote %s and %s\n", config.out_path.c_str(), report_path.c_str());
  return 0;
}

int cmd_echo(const RunConfig& config) {
  require_out(config);
  const BathFile bath = load_input_bath(config);
  if (bath.spins.empty()) {
    throw ValidationError("bath file contains no spins");
  }
  GridSpec grid = config.grid.to_grid_spec();
  const std::vector<double> taus = grid.tau_grid();
  const std::vector<Complex> echo = echo_trace(bath.spins, taus, config.threads);
  write_echo_csv(config.out_path, taus, echo);

  double max_deficit = 0.0;
  for (const Complex& e : echo) {
    max_deficit = std::max(max_deficit, 0.5 - std::abs(e));
  }
  if (max_deficit < 1e-10) {
    std::printf("echo magnitude stays at 1/2: commuting environment - witness blind spot "
                "possible\n");
  } else {
    std::printf("echo decays: max deficit from 1/2 is %.6g\n", max_deficit);
  }
  std::printf("wrote %s\n", config.out_path.c_str());
  return 0;
}

int cmd_noise(const RunConfig& config) {
  require_out(config);
  const NoiseProcess process = config.noise.to_process(config.seed);
  const auto trajectories = sample_trajectories(process, config.noise.dt_us,
                                                config.noise.horizon_us,
                                                config.noise.trajectories);
  const auto coherence0 = noise_coherence(trajectories, 0, config.noise.tau_us);
  const auto coherence1 = noise_coherence(trajectories, 1, config.noise.tau_us);

  ProtocolTrace trace;
  trace.tau_us = {config.noise.tau_us};
  trace.t_us.resize(coherence0.size());
  for (std::size_t j = 0; j < coherence0.size(); ++j) {
    trace.t_us[j] = config.noise.dt_us * static_cast<double>(j);
  }
  trace.rho0 = coherence0;
  trace.rho1 = coherence1;
  trace.delta_norm.resize(coherence0.size());
  for (std::size_t j = 0; j < coherence0.size(); ++j) {
    trace.delta_norm[j] = 2.0 * (coherence0[j] - coherence1[j]);
  }
  write_trace_csv(config.out_path, trace);
  std::printf("noise trace: %zu samples, %d trajectories; prep-0 and prep-1 columns are "
              "identical by construction\n",
              coherence0.size(), config.noise.trajectories);
  std::printf("wrote %s\n", config.out_path.c_str());
  return 0;
}

namespace {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_err = 0.0;
};

void print_check(const CheckResult& result) {
  std::printf("{\"check\": \"%s\", \"status\": \"%s\", \"max_err\": %.3g}\n",
              result.name.c_str(), result.passed ? "pass" : "fail", result.max_err);
}

BathSpin random_bath_spin(Rng& rng) {
  BathSpin spin;
  spin.position_nm = Eigen::Vector3d(1, 0, 0);
  spin.hyperfine = Eigen::Vector3d(2.0 * (2.0 * rng.uniform() - 1.0),
                                   2.0 * (2.0 * rng.uniform() - 1.0),
                                   2.0 * (2.0 * rng.uniform() - 1.0));
  spin.larmor_rad_us = 2.0 * rng.uniform();
  spin.polarization = 2.0 * rng.uniform() - 1.0;
  return spin;
}

CheckResult check_delta_l_analytic(bool flip_sign) {
  CheckResult result{"delta-l-analytic"};
  Rng rng(2025);
  const double pi = std::acos(-1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    BathSpin spin;
    spin.position_nm = Eigen::Vector3d(1, 0, 0);
    spin.polarization = 2.0 * rng.uniform() - 1.0;
    spin.hyperfine =
        Eigen::Vector3d(pi * (2.0 * rng.uniform() - 1.0), 0.0, pi * (2.0 * rng.uniform() - 1.0));
    spin.larmor_rad_us = 1.346;
    const double tau = 40.0 * rng.uniform();
    const double t = 40.0 * rng.uniform();
    const SpinFactor f = spin_factor_pair(spin, tau, t);
    Complex analytic = delta_L_analytic(spin.polarization, spin.hyperfine.x(),
                                        spin.hyperfine.z(), spin.larmor_rad_us, tau, t);
    if (flip_sign) analytic = -analytic;
    result.max_err = std::max(result.max_err, std::abs((f.l0 - f.l1) - analytic));
  }
  result.passed = result.max_err < 1e-10;
  return result;
}

CheckResult check_factorization() {
  CheckResult result{"factorization-vs-joint-oracle"};
  Rng rng(42);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = trial < 4 ? 4 : 1 + rng.next_u64() % 4;
    std::vector<BathSpin> bath;
    for (std::size_t k = 0; k < n; ++k) bath.push_back(random_bath_spin(rng));
    const PureDephasingModel model = joint_model(bath);
    const EnvState r0 = joint_env_state(bath);
    for (int pt = 0; pt < 6; ++pt) {
      const double tau = 10.0 * rng.uniform();
      const double t = 10.0 * rng.uniform();
      Complex prod0(1, 0), prod1(1, 0);
      for (const BathSpin& spin : bath) {
        const SpinFactor f = spin_factor_pair(spin, tau, t);
        prod0 *= f.l0;
        prod1 *= f.l1;
      }
      result.max_err = std::max(result.max_err,
                                std::abs(0.5 * prod0 - joint_oracle(model, r0, 0, tau, t)));
      result.max_err = std::max(result.max_err,
                                std::abs(0.5 * prod1 - joint_oracle(model, r0, 1, tau, t)));
    }
  }
  result.passed = result.max_err < 1e-10;
  return result;
}

CheckResult check_criterion_witness() {
  CheckResult result{"criterion-witness-consistency"};
  Rng rng(7);
  bool consistent = true;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 3;
    std::vector<BathSpin> bath;
    for (std::size_t k = 0; k < n; ++k) bath.push_back(random_bath_spin(rng));
    const bool mixed = trial % 4 == 0;
    if (mixed) {
      for (auto& spin : bath) spin.polarization = 0.0;
    }
    const double tau = 0.2 + 8.0 * rng.uniform();
    double max_diff = 0.0;
    for (int ti = 0; ti < 8; ++ti) {
      const double t = 0.5 + 5.0 * rng.uniform();
      Complex d(0, 0);
      Complex prod0(1, 0), prod1(1, 0);
      for (const BathSpin& spin : bath) {
        const SpinFactor f = spin_factor_pair(spin, tau, t);
        prod0 *= f.l0;
        prod1 *= f.l1;
      }
      d = 0.5 * (prod0 - prod1);
      max_diff = std::max(max_diff, std::abs(d));
    }
    const double distance = criterion_distance(bath, tau);
    if (mixed) {
      if (distance > 1e-12 || max_diff > 1e-12) consistent = false;
    } else if (max_diff > 1e-8 && distance <= 1e-10) {
      consistent = false;
    }
  }
  result.passed = consistent;
  result.max_err = consistent ? 0.0 : 1.0;
  return result;
}

CheckResult check_echo_blind_spot() {
  CheckResult result{"echo-commuting-blind-spot"};
  Rng rng(11);
  std::vector<double> taus;
  for (int i = 0; i <= 40; ++i) taus.push_back(0.5 * i);

  std::vector<BathSpin> commuting;
  for (int k = 0; k < 5; ++k) {
    BathSpin spin = random_bath_spin(rng);
    spin.hyperfine.x() = 0.0;
    spin.hyperfine.y() = 0.0;
    commuting.push_back(spin);
  }
  double worst = 0.0;
  for (const Complex& e : echo_trace(commuting, taus)) {
    worst = std::max(worst, std::abs(std::abs(e) - 0.5));
  }
  bool ok = worst < 1e-10;
  result.max_err = worst;

  std::vector<BathSpin> generic = commuting;
  generic.push_back(random_bath_spin(rng));
  generic.back().hyperfine.x() = 1.0;
  generic.back().larmor_rad_us = 1.346;
  double min_magnitude = 1.0;
  for (const Complex& e : echo_trace(generic, taus)) {
    min_magnitude = std::min(min_magnitude, std::abs(e));
  }
  ok = ok && min_magnitude < 0.5 - 1e-6;
  result.passed = ok;
  return result;
}

}  // namespace

int cmd_verify(const RunConfig& config, const std::string& inject_fault) {
  (void)config;
  if (!inject_fault.empty() && inject_fault != "delta-l-sign") {
    throw ValidationError("unknown fault '" + inject_fault +
                          "' (supported: delta-l-sign)");
  }
  std::vector<CheckResult> results;
  results.push_back(check_delta_l_analytic(inject_fault == "delta-l-sign"));
  results.push_back(check_factorization());
  results.push_back(check_criterion_witness());
  results.push_back(check_echo_blind_spot());

  bool all_passed = true;
  for (const CheckResult& result : results) {
    print_check(result);
    all_passed = all_passed && result.passed;
  }
  if (!all_passed) {
    std::string failing;
    for (const CheckResult& result : results) {
      if (!result.passed) failing += (failing.empty() ? "" : ", ") + result.name;
    }
    std::printf("verify: FAIL (%s)\n", failing.c_str());
    return 3;
  }
  std::printf("verify: PASS (%zu checks)\n", results.size());
  return 0;
}

}  // namespace qee::cli
