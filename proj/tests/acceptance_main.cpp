// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Exit code is the number of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qee/dephasing.hpp"
#include "qee/noise.hpp"
#include "qee/nv_bath.hpp"
#include "qee/protocol.hpp"
#include "qee/rng.hpp"
#include "qee/trace_io.hpp"

using namespace qee;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

BathSpin make_spin(double omega, double ax, double ay, double az, double p) {
  BathSpin spin;
  spin.position_nm = Eigen::Vector3d(1, 0, 0);
  spin.hyperfine = Eigen::Vector3d(ax, ay, az);
  spin.larmor_rad_us = omega;
  spin.polarization = p;
  return spin;
}

BathSpin random_spin(Rng& rng, double coupling_scale = 2.0) {
  return make_spin(2.0 * rng.uniform(),
                   coupling_scale * (2.0 * rng.uniform() - 1.0),
                   coupling_scale * (2.0 * rng.uniform() - 1.0),
                   coupling_scale * (2.0 * rng.uniform() - 1.0),
                   2.0 * rng.uniform() - 1.0);
}

std::vector<BathSpin> default_nv_bath(std::uint64_t seed, double r_p_nm) {
  LatticeConfig cfg;
  cfg.seed = seed;
  const auto sites = generate_sites(cfg);
  auto spins = sample_bath(sites, cfg, gauss_to_tesla(200.0), kGammaCarbon13MHzPerT);
  for (auto& spin : spins) {
    spin = compute_couplings(spin, kGammaElectronGHzPerT, kGammaCarbon13MHzPerT, ContactModel{});
  }
  apply_polarization(spins, r_p_nm, 1.0);
  return spins;
}

// --- criterion 1: analytic single-spin difference vs the kernel -------------

Outcome criterion_analytic_difference() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(1001);
  const double pi = std::acos(-1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double p = 2.0 * rng.uniform() - 1.0;
    const double ax = pi * (2.0 * rng.uniform() - 1.0);
    const double az = pi * (2.0 * rng.uniform() - 1.0);
    const double tau = 40.0 * rng.uniform();
    const double t = 40.0 * rng.uniform();
    const BathSpin spin = make_spin(1.346, ax, 0.0, az, p);
    const SpinFactor f = spin_factor_pair(spin, tau, t);
    const Complex analytic = delta_L_analytic(p, ax, az, 1.346, tau, t);
    worst = std::max(worst, std::abs((f.l0 - f.l1) - analytic));
  }
  const double elapsed = seconds_since(start);
  char detail[160];
  std::snprintf(detail, sizeof(detail), "1000 draws, max |kernel - analytic| = %.2e, %.2f s",
                worst, elapsed);
  return {worst < 1e-10 && elapsed < 1.0, detail};
}

// --- criterion 2: product formula vs full-Hilbert-space oracle --------------

Outcome criterion_factorization() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(1002);
  double worst = 0.0;
  for (int bath_index = 0; bath_index < 50; ++bath_index) {
    const std::size_t n = 1 + rng.next_u64() % 4;
    std::vector<BathSpin> bath;
    for (std::size_t k = 0; k < n; ++k) bath.push_back(random_spin(rng));
    const PureDephasingModel model = joint_model(bath);
    const EnvState r0 = joint_env_state(bath);
    for (int pt = 0; pt < 20; ++pt) {
      const double tau = 20.0 * rng.uniform();
      const double t = 20.0 * rng.uniform();
      Complex prod0(1, 0), prod1(1, 0);
      for (const BathSpin& spin : bath) {
        const SpinFactor f = spin_factor_pair(spin, tau, t);
        prod0 *= f.l0;
        prod1 *= f.l1;
      }
      worst = std::max(worst, std::abs(0.5 * prod0 - joint_oracle(model, r0, 0, tau, t)));
      worst = std::max(worst, std::abs(0.5 * prod1 - joint_oracle(model, r0, 1, tau, t)));
    }
  }
  const double elapsed = seconds_since(start);
  char detail[160];
  std::snprintf(detail, sizeof(detail),
    "50 baths (N <= 4) x 20 points x 2 preps, max |product - oracle| = %.2e, %.2f s",
    worst, elapsed);
  return {worst < 1e-10 && elapsed < 10.0, detail};
}

// --- criterion 3: witness implies criterion; mixed state shows neither ------

Outcome criterion_witness_consistency() {
  Rng rng(1003);
  int witness_hits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 3;
    std::vector<BathSpin> bath;
    for (std::size_t k = 0; k < n; ++k) bath.push_back(random_spin(rng));
    const bool mixed = trial % 3 == 0;
    if (mixed) {
      for (auto& spin : bath) spin.polarization = 0.0;
    }
    const PureDephasingModel model = joint_model(bath);
    const EnvState r0 = joint_env_state(bath);
    const double tau = 0.2 + 10.0 * rng.uniform();

    double max_diff = 0.0;
    for (int ti = 0; ti < 8; ++ti) {
      const double t = 0.3 + 8.0 * rng.uniform();
      max_diff = std::max(max_diff, std::abs(protocol_coherence(model, r0, 0, tau, t) -
                                             protocol_coherence(model, r0, 1, tau, t)));
    }
    const double distance = qee_criterion(model, r0, tau).distance;
    if (mixed) {
      if (distance >= 1e-12 || max_diff >= 1e-12) {
        return {false, "maximally mixed state produced a spurious signal"};
      }
    } else if (max_diff > 1e-8) {
      ++witness_hits;
      if (distance <= 1e-10) {
        return {false, "witness fired but the criterion distance stayed at zero"};
      }
    }
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail),
                "100 models, %d witness activations, all consistent", witness_hits);
  return {witness_hits > 10, detail};
}

// --- criterion 4: commuting blind spot and echo sensitivity -----------------

Outcome criterion_echo_blind_spot() {
  Rng rng(1004);
  std::vector<double> taus;
  for (int i = 0; i <= 400; ++i) taus.push_back(0.1 * i);

  // Longitudinal-only baths: no witness signal and a flat echo.
  for (int bath_index = 0; bath_index < 3; ++bath_index) {
    std::vector<BathSpin> bath;
    for (int k = 0; k < 6; ++k) {
      BathSpin spin = random_spin(rng);
      spin.hyperfine.x() = 0.0;
      spin.hyperfine.y() = 0.0;
      bath.push_back(spin);
    }
    GridSpec grid;
    grid.tau_steps = 15;
    grid.t_steps = 15;
    const ProtocolTrace trace = protocol_trace(bath, grid);
    for (const Complex& d : trace.delta_norm) {
      if (std::abs(d) > 1e-12) {
        return {false, "longitudinal bath produced a nonzero witness signal"};
      }
    }
    for (const Complex& e : echo_trace(bath, taus)) {
      if (std::abs(std::abs(e) - 0.5) > 1e-10) {
        return {false, "longitudinal bath echo left 1/2"};
      }
    }
  }

  // Transverse couplings from 2e-3 rad/us upward must dent the echo.
  for (double ax : {2e-3, 5e-2, 1.0}) {
    std::vector<BathSpin> bath;
    bath.push_back(make_spin(1.346, ax, 0.0, 0.3, 1.0));
    bath.push_back(make_spin(1.346, 0.0, 0.0, -0.4, 0.0));
    double min_magnitude = 1.0;
    for (const Complex& e : echo_trace(bath, taus)) {
      min_magnitude = std::min(min_magnitude, std::abs(e));
    }
    if (!(min_magnitude < 0.5 - 1e-6)) {
      char detail[120];
      std::snprintf(detail, sizeof(detail),
                    "echo stayed within 1e-6 of 1/2 for A_zx = %.1e", ax);
      return {false, detail};
    }
  }
  return {true, "flat echo + zero witness when commuting; echo dips for A_zx >= 2e-3"};
}

// --- criterion 5: single polarized spin leaves Re of the difference flat ----

Outcome criterion_one_polarized_spin() {
  Rng rng(1005);
  std::vector<BathSpin> bath;
  for (int k = 0; k < 24; ++k) {
    BathSpin spin = random_spin(rng, 1.0);
    spin.polarization = 0.0;
    bath.push_back(spin);
  }
  bath[7] = make_spin(1.346, 0.9, 0.0, 0.4, 1.0);  // exactly one polarized, A_zy = 0

  GridSpec grid;
  grid.tau_steps = 50;
  grid.t_steps = 50;
  const ProtocolTrace trace = protocol_trace(bath, grid);
  double max_re = 0.0, max_im = 0.0;
  for (const Complex& d : trace.delta_norm) {
    max_re = std::max(max_re, std::abs(d.real()));
    max_im = std::max(max_im, std::abs(d.imag()));
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "max |Re| = %.2e, max |Im| = %.2e over 2500 points",
                max_re, max_im);
  return {max_re < 1e-10 && max_im > 1e-6, detail};
}

// --- criterion 6: signal magnitude band over random realizations ------------

Outcome criterion_signal_magnitude() {
  const auto start = std::chrono::steady_clock::now();
  int reach_band = 0;   // max |Im dnorm| >= 0.05
  int reach_large = 0;  // >= 0.2
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto bath = default_nv_bath(seed, 0.9);
    GridSpec grid;
    grid.tau_steps = 200;
    grid.diagonal = true;
    const ProtocolTrace trace = protocol_trace(bath, grid);
    double max_im = 0.0;
    for (const Complex& d : trace.delta_norm) {
      max_im = std::max(max_im, std::abs(d.imag()));
    }
    if (max_im >= 0.05) ++reach_band;
    if (max_im >= 0.2) ++reach_large;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%.2f", per_seed.empty() ? "" : " ", max_im);
    per_seed += buf;
  }
  const double elapsed = seconds_since(start);
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "max |Im dnorm| per seed: [%s]; %d/8 >= 0.05, %d/8 >= 0.2, %.1f s",
                per_seed.c_str(), reach_band, reach_large, elapsed);
  return {reach_band >= 6 && reach_large >= 1 && elapsed < 60.0, detail};
}

// --- criterion 7: classical noise is preparation independent ----------------

Outcome criterion_classical_noise() {
  const auto start = std::chrono::steady_clock::now();
  NoiseProcess process;
  process.kind = NoiseKind::ornstein_uhlenbeck;
  process.sigma_rad_us = 0.5;
  process.corr_time_us = 1e12;  // static-Gaussian limit
  process.mean_rad_us = 0.0;
  process.seed = 20207;
  const double dt = 0.05;
  const auto trajectories = sample_trajectories(process, dt, 4.0, 100000);

  const auto c0 = noise_coherence(trajectories, 0, 0.0);
  const auto c1 = noise_coherence(trajectories, 1, 12.5);
  if (c0.size() != c1.size() ||
      std::memcmp(c0.data(), c1.data(), c0.size() * sizeof(Complex)) != 0) {
    return {false, "prep-0 and prep-1 outputs differ"};
  }

  const auto stats = noise_coherence_stats(trajectories, 0, 0.0);
  double worst_pull = 0.0;
  for (std::size_t j : {20UL, 40UL, 60UL, 80UL}) {
    const double t = dt * static_cast<double>(j);
    const double expected = 0.5 * std::exp(-0.5 * process.sigma_rad_us * process.sigma_rad_us * t * t);
    const double se = stats.stderr_re[j] + stats.stderr_im[j] + 1e-12;
    worst_pull = std::max(worst_pull, std::abs(stats.mean[j] - Complex(expected, 0.0)) / se);
  }
  const double elapsed = seconds_since(start);
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "outputs bit-identical; static-Gaussian pull <= %.2f sigma at 1e5 "
                "trajectories, %.1f s",
                worst_pull, elapsed);
  return {worst_pull < 3.0 && elapsed < 30.0, detail};
}

// --- criterion 8: performance envelope --------------------------------------

Outcome criterion_performance() {
  const auto bath = default_nv_bath(41, 0.9);
  GridSpec grid;  // 200 x 200 full grid over [0, 40] us
  TraceOptions serial;
  serial.threads = 1;

  const auto t0 = std::chrono::steady_clock::now();
  const ProtocolTrace reference = protocol_trace(bath, grid, serial);
  const double serial_seconds = seconds_since(t0);

  TraceOptions eight;
  eight.threads = 8;
  const auto t1 = std::chrono::steady_clock::now();
  const ProtocolTrace parallel = protocol_trace(bath, grid, eight);
  const double parallel_seconds = seconds_since(t1);

  const bool identical =
      reference.rho0.size() == parallel.rho0.size() &&
      std::memcmp(reference.rho0.data(), parallel.rho0.data(),
                  reference.rho0.size() * sizeof(Complex)) == 0 &&
      std::memcmp(reference.rho1.data(), parallel.rho1.data(),
                  reference.rho1.size() * sizeof(Complex)) == 0 &&
      std::memcmp(reference.delta_norm.data(), parallel.delta_norm.data(),
                  reference.delta_norm.size() * sizeof(Complex)) == 0;

  const double speedup = serial_seconds / parallel_seconds;
  const unsigned hw = std::thread::hardware_concurrency();
  bool ok = serial_seconds < 10.0 && identical;
  char detail[220];
  if (hw >= 8) {
    ok = ok && speedup >= 4.0;
    std::snprintf(detail, sizeof(detail),
                  "%zu spins, 200x200 grid: %.2f s serial, %.2f s on 8 workers "
                  "(%.1fx, bit-identical: %s)",
                  bath.size(), serial_seconds, parallel_seconds, speedup,
                  identical ? "yes" : "NO");
  } else {
    std::snprintf(detail, sizeof(detail),
                  "%zu spins, 200x200 grid: %.2f s serial, %.2f s on 8 workers "
                  "(%.1fx, bit-identical: %s); 4x-speedup subcheck SKIPPED: "
                  "%u hardware threads < 8",
                  bath.size(), serial_seconds, parallel_seconds, speedup,
                  identical ? "yes" : "NO", hw);
  }
  return {ok, detail};
}

// --- criterion 9: byte-identical CLI reruns ----------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QEE_CLI_BIN) + " " + args + " > /dev/null 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return status < 0 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome criterion_determinism() {
  const fs::path dir = fs::temp_directory_path() / "qee_acceptance_tmp";
  fs::remove_all(dir);
  fs::create_directories(dir);

  std::ofstream cfg(dir / "cfg.json");
  cfg << R"({"seed": 17, "field": "200 G",
             "lattice": {"bath_radius_nm": 2.5},
             "polarization": {"r_p_nm": 0.9},
             "grid": {"tau_steps": 40, "t_steps": 30, "diagonal": false},
             "noise": {"sigma_rad_us": 0.4, "corr_time_us": 0.8, "dt_us": 0.05,
                       "horizon_us": 5.0, "trajectories": 2000}})";
  cfg.close();
  const std::string with_cfg = " --config " + (dir / "cfg.json").string();

  struct Step {
    std::string name;
    std::string args;
    std::vector<std::string> outputs;
  };
  const std::vector<Step> steps = {
      {"gen-bath", "gen-bath" + with_cfg + " --out {dir}/run{i}.bath", {"run{i}.bath"}},
      {"run-protocol",
       "run-protocol" + with_cfg + " --bath {dir}/run{i}.bath --out {dir}/run{i}.csv",
       {"run{i}.csv", "run{i}.csv.report.jsonl"}},
      {"echo", "echo" + with_cfg + " --bath {dir}/run{i}.bath --out {dir}/echo{i}.csv",
       {"echo{i}.csv"}},
      {"noise", "noise" + with_cfg + " --out {dir}/noise{i}.csv", {"noise{i}.csv"}},
  };

  auto substitute = [&](std::string text, int i) {
    for (std::string::size_type pos; (pos = text.find("{dir}")) != std::string::npos;) {
      text.replace(pos, 5, dir.string());
    }
    for (std::string::size_type pos; (pos = text.find("{i}")) != std::string::npos;) {
      text.replace(pos, 3, std::to_string(i));
    }
    return text;
  };

  for (const Step& step : steps) {
    for (int i = 0; i < 2; ++i) {
      if (run_cli(substitute(step.args, i)) != 0) {
        fs::remove_all(dir);
        return {false, step.name + " exited nonzero"};
      }
    }
    for (const std::string& output : step.outputs) {
      const std::string a = slurp(dir / substitute(output, 0));
      const std::string b = slurp(dir / substitute(output, 1));
      if (a.empty() || a != b) {
        fs::remove_all(dir);
        return {false, step.name + " output " + output + " differs between reruns"};
      }
    }
  }

  // The noise CSV must carry identical prep-0 and prep-1 columns.
  std::istringstream noise_csv(slurp(dir / "noise0.csv"));
  std::string line;
  std::getline(noise_csv, line);  // header
  while (std::getline(noise_csv, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) fields.push_back(field);
    if (fields[2] != fields[4] || fields[3] != fields[5]) {
      fs::remove_all(dir);
      return {false, "noise CSV prep columns differ"};
    }
  }
  fs::remove_all(dir);
  return {true, "gen-bath, run-protocol, echo, noise: reruns byte-identical"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "analytic single-spin difference equals the kernel", criterion_analytic_difference},
      {2, "product formula matches the joint-evolution oracle", criterion_factorization},
      {3, "witness activation implies the criterion distance", criterion_witness_consistency},
      {4, "commuting baths are blind; transverse couplings dent the echo",
       criterion_echo_blind_spot},
      {5, "one polarized spin keeps Re of the difference at zero", criterion_one_polarized_spin},
      {6, "signal magnitude band across 8 bath realizations", criterion_signal_magnitude},
      {7, "classical noise is preparation independent", criterion_classical_noise},
      {8, "performance envelope", criterion_performance},
      {9, "byte-identical CLI reruns", criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %d. %s (%s)\n", outcome.passed ? "PASS" : "FAIL", criterion.id,
                criterion.name, outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.passed) ++failures;
  }
  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
  }
  return failures;
}
