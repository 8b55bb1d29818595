#include "qee/noise.hpp"

#include <cmath>
#include <cstdio>

#include "qee/rng.hpp"

namespace qee {

namespace {

void validate(const NoiseProcess& process) {
  if (!(process.sigma_rad_us >= 0.0)) {
    throw ValidationError("NoiseProcess: sigma must be >= 0");
  }
  if (!(process.corr_time_us > 0.0)) {
    throw ValidationError("NoiseProcess: corr_time must be > 0");
  }
  if (!std::isfinite(process.mean_rad_us)) {
    throw ValidationError("NoiseProcess: mean must be finite");
  }
}

void require_prep(int prep) {
  if (prep != 0 && prep != 1) {
    throw ValidationError("noise_coherence: prep must be 0 or 1");
  }
}

}  // namespace

std::vector<NoiseTrajectory> sample_trajectories(const NoiseProcess& process, double dt_us,
                                                 double horizon_us, int count) {
  validate(process);
  if (!(dt_us > 0.0) || !(horizon_us >= dt_us)) {
    throw ValidationError("sample_trajectories: need dt > 0 and horizon >= dt");
  }
  if (count < 1) {
    throw ValidationError("sample_trajectories: count must be >= 1");
  }
  if (dt_us > process.corr_time_us / 20.0) {
    std::fprintf(stderr,
                 "warning: noise dt = %g us exceeds corr_time/20 = %g us; "
                 "phase-integral discretization bias may be significant\n",
                 dt_us, process.corr_time_us / 20.0);
  }
  const std::size_t n_samples =
      static_cast<std::size_t>(std::ceil(horizon_us / dt_us - 1e-12)) + 1;

  const double decay = std::exp(-dt_us / process.corr_time_us);
  const double ou_kick = process.sigma_rad_us * std::sqrt(1.0 - decay * decay);
  const double flip_prob = 0.5 * (1.0 - decay);  // gives lag-1 autocorr = decay

  std::vector<NoiseTrajectory> trajectories(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    Rng rng(mix_seed(process.seed, i));
    NoiseTrajectory& traj = trajectories[i];
    traj.dt_us = dt_us;
    traj.samples.resize(n_samples);
    if (process.kind == NoiseKind::ornstein_uhlenbeck) {
      double x = process.mean_rad_us + process.sigma_rad_us * rng.normal();
      traj.samples[0] = x;
      for (std::size_t j = 1; j < n_samples; ++j) {
        x = process.mean_rad_us + (x - process.mean_rad_us) * decay + ou_kick * rng.normal();
        traj.samples[j] = x;
      }
    } else {
      double level = rng.uniform() < 0.5 ? -process.sigma_rad_us : process.sigma_rad_us;
      traj.samples[0] = process.mean_rad_us + level;
      for (std::size_t j = 1; j < n_samples; ++j) {
        if (rng.uniform() < flip_prob) level = -level;
        traj.samples[j] = process.mean_rad_us + level;
      }
    }
  }
  return trajectories;
}

NoiseCoherenceStats noise_coherence_stats(const std::vector<NoiseTrajectory>& trajectories,
                                          int prep, double tau_us, double max_t_us) {
  require_prep(prep);
  if (!(tau_us >= 0.0)) {
    throw ValidationError("noise_coherence: tau must be >= 0");
  }
  if (trajectories.empty()) {
    throw ValidationError("noise_coherence: no trajectories");
  }
  std::size_t n = trajectories.front().samples.size();
  const double dt = trajectories.front().dt_us;
  if (n < 2) {
    throw ValidationError("noise_coherence: trajectories need length >= 2");
  }
  for (const auto& traj : trajectories) {
    if (traj.samples.size() != n || traj.dt_us != dt) {
      throw ValidationError("noise_coherence: trajectories must share dt and length");
    }
  }
  if (max_t_us != kFullHorizon) {
    if (!(max_t_us >= 0.0)) {
      throw ValidationError("noise_coherence: max_t must be >= 0");
    }
    if (max_t_us > dt * static_cast<double>(n - 1) + 1e-12) {
      throw ValidationError("noise_coherence: requested horizon exceeds the sampled one");
    }
    n = std::min(n, static_cast<std::size_t>(std::floor(max_t_us / dt + 1e-12)) + 1);
  }

  std::vector<double> sum_re(n, 0.0), sum_im(n, 0.0), sum_re2(n, 0.0), sum_im2(n, 0.0);
  for (const auto& traj : trajectories) {
    double phase = 0.0;
    sum_re[0] += 1.0;  // exp(-i*0)
    sum_re2[0] += 1.0;
    for (std::size_t j = 1; j < n; ++j) {
      phase += 0.5 * dt * (traj.samples[j - 1] + traj.samples[j]);
      const double re = std::cos(phase);
      const double im = -std::sin(phase);
      sum_re[j] += re;
      sum_im[j] += im;
      sum_re2[j] += re * re;
      sum_im2[j] += im * im;
    }
  }

  const double count = static_cast<double>(trajectories.size());
  NoiseCoherenceStats stats;
  stats.mean.resize(n);
  stats.stderr_re.assign(n, 0.0);
  stats.stderr_im.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double mean_re = sum_re[j] / count;
    const double mean_im = sum_im[j] / count;
    stats.mean[j] = 0.5 * Complex(mean_re, mean_im);
    if (count > 1.5) {
      const double var_re = std::max(0.0, (sum_re2[j] / count - mean_re * mean_re)) / (count - 1.0);
      const double var_im = std::max(0.0, (sum_im2[j] / count - mean_im * mean_im)) / (count - 1.0);
      stats.stderr_re[j] = 0.5 * std::sqrt(var_re);
      stats.stderr_im[j] = 0.5 * std::sqrt(var_im);
    }
  }
  return stats;
}

std::vector<Complex> noise_coherence(const std::vector<NoiseTrajectory>& trajectories,
                                     int prep, double tau_us, double max_t_us) {
  return noise_coherence_stats(trajectories, prep, tau_us, max_t_us).mean;
}

}  // namespace qee
