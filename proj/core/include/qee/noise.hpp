#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qee/errors.hpp"
#include "qee/quantum.hpp"

namespace qee {

enum class NoiseKind { ornstein_uhlenbeck, random_telegraph };

/// Stationary classical field acting on the qubit splitting. sigma is the
/// stationary standard deviation, corr_time the 1/e autocorrelation time.
struct NoiseProcess {
  NoiseKind kind = NoiseKind::ornstein_uhlenbeck;
  double sigma_rad_us = 0.0;
  double corr_time_us = 1.0;
  double mean_rad_us = 0.0;
  std::uint64_t seed = 0;
};

struct NoiseTrajectory {
  double dt_us = 0.0;
  std::vector<double> samples;
};

/// `count` independent stationary trajectories on a uniform grid covering
/// [0, horizon]. Exact-discretization updates; per-trajectory sub-seeds are
/// derived from the master seed, so the result is independent of evaluation
/// order. Emits a warning to stderr when dt > corr_time/20.
std::vector<NoiseTrajectory> sample_trajectories(const NoiseProcess& process, double dt_us,
                                                 double horizon_us, int count);

/// Marks "evaluate over the whole trajectory grid".
inline constexpr double kFullHorizon = -1.0;

/// Monte Carlo coherence (1/2)<exp(-i integral_0^t dxi)> on the trajectory
/// sample grid, trapezoidal phase integral; the phase integral starts at the
/// superposition-creation instant and the deterministic splitting phase is
/// dropped (rotating frame, as in the quantum modules). The prep and tau
/// arguments are accepted and ignored: a qubit-independent field cannot
/// distinguish the preparations, so both branches are the same code path by
/// construction. Requesting max_t_us beyond the sampled horizon is an error.
std::vector<Complex> noise_coherence(const std::vector<NoiseTrajectory>& trajectories,
                                     int prep, double tau_us,
                                     double max_t_us = kFullHorizon);

/// Same estimator plus per-point standard errors of the real and imaginary
/// parts (for statistical acceptance tests).
struct NoiseCoherenceStats {
  std::vector<Complex> mean;
  std::vector<double> stderr_re;
  std::vector<double> stderr_im;
};
NoiseCoherenceStats noise_coherence_stats(const std::vector<NoiseTrajectory>& trajectories,
                                          int prep, double tau_us,
                                          double max_t_us = kFullHorizon);

}  // namespace qee
