#include <doctest.h>

#include <cmath>
#include <cstring>

#include "qee/noise.hpp"

using namespace qee;

namespace {

NoiseProcess ou_process(double sigma, double corr_time, double mean = 0.0,
                        std::uint64_t seed = 123) {
  NoiseProcess process;
  process.kind = NoiseKind::ornstein_uhlenbeck;
  process.sigma_rad_us = sigma;
  process.corr_time_us = corr_time;
  process.mean_rad_us = mean;
  process.seed = seed;
  return process;
}

double lag1_autocorrelation(const std::vector<NoiseTrajectory>& trajectories, double mean) {
  double num = 0.0, den = 0.0;
  for (const auto& traj : trajectories) {
    for (std::size_t j = 0; j + 1 < traj.samples.size(); ++j) {
      num += (traj.samples[j] - mean) * (traj.samples[j + 1] - mean);
      den += (traj.samples[j] - mean) * (traj.samples[j] - mean);
    }
  }
  return num / den;
}

}  // namespace

TEST_CASE("zero-sigma process is the constant mean") {
  const auto trajs = sample_trajectories(ou_process(0.0, 1.0, 0.7), 0.05, 2.0, 20);
  for (const auto& traj : trajs) {
    for (double x : traj.samples) CHECK(x == 0.7);
  }
}

TEST_CASE("trajectory sampling is deterministic per seed and validates input") {
  const NoiseProcess process = ou_process(1.0, 0.5);
  const auto a = sample_trajectories(process, 0.02, 1.0, 5);
  const auto b = sample_trajectories(process, 0.02, 1.0, 5);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].samples == b[i].samples);
  }

  CHECK_THROWS_AS(sample_trajectories(process, 0.0, 1.0, 5), ValidationError);
  CHECK_THROWS_AS(sample_trajectories(process, 0.1, 0.05, 5), ValidationError);
  CHECK_THROWS_AS(sample_trajectories(process, 0.1, 1.0, 0), ValidationError);
  NoiseProcess bad = process;
  bad.corr_time_us = 0.0;
  CHECK_THROWS_AS(sample_trajectories(bad, 0.1, 1.0, 5), ValidationError);
}

TEST_CASE("OU lag-1 autocorrelation matches the exact discretization") {
  const double dt = 0.05, corr_time = 0.5;
  const auto trajs = sample_trajectories(ou_process(1.0, corr_time, 0.0, 2024), dt, 2.0, 10000);
  const double expected = std::exp(-dt / corr_time);
  std::size_t pairs = trajs.size() * (trajs.front().samples.size() - 1);
  const double sigma_est = 1.0 / std::sqrt(static_cast<double>(pairs));
  CHECK(std::abs(lag1_autocorrelation(trajs, 0.0) - expected) < 4.0 * sigma_est);
}

TEST_CASE("OU with huge correlation time behaves as a static offset") {
  const auto trajs = sample_trajectories(ou_process(1.0, 1e9, 0.0, 5), 0.1, 5.0, 2000);
  CHECK(lag1_autocorrelation(trajs, 0.0) > 0.999);
}

TEST_CASE("telegraph noise switches between two levels with the right correlation") {
  NoiseProcess process = ou_process(0.8, 0.5, 0.2, 31);
  process.kind = NoiseKind::random_telegraph;
  const double dt = 0.05;
  const auto trajs = sample_trajectories(process, dt, 2.0, 10000);
  for (const auto& traj : trajs) {
    for (double x : traj.samples) {
      CHECK((x == 0.2 + 0.8 || x == 0.2 - 0.8));
    }
  }
  const double expected = std::exp(-dt / process.corr_time_us);
  std::size_t pairs = trajs.size() * (trajs.front().samples.size() - 1);
  CHECK(std::abs(lag1_autocorrelation(trajs, 0.2) - expected) <
        4.0 / std::sqrt(static_cast<double>(pairs)));
}

TEST_CASE("noiseless coherence stays at one half") {
  const auto trajs = sample_trajectories(ou_process(0.0, 1.0, 0.0), 0.05, 2.0, 10);
  const auto coherence = noise_coherence(trajs, 0, 0.0);
  for (const Complex& c : coherence) {
    CHECK(c == Complex(0.5, 0.0));
  }
}

TEST_CASE("prep argument is provably ignored") {
  const auto trajs = sample_trajectories(ou_process(0.7, 0.3, 0.0, 99), 0.01, 1.0, 200);
  const auto c0 = noise_coherence(trajs, 0, 0.0);
  const auto c1 = noise_coherence(trajs, 1, 17.5);
  REQUIRE(c0.size() == c1.size());
  CHECK(std::memcmp(c0.data(), c1.data(), c0.size() * sizeof(Complex)) == 0);
}

TEST_CASE("static Gaussian limit reproduces the Gaussian decay") {
  const double sigma = 0.6;
  const auto trajs = sample_trajectories(ou_process(sigma, 1e12, 0.0, 404), 0.05, 4.0, 20000);
  const auto stats = noise_coherence_stats(trajs, 0, 0.0);
  for (std::size_t j : {20UL, 40UL, 80UL}) {
    const double t = 0.05 * static_cast<double>(j);
    const double expected = 0.5 * std::exp(-0.5 * sigma * sigma * t * t);
    const double tolerance = 4.0 * (stats.stderr_re[j] + stats.stderr_im[j]) + 1e-9;
    CHECK(std::abs(stats.mean[j] - Complex(expected, 0.0)) < tolerance);
  }
}

TEST_CASE("motional narrowing follows the exact OU attenuation") {
  const double sigma = 1.0, corr_time = 0.2, dt = 0.01;
  const auto trajs = sample_trajectories(ou_process(sigma, corr_time, 0.0, 777), dt, 6.0, 20000);
  const auto stats = noise_coherence_stats(trajs, 0, 0.0);
  for (std::size_t j : {200UL, 400UL, 600UL}) {
    const double t = dt * static_cast<double>(j);
    const double chi = sigma * sigma * corr_time * corr_time *
                       (t / corr_time - 1.0 + std::exp(-t / corr_time));
    const double expected = 0.5 * std::exp(-chi);
    const double tolerance = 4.0 * (stats.stderr_re[j] + stats.stderr_im[j]) + 2e-3;
    CHECK(std::abs(std::abs(stats.mean[j]) - expected) < tolerance);
  }
}

TEST_CASE("estimator standard error scales as the inverse square root of count") {
  const NoiseProcess process = ou_process(0.8, 0.5, 0.0, 2718);
  const double dt = 0.05, horizon = 2.0;
  const std::size_t probe = 30;
  double previous = 0.0;
  int level = 0;
  for (int count : {1000, 10000, 100000}) {
    const auto trajs = sample_trajectories(process, dt, horizon, count);
    const auto stats = noise_coherence_stats(trajs, 0, 0.0);
    const double se = stats.stderr_re[probe];
    if (level > 0) {
      const double ratio = previous / se;
      CHECK(ratio == doctest::Approx(std::sqrt(10.0)).epsilon(0.25));
    }
    previous = se;
    ++level;
  }
}

TEST_CASE("coherence estimation validates its inputs") {
  auto trajs = sample_trajectories(ou_process(0.5, 0.5), 0.05, 1.0, 4);
  CHECK_THROWS_AS(noise_coherence(trajs, 2, 0.0), ValidationError);
  CHECK_THROWS_AS(noise_coherence(trajs, 0, -1.0), ValidationError);
  CHECK_THROWS_AS(noise_coherence({}, 0, 0.0), ValidationError);

  // Evaluation horizon may be shortened but not extended past the samples.
  CHECK(noise_coherence(trajs, 0, 0.0, 0.5).size() == 11);
  CHECK_THROWS_AS(noise_coherence(trajs, 0, 0.0, 3.0), ValidationError);

  trajs[1].samples.pop_back();
  CHECK_THROWS_AS(noise_coherence(trajs, 0, 0.0), ValidationError);
}

TEST_CASE("coherence magnitude bounded by one half") {
  const auto trajs = sample_trajectories(ou_process(1.5, 0.4, 0.3, 6), 0.02, 3.0, 500);
  for (const Complex& c : noise_coherence(trajs, 0, 0.0)) {
    CHECK(std::abs(c) <= 0.5 + 1e-12);
  }
}
