#include "qee/protocol.hpp"

#include <algorithm>
#include <thread>

namespace qee {

namespace {

using detail::SpinKernel;
using detail::Su2;

std::vector<double> linspace(double lo, double hi, int steps, const char* name) {
  if (steps < 1) {
    throw ValidationError(std::string(name) + ": steps must be >= 1");
  }
  if (!(hi >= lo) || !(lo >= 0.0) || !std::isfinite(hi)) {
    throw ValidationError(std::string(name) + ": need 0 <= min <= max, finite");
  }
  std::vector<double> grid(static_cast<std::size_t>(steps));
  if (steps == 1) {
    grid[0] = lo;
    return grid;
  }
  const double span = hi - lo;
  for (int i = 0; i < steps; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + span * i / (steps - 1);
  }
  return grid;
}

/// Runs fn(chunk_begin, chunk_end) over [0, n) split into contiguous chunks,
/// one per worker. Chunking never changes any per-index result.
template <typename Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers =
      std::clamp<std::size_t>(threads < 1 ? 1 : static_cast<std::size_t>(threads), 1, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

SpinFactor spin_factor_pair(const BathSpin& spin, double tau_us, double t_us) {
  if (!(tau_us >= 0.0) || !(t_us >= 0.0)) {
    throw ValidationError("spin_factor: tau and t must be >= 0");
  }
  const SpinKernel k(spin);
  const Su2 w = detail::su2_mul(detail::su2_dagger(k.u1(t_us)), k.u0(t_us));
  double m1x, m1y, m1z;
  detail::rotate_z(k.u1(tau_us), m1x, m1y, m1z);
  SpinFactor f;
  // L = s_w - i p (m . v_w); the prep-0 axis stays on z.
  f.l0 = Complex(w.s, -k.p * w.vz);
  f.l1 = Complex(w.s, -k.p * (m1x * w.vx + m1y * w.vy + m1z * w.vz));
  return f;
}

Complex spin_factor(const BathSpin& spin, int prep, double tau_us, double t_us) {
  if (prep != 0 && prep != 1) {
    throw ValidationError("spin_factor: prep must be 0 or 1");
  }
  const SpinFactor f = spin_factor_pair(spin, tau_us, t_us);
  return prep == 0 ? f.l0 : f.l1;
}

Complex echo_factor(const BathSpin& spin, double tau_us) {
  if (!(tau_us >= 0.0)) {
    throw ValidationError("echo_factor: tau must be >= 0");
  }
  const SpinKernel k(spin);
  const Su2 u0 = k.u0(tau_us);
  const Su2 u1 = k.u1(tau_us);
  const Su2 fwd = detail::su2_mul(u1, u0);
  const Su2 rev = detail::su2_mul(detail::su2_dagger(u1), detail::su2_dagger(u0));
  const Su2 p = detail::su2_mul(rev, fwd);
  return Complex(p.s, -k.p * p.vz);
}

Complex delta_L_analytic(double p, double a_x_rad_us, double a_z_rad_us,
                         double omega_rad_us, double tau_us, double t_us) {
  const double w_xz = std::hypot(a_x_rad_us, a_z_rad_us + omega_rad_us);
  if (w_xz == 0.0) {
    throw ValidationError("delta_L_analytic: degenerate w_xz = 0");
  }
  const double scale = (a_x_rad_us / w_xz) * (a_x_rad_us / w_xz);
  const double sines = std::sin(0.5 * w_xz * tau_us) * std::sin(0.5 * omega_rad_us * t_us) *
                       std::sin(0.5 * w_xz * (tau_us + t_us));
  return Complex(0.0, -2.0 * p * scale * sines);
}

std::vector<double> GridSpec::tau_grid() const {
  return linspace(tau_min_us, tau_max_us, tau_steps, "tau grid");
}

std::vector<double> GridSpec::t_grid() const {
  if (diagonal) return tau_grid();
  return linspace(t_min_us, t_max_us, t_steps, "t grid");
}

std::size_t GridSpec::points() const {
  return diagonal ? static_cast<std::size_t>(tau_steps)
                  : static_cast<std::size_t>(tau_steps) * static_cast<std::size_t>(t_steps);
}

ProtocolTrace protocol_trace(std::span<const BathSpin> bath, const GridSpec& grid,
                             const TraceOptions& options) {
  if (bath.empty()) {
    throw ValidationError("protocol_trace: empty bath");
  }
  ProtocolTrace trace;
  trace.tau_us = grid.tau_grid();
  trace.t_us = grid.t_grid();
  trace.diagonal = grid.diagonal;

  const std::size_t n_rows = trace.tau_us.size();
  const std::size_t row_len = grid.diagonal ? 1 : trace.t_us.size();
  trace.rho0.resize(n_rows * row_len);
  trace.rho1.resize(n_rows * row_len);
  trace.delta_norm.resize(n_rows * row_len);

  std::vector<SpinKernel> kernels;
  kernels.reserve(bath.size());
  for (const BathSpin& spin : bath) kernels.emplace_back(spin);
  const std::size_t n_spins = kernels.size();

  parallel_chunks(n_rows, options.threads, [&](std::size_t row_begin, std::size_t row_end) {
    std::vector<double> m1(3 * n_spins);
    for (std::size_t r = row_begin; r < row_end; ++r) {
      const double tau = trace.tau_us[r];
      for (std::size_t k = 0; k < n_spins; ++k) {
        detail::rotate_z(kernels[k].u1(tau), m1[3 * k], m1[3 * k + 1], m1[3 * k + 2]);
      }
      for (std::size_t ti = 0; ti < row_len; ++ti) {
        const double t = grid.diagonal ? tau : trace.t_us[ti];
        Complex prod0(1.0, 0.0);
        Complex prod1(1.0, 0.0);
        for (std::size_t k = 0; k < n_spins; ++k) {
          const SpinKernel& kern = kernels[k];
          const Su2 w = detail::su2_mul(detail::su2_dagger(kern.u1(t)), kern.u0(t));
          const double mv =
              m1[3 * k] * w.vx + m1[3 * k + 1] * w.vy + m1[3 * k + 2] * w.vz;
          prod0 *= Complex(w.s, -kern.p * w.vz);
          prod1 *= Complex(w.s, -kern.p * mv);
        }
        const std::size_t idx = r * row_len + ti;
        trace.rho0[idx] = 0.5 * prod0;
        trace.rho1[idx] = 0.5 * prod1;
        trace.delta_norm[idx] = 2.0 * (trace.rho0[idx] - trace.rho1[idx]);
      }
    }
  });
  return trace;
}

std::vector<Complex> echo_trace(std::span<const BathSpin> bath,
                                std::span<const double> tau_grid_us, int threads) {
  if (bath.empty() || tau_grid_us.empty()) {
    throw ValidationError("echo_trace: empty bath or grid");
  }
  std::vector<Complex> echo(tau_grid_us.size());
  parallel_chunks(tau_grid_us.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Complex prod(1.0, 0.0);
      for (const BathSpin& spin : bath) {
        prod *= echo_factor(spin, tau_grid_us[i]);
      }
      echo[i] = 0.5 * prod;
    }
  });
  return echo;
}

double criterion_distance(std::span<const BathSpin> bath, double tau_us) {
  if (bath.empty()) {
    throw ValidationError("criterion_distance: empty bath");
  }
  if (!(tau_us >= 0.0)) {
    throw ValidationError("criterion_distance: tau must be >= 0");
  }
  // For product states, Frobenius inner products factorize over spins:
  // per spin Tr(A_k^2) = Tr(B_k^2) = (1+p^2)/2 and Tr(A_k B_k) =
  // (1 + p^2 z.m1)/2 for the conditionally rotated z axis m1. The raw
  // ||A - B||_F shrinks as 2^(-N/2) with bath size (states of a large mixed
  // bath have tiny norms), so the useful, scale-free quantity is
  // ||A - B||_F / ||R(0)||_F = sqrt(2 (1 - prod Tr(A_k B_k)/Tr(A_k^2))).
  // Same zero set, bounded by sqrt(2), no underflow at any bath size.
  double overlap_ratio = 1.0;
  for (const BathSpin& spin : bath) {
    const SpinKernel k(spin);
    double m1x, m1y, m1z;
    detail::rotate_z(k.u1(tau_us), m1x, m1y, m1z);
    overlap_ratio *= (1.0 + k.p * k.p * m1z) / (1.0 + k.p * k.p);
  }
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - overlap_ratio)));
}

namespace {

ComplexMatrix embed_site(const ComplexMatrix& op, std::size_t site, std::size_t n_spins,
                         Eigen::Index dim_cap) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t k = 0; k < n_spins; ++k) {
    out = kron(out, k == site ? op : ComplexMatrix::Identity(2, 2), dim_cap);
  }
  return out;
}

}  // namespace

PureDephasingModel joint_model(std::span<const BathSpin> bath, Eigen::Index dim_cap) {
  if (bath.empty()) {
    throw ValidationError("joint_model: empty bath");
  }
  const std::size_t n = bath.size();
  const ComplexMatrix ix = 0.5 * pauli_x();
  const ComplexMatrix iy = 0.5 * pauli_y();
  const ComplexMatrix iz = 0.5 * pauli_z();

  Eigen::Index dim = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (dim > dim_cap / 2) throw CapacityError("joint_model: environment exceeds cap");
    dim *= 2;
  }

  ComplexMatrix h_env = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix v1 = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < n; ++k) {
    h_env += bath[k].larmor_rad_us * embed_site(iz, k, n, dim_cap);
    v1 += bath[k].hyperfine.x() * embed_site(ix, k, n, dim_cap) +
          bath[k].hyperfine.y() * embed_site(iy, k, n, dim_cap) +
          bath[k].hyperfine.z() * embed_site(iz, k, n, dim_cap);
  }
  return PureDephasingModel(0.0, 0.0, HermitianOperator(h_env),
                            HermitianOperator(ComplexMatrix::Zero(dim, dim)),
                            HermitianOperator(v1));
}

EnvState joint_env_state(std::span<const BathSpin> bath, Eigen::Index dim_cap) {
  if (bath.empty()) {
    throw ValidationError("joint_env_state: empty bath");
  }
  ComplexMatrix rho = ComplexMatrix::Identity(1, 1);
  for (const BathSpin& spin : bath) {
    ComplexMatrix site(2, 2);
    site << 0.5 * (1.0 + spin.polarization), 0.0, 0.0, 0.5 * (1.0 - spin.polarization);
    rho = kron(rho, site, dim_cap);
  }
  return EnvState(std::move(rho));
}

}  // namespace qee
