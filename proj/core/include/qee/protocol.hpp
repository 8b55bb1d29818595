#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qee/dephasing.hpp"
#include "qee/nv_bath.hpp"

namespace qee {

namespace detail {

// SU(2) element s*1 - i*(v . sigma), |s|^2 + |v|^2 = 1. Products follow the
// quaternion rule, so the whole per-spin evolution stays in real arithmetic.
struct Su2 {
  double s = 1.0;
  double vx = 0.0, vy = 0.0, vz = 0.0;
};

inline Su2 su2_mul(const Su2& a, const Su2& b) {
  return {a.s * b.s - (a.vx * b.vx + a.vy * b.vy + a.vz * b.vz),
          a.s * b.vx + b.s * a.vx + (a.vy * b.vz - a.vz * b.vy),
          a.s * b.vy + b.s * a.vy + (a.vz * b.vx - a.vx * b.vz),
          a.s * b.vz + b.s * a.vz + (a.vx * b.vy - a.vy * b.vx)};
}

inline Su2 su2_dagger(const Su2& a) { return {a.s, -a.vx, -a.vy, -a.vz}; }

/// exp(-i t (b . sigma)/2) for generator vector b (axis-angle form).
inline Su2 su2_exp(double bx, double by, double bz, double t) {
  const double norm = std::sqrt(bx * bx + by * by + bz * bz);
  if (norm == 0.0) return {};
  const double half = 0.5 * norm * t;
  const double f = std::sin(half) / norm;
  return {std::cos(half), f * bx, f * by, f * bz};
}

/// Image of the z axis under the rotation carried by u (third column of the
/// corresponding SO(3) matrix).
inline void rotate_z(const Su2& u, double& mx, double& my, double& mz) {
  mx = 2.0 * (u.vx * u.vz + u.s * u.vy);
  my = 2.0 * (u.vy * u.vz - u.s * u.vx);
  mz = 1.0 - 2.0 * (u.vx * u.vx + u.vy * u.vy);
}

// Per-spin precomputed generators: u0 rotates about z at the bare Larmor
// frequency, u1 about (A_zx, A_zy, omega + A_zz).
struct SpinKernel {
  double omega = 0.0;                      // rad/us
  double b1x = 0.0, b1y = 0.0, b1z = 0.0;  // rad/us
  double p = 0.0;

  explicit SpinKernel(const BathSpin& spin)
      : omega(spin.larmor_rad_us),
        b1x(spin.hyperfine.x()),
        b1y(spin.hyperfine.y()),
        b1z(spin.larmor_rad_us + spin.hyperfine.z()),
        p(spin.polarization) {}

  Su2 u0(double t) const { return su2_exp(0.0, 0.0, omega, t); }
  Su2 u1(double t) const { return su2_exp(b1x, b1y, b1z, t); }
};

}  // namespace detail

/// The two single-spin coherence factors at one grid point.
struct SpinFactor {
  Complex l0{1.0, 0.0};
  Complex l1{1.0, 0.0};
};

/// L_k^(prep)(tau,t) = Tr(u0(t) u_prep(tau) rho_k u_prep^+(tau) u1^+(t)) with
/// rho_k = (1 + p_k sigma_z)/2, evaluated in closed axis-angle form.
SpinFactor spin_factor_pair(const BathSpin& spin, double tau_us, double t_us);
Complex spin_factor(const BathSpin& spin, int prep, double tau_us, double t_us);

/// Single-spin echo factor Tr(u1(tau) u0(tau) rho_k u1^+(tau) u0^+(tau)).
Complex echo_factor(const BathSpin& spin, double tau_us);

/// Closed form for L^(0) - L^(1) of a single spin with A_zy = 0:
///   -2i p (A_x/w_xz)^2 sin(w_xz tau/2) sin(w t/2) sin(w_xz (tau+t)/2),
/// w_xz = sqrt(A_x^2 + (A_z + w)^2). Purely imaginary; vanishes when p = 0,
/// A_x = 0 or tau = 0. Degenerate w_xz = 0 is refused.
Complex delta_L_analytic(double p, double a_x_rad_us, double a_z_rad_us,
                         double omega_rad_us, double tau_us, double t_us);

/// Inclusive-endpoint time grids; `diagonal` restricts evaluation to t = tau.
struct GridSpec {
  double tau_min_us = 0.0;
  double tau_max_us = 40.0;
  int tau_steps = 200;
  double t_min_us = 0.0;
  double t_max_us = 40.0;
  int t_steps = 200;
  bool diagonal = false;

  std::vector<double> tau_grid() const;
  std::vector<double> t_grid() const;  // equals tau_grid() in diagonal mode
  std::size_t points() const;
};

struct TraceMeta {
  std::string bath_ref;
  double b_z_tesla = 0.0;
  std::uint64_t seed = 0;
};

/// Gridded record of the two protocol coherences and their normalized
/// difference delta_norm = 2*(rho0 - rho1) (the tau,0 coherence is 1/2).
/// Values are row-major: tau outer, t inner.
struct ProtocolTrace {
  std::vector<double> tau_us;
  std::vector<double> t_us;
  bool diagonal = false;
  std::vector<Complex> rho0;
  std::vector<Complex> rho1;
  std::vector<Complex> delta_norm;
  TraceMeta meta;
};

struct TraceOptions {
  int threads = 1;
};

/// rho_prep(tau,t) = (1/2) * prod_k L_k^(prep), product in ascending spin
/// index. Grid points are independent; the result is bitwise identical for
/// any worker count.
ProtocolTrace protocol_trace(std::span<const BathSpin> bath, const GridSpec& grid,
                             const TraceOptions& options = {});

/// Per-tau echo coherence (1/2) * prod_k echo factors.
std::vector<Complex> echo_trace(std::span<const BathSpin> bath,
                                std::span<const double> tau_grid_us, int threads = 1);

/// Relative Frobenius distance ||A - B||_F / ||R(0)||_F between the two
/// conditionally evolved product states of the whole bath at tau. Factorized
/// inner products keep it exact at full bath size; the normalization keeps it
/// O(1) there (the raw distance shrinks as 2^(-N/2) for mixed baths).
/// Zero iff the states coincide; at most sqrt(2).
double criterion_distance(std::span<const BathSpin> bath, double tau_us);

// Bridges to the dense-matrix oracle path (small baths only).
PureDephasingModel joint_model(std::span<const BathSpin> bath,
                               Eigen::Index dim_cap = kKronDimCap);
EnvState joint_env_state(std::span<const BathSpin> bath,
                         Eigen::Index dim_cap = kKronDimCap);

}  // namespace qee
