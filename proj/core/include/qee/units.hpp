#pragma once

namespace qee {

// Unit conventions used throughout: times in microseconds, Hamiltonian matrix
// elements and all couplings in angular frequency units rad/us (hbar = 1),
// distances in nm, magnetic field stored in tesla.

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline constexpr double kMu0Over4Pi = 1e-7;            // T^2 m^3 / J
inline constexpr double kPlanckH = 6.62607015e-34;     // J s

// Gyromagnetic ratios (gamma/2pi) for the NV electron spin and 13C nuclei.
inline constexpr double kGammaElectronGHzPerT = 28.02;
inline constexpr double kGammaCarbon13MHzPerT = 10.71;

inline constexpr double gauss_to_tesla(double gauss) { return gauss * 1e-4; }

/// Nuclear Larmor angular frequency in rad/us for gamma in MHz/T, field in T.
inline constexpr double larmor_rad_per_us(double gamma_n_mhz_per_t, double b_tesla) {
  return kTwoPi * gamma_n_mhz_per_t * b_tesla;
}

/// Secular dipolar coupling scale (mu0/4pi) * 2*pi*h * gamma_e * gamma_n / r^3,
/// in rad/us for gammas in GHz/T and MHz/T and distance in nm.
/// At 1 nm with the NV/13C gammas this is 2*pi * 19.88 kHz = 0.1249 rad/us.
inline double dipolar_prefactor_rad_per_us(double gamma_e_ghz_per_t,
                                           double gamma_n_mhz_per_t,
                                           double r_nm) {
  const double gamma_e_hz = gamma_e_ghz_per_t * 1e9;
  const double gamma_n_hz = gamma_n_mhz_per_t * 1e6;
  const double r_m = r_nm * 1e-9;
  const double f_hz = kMu0Over4Pi * kPlanckH * gamma_e_hz * gamma_n_hz / (r_m * r_m * r_m);
  return kTwoPi * f_hz * 1e-6;
}

}  // namespace qee
