#include "qee/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace qee {

std::string format_full_precision(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::ofstream open_or_throw(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot open output file " + path.string());
  }
  return out;
}

}  // namespace

void write_trace_csv(const std::filesystem::path& path, const ProtocolTrace& trace) {
  std::ofstream out = open_or_throw(path);
  out << "tau_us,t_us,re_rho0,im_rho0,re_rho1,im_rho1,re_dnorm,im_dnorm,abs_rho0,abs_rho1\n";
  const std::size_t row_len = trace.diagonal ? 1 : trace.t_us.size();
  for (std::size_t r = 0; r < trace.tau_us.size(); ++r) {
    for (std::size_t ti = 0; ti < row_len; ++ti) {
      const std::size_t idx = r * row_len + ti;
      const double t = trace.diagonal ? trace.tau_us[r] : trace.t_us[ti];
      out << format_full_precision(trace.tau_us[r]) << ','
          << format_full_precision(t) << ','
          << format_full_precision(trace.rho0[idx].real()) << ','
          << format_full_precision(trace.rho0[idx].imag()) << ','
          << format_full_precision(trace.rho1[idx].real()) << ','
          << format_full_precision(trace.rho1[idx].imag()) << ','
          << format_full_precision(trace.delta_norm[idx].real()) << ','
          << format_full_precision(trace.delta_norm[idx].imag()) << ','
          << format_full_precision(std::abs(trace.rho0[idx])) << ','
          << format_full_precision(std::abs(trace.rho1[idx])) << '\n';
    }
  }
  if (!out) {
    throw ValidationError("write failed for " + path.string());
  }
}

void write_echo_csv(const std::filesystem::path& path, std::span<const double> tau_grid_us,
                    std::span<const Complex> echo) {
  if (tau_grid_us.size() != echo.size()) {
    throw ValidationError("write_echo_csv: grid/value size mismatch");
  }
  std::ofstream out = open_or_throw(path);
  out << "tau_us,re_echo,im_echo,abs_echo\n";
  for (std::size_t i = 0; i < echo.size(); ++i) {
    out << format_full_precision(tau_grid_us[i]) << ','
        << format_full_precision(echo[i].real()) << ','
        << format_full_precision(echo[i].imag()) << ','
        << format_full_precision(std::abs(echo[i])) << '\n';
  }
  if (!out) {
    throw ValidationError("write failed for " + path.string());
  }
}

void write_entanglement_report(const std::filesystem::path& path,
                               std::span<const EntanglementReport> reports) {
  std::ofstream out = open_or_throw(path);
  for (const EntanglementReport& report : reports) {
    out << "{\"tau_us\": " << format_full_precision(report.tau_us)
        << ", \"distance\": " << format_full_precision(report.distance)
        << ", \"qee_detected\": " << (report.qee_detected ? "true" : "false")
        << ", \"tolerance\": " << format_full_precision(report.tolerance_used) << "}\n";
  }
  if (!out) {
    throw ValidationError("write failed for " + path.string());
  }
}

}  // namespace qee
