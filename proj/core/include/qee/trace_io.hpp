#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "qee/dephasing.hpp"
#include "qee/protocol.hpp"

namespace qee {

// Plot-ready CSV with the fixed column set
//   tau_us,t_us,re_rho0,im_rho0,re_rho1,im_rho1,re_dnorm,im_dnorm,abs_rho0,abs_rho1
// one row per grid point, row-major in tau then t, 17 significant digits.
void write_trace_csv(const std::filesystem::path& path, const ProtocolTrace& trace);

/// Echo CSV: tau_us,re_echo,im_echo,abs_echo.
void write_echo_csv(const std::filesystem::path& path, std::span<const double> tau_grid_us,
                    std::span<const Complex> echo);

/// One JSON object per line: {"tau_us": ..., "distance": ..., "qee_detected": ...,
/// "tolerance": ...}.
void write_entanglement_report(const std::filesystem::path& path,
                               std::span<const EntanglementReport> reports);

/// 17-significant-digit decimal formatting shared by all writers.
std::string format_full_precision(double value);

}  // namespace qee
