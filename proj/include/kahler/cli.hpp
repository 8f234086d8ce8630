#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kahler/run_config.hpp"

namespace kahler::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

inline constexpr std::string_view kTraceHeader =
    "t,nu,e1,dirichlet,residual,scal_min,scal_max,futaki,min_Ahat,min_Bhat";

struct FlowSummary {
  double c_omega = 0.0;
  double max_residual_deviation = 0.0;
  double residual_tolerance = 0.0;  // absolute, already scaled by 1 + |C_ω|
  double worst_nu_increase = 0.0;   // largest relative rise between records
  double worst_inequality = 0.0;    // min of e1 - 2 nu - C_ω over records
  bool residual_ok = false;
  bool nu_monotone = false;
  bool inequality_ok = false;
};

FlowSummary summarize(const FlowTrace& trace, double c_omega, const Tolerances& tol);

// Trace CSV with the summary appended as '#' comment lines.
void write_trace(std::ostream& out, const FlowTrace& trace, const FlowSummary& summary);

// "0.1,-0.2" -> {0.1, -0.2}; ConfigError on anything else.
std::vector<double> parse_coefficients(std::string_view text);

int cmd_verify(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int cmd_flow(const std::filesystem::path& config, const std::filesystem::path& trace_path, std::ostream& out,
             std::ostream& err);
int cmd_eval(const std::filesystem::path& config, std::string_view phi, std::ostream& out, std::ostream& err);

}  // namespace kahler::cli
