#include "kahler/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>

namespace kahler::cli {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_record(std::ostream& out, const FlowRecord& r) {
  const double cols[] = {r.t,        r.nu,       r.e1,     r.dirichlet, r.residual,
                         r.scal_min, r.scal_max, r.futaki, r.min_a_hat, r.min_b_hat};
  for (std::size_t i = 0; i < std::size(cols); ++i) out << (i ? "," : "") << g17(cols[i]);
  out << '\n';
}

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

FlowSummary summarize(const FlowTrace& trace, double c_omega, const Tolerances& tol) {
  FlowSummary s;
  s.c_omega = c_omega;
  s.residual_tolerance = tol.flow_residual * (1.0 + std::abs(c_omega));
  s.worst_inequality = trace.records.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const FlowRecord& r = trace.records[i];
    s.max_residual_deviation = std::max(s.max_residual_deviation, std::abs(r.residual - c_omega));
    s.worst_inequality = std::min(s.worst_inequality, r.e1 - 2.0 * r.nu - c_omega);
    if (i > 0) {
      const double prev = trace.records[i - 1].nu;
      s.worst_nu_increase = std::max(s.worst_nu_increase, (r.nu - prev) / (1.0 + std::abs(prev)));
    }
  }
  s.residual_ok = s.max_residual_deviation <= s.residual_tolerance;
  s.nu_monotone = s.worst_nu_increase <= tol.monotone;
  s.inequality_ok = s.worst_inequality >= -tol.inequality;
  return s;
}

void write_trace(std::ostream& out, const FlowTrace& trace, const FlowSummary& summary) {
  out << kTraceHeader << '\n';
  for (const FlowRecord& r : trace.records) write_record(out, r);
  out << "# summary\n";
  out << "# c_omega," << g17(summary.c_omega) << '\n';
  out << "# max_residual_deviation," << g17(summary.max_residual_deviation) << ','
      << verdict(summary.residual_ok) << '\n';
  out << "# nu_monotone," << g17(summary.worst_nu_increase) << ',' << verdict(summary.nu_monotone) << '\n';
  out << "# inequality," << g17(summary.worst_inequality) << ',' << verdict(summary.inequality_ok) << '\n';
  out << "# steps," << trace.accepted_steps << ',' << trace.rejected_steps << '\n';
  out << "# final_offset," << g17(trace.final_offset) << '\n';
  if (trace.aborted) out << "# aborted," << trace.diagnostic << '\n';
}

std::vector<double> parse_coefficients(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const std::size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty() && item.front() == '+') item.remove_prefix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size() || !std::isfinite(v))
      throw ConfigError("bad coefficient list: '" + std::string(text) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

int cmd_verify(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  try {
    rc = load_run_config(config);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const SuiteReport report = run_suite(rc.suite);
  const std::string text = report.to_text();
  out << text;
  if (!rc.output.report.empty()) {
    std::ofstream file(rc.output.report);
    if (!(file << text)) {
      err << "cannot write report " << rc.output.report << '\n';
      return kExitFailure;
    }
  }
  return report.passed() ? kExitPass : kExitFailure;
}

int cmd_flow(const std::filesystem::path& config, const std::filesystem::path& trace_path, std::ostream& out,
             std::ostream& err) {
  RunConfig rc;
  std::optional<Reference> ref;
  FlowConfig fc;
  try {
    rc = load_run_config(config);
    ref.emplace(make_reference(rc));
    fc = flow_config(rc, *ref);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NotInPotentialSpace& e) {
    err << "config error: potential: " << e.what() << '\n';
    return kExitConfig;
  }

  const FlowTrace trace = run(*ref, fc);
  const FlowSummary summary = summarize(trace, c_omega_estimate(*ref), rc.suite.tol);

  std::ofstream file(trace_path);
  write_trace(file, trace, summary);
  if (!file) {
    err << "cannot write trace " << trace_path.string() << '\n';
    return kExitFailure;
  }
  out << "records " << trace.records.size() << ", accepted steps " << trace.accepted_steps << ", rejected "
      << trace.rejected_steps << '\n'
      << "c_omega " << g17(summary.c_omega) << '\n'
      << "max residual deviation " << g17(summary.max_residual_deviation) << ' ' << verdict(summary.residual_ok)
      << '\n'
      << "nu monotone " << verdict(summary.nu_monotone) << '\n'
      << "inequality " << verdict(summary.inequality_ok) << '\n';
  if (trace.aborted) {
    err << "flow aborted: " << trace.diagnostic << '\n';
    return kExitFailure;
  }
  return summary.inequality_ok ? kExitPass : kExitFailure;
}

int cmd_eval(const std::filesystem::path& config, std::string_view phi, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  std::optional<Reference> ref;
  std::vector<double> coeffs;
  try {
    rc = load_run_config(config);
    coeffs = parse_coefficients(phi);
    ref.emplace(make_reference(rc));
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const Profile values = RadialPotential(coeffs).values(ref->state().grid());
  FunctionalReport report;
  MetricState state = ref->state();
  try {
    state = relative_state(*ref, values);
    report = evaluate(*ref, values, energy_coefficients(rc));
  } catch (const NotInPotentialSpace& e) {
    err << "NotInPotentialSpace: " << e.what() << '\n';
    return kExitFailure;
  }
  const std::pair<const char*, double> rows[] = {
      {"j", report.j},
      {"j_mixed", report.j_mixed},
      {"nu", report.nu},
      {"e1", report.e1},
      {"dirichlet", report.dirichlet},
      {"residual", report.residual},
      {"futaki", report.futaki},
      {"min_Ahat", state.a_hat().min()},
      {"min_Bhat", state.b_hat().min()},
  };
  out << "quantity,value\n";
  for (const auto& [name, value] : rows) out << name << ',' << g17(value) << '\n';
  return kExitPass;
}

}  // namespace kahler::cli
