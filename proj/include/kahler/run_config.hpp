#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kahler/verification.hpp"

namespace kahler {

// A potential given either by monomial coefficients or drawn at random.
struct PotentialSpec {
  std::vector<double> coefficients{0.0};
  bool random = false;
  std::uint64_t seed = 1;
  SamplingOptions sampling;
};

struct FlowSettings {
  double t_max = 10.0;
  double dt_init = 0.0;
  double dt_safety = 0.5;
  int record_every = 100;
  Representation representation = Representation::kNodal;
  int poly_degree = 24;
};

struct OutputPaths {
  std::string report;  // empty: stdout only
  std::string trace;
};

struct RunConfig {
  int dimension = 1;
  int grid_size = 1024;
  std::vector<double> reference{0.0};  // reference potential relative to Fubini–Study
  PotentialSpec potential;             // initial φ for flow, relative to the reference
  FlowSettings flow;
  SuiteConfig suite;  // n, grid_size and seed are copied from the top level
  OutputPaths output;
};

// JSON text with nested sections. Every key is optional; unknown keys, wrong
// types and out-of-range values raise ConfigError.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

ManifoldConfig manifold_config(const RunConfig& config);
// Throws ConfigError if the reference potential is not admissible. Carries
// the mutation's normalization shift.
Reference make_reference(const RunConfig& config);
// Canonical coefficients with the mutation's b1 shift.
EnergyCoefficients energy_coefficients(const RunConfig& config);
Profile initial_potential(const RunConfig& config, const Reference& ref);
FlowConfig flow_config(const RunConfig& config, const Reference& ref);

}  // namespace kahler
