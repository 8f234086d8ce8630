#include "kahler/run_config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace kahler {

namespace {

using nlohmann::json;

// A JSON object whose keys must all be consumed.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_.empty() ? "top level" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  Section child(const std::string& key) {
    seen_.insert(key);
    return Section(node_.at(key), where(key));
  }

  void read(const std::string& key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) fail(where(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(where(key), "not finite");
    }
  }

  void read(const std::string& key, int& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_integer()) fail(where(key), "expected an integer");
      const auto wide = v->get<long long>();
      if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max())
        fail(where(key), "out of range");
      out = static_cast<int>(wide);
    }
  }

  void read(const std::string& key, std::uint64_t& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_unsigned()) fail(where(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void read(const std::string& key, bool& out) {
    if (const json* v = take(key)) {
      if (!v->is_boolean()) fail(where(key), "expected true or false");
      out = v->get<bool>();
    }
  }

  void read(const std::string& key, std::string& out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) fail(where(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void read(const std::string& key, std::vector<double>& out) {
    if (const json* v = take(key)) {
      if (!v->is_array() || v->empty()) fail(where(key), "expected a non-empty list of numbers");
      out.clear();
      for (const json& e : *v) {
        if (!e.is_number()) fail(where(key), "expected a non-empty list of numbers");
        out.push_back(e.get<double>());
      }
    }
  }

  void read(const std::string& key, Representation& out) {
    std::string name;
    if (!has(key)) return;
    read(key, name);
    if (name == "nodal") {
      out = Representation::kNodal;
    } else if (name == "polynomial") {
      out = Representation::kPolynomial;
    } else {
      fail(where(key), "expected \"nodal\" or \"polynomial\"");
    }
  }

  // Rejects keys nobody asked for.
  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) fail(where(key), "unknown key");
    }
  }

  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
  }

 private:
  const json* take(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) Section::fail(where, what);
}

void read_sampling(Section& s, SamplingOptions& o, const std::string& path) {
  s.read("bound", o.bound);
  s.read("degree", o.degree);
  s.read("margin", o.margin);
  s.read("max_attempts", o.max_attempts);
  require(o.bound > 0.0, path + ".bound", "must be positive");
  require(o.degree >= 1 && o.degree <= 30, path + ".degree", "must be in [1, 30]");
  require(o.margin > 0.0 && o.margin <= 1.0, path + ".margin", "must be in (0, 1]");
  require(o.max_attempts > 0, path + ".max_attempts", "must be positive");
}

void read_potential(Section s, PotentialSpec& p) {
  const bool listed = s.has("coefficients");
  const bool drawn = s.has("random");
  require(!(listed && drawn), "potential", "give either coefficients or random, not both");
  s.read("coefficients", p.coefficients);
  if (drawn) {
    p.random = true;
    Section r = s.child("random");
    r.read("seed", p.seed);
    read_sampling(r, p.sampling, "potential.random");
    r.finish();
  }
  s.finish();
}

void read_tolerances(Section s, Tolerances& t) {
  const std::pair<const char*, double*> fields[] = {
      {"residual_spread", &t.residual_spread},
      {"inequality", &t.inequality},
      {"monotone", &t.monotone},
      {"flow_residual", &t.flow_residual},
      {"scal_final", &t.scal_final},
      {"variational", &t.variational},
      {"cocycle", &t.cocycle},
      {"diagonal", &t.diagonal},
      {"shift", &t.shift},
      {"j_agreement", &t.j_agreement},
      {"j_closed_form", &t.j_closed_form},
      {"h_residual", &t.h_residual},
      {"h_normalization", &t.h_normalization},
      {"h_fubini_study", &t.h_fubini_study},
      {"scal_fubini_study", &t.scal_fubini_study},
      {"scal_average", &t.scal_average},
      {"ricci_class", &t.ricci_class},
      {"futaki", &t.futaki},
  };
  for (const auto& [key, slot] : fields) {
    s.read(key, *slot);
    require(*slot >= 0.0, std::string("tolerances.") + key, "must be non-negative");
  }
  s.finish();
}

void read_suite(Section s, SuiteConfig& c) {
  s.read("samples", c.samples);
  s.read("variational_pairs", c.variational_pairs);
  s.read("cocycle_triples", c.cocycle_triples);
  s.read("futaki_references", c.futaki_references);
  s.read("fd_step", c.fd_step);
  s.read("reference", c.reference_potential);
  s.read("run_flow", c.run_flow);
  s.read("flow_initial", c.flow_initial);
  s.read("flow_t_max", c.flow_t_max);
  s.read("flow_record_every", c.flow_record_every);
  s.read("flow_representation", c.flow_representation);
  s.read("flow_poly_degree", c.flow_poly_degree);
  if (s.has("sampling")) {
    Section sub = s.child("sampling");
    read_sampling(sub, c.sampling, "suite.sampling");
    sub.finish();
  }
  s.finish();
  require(c.samples >= 2, "suite.samples", "need at least 2");
  require(c.variational_pairs >= 1, "suite.variational_pairs", "must be positive");
  require(c.cocycle_triples >= 1, "suite.cocycle_triples", "must be positive");
  require(c.futaki_references >= 2, "suite.futaki_references", "need at least 2");
  require(c.fd_step > 0.0, "suite.fd_step", "must be positive");
  require(c.flow_t_max > 0.0, "suite.flow_t_max", "must be positive");
  require(c.flow_record_every >= 1, "suite.flow_record_every", "must be positive");
  require(c.flow_poly_degree >= 2, "suite.flow_poly_degree", "must be at least 2");
}

void read_flow(Section s, FlowSettings& f) {
  s.read("t_max", f.t_max);
  s.read("dt_init", f.dt_init);
  s.read("dt_safety", f.dt_safety);
  s.read("record_every", f.record_every);
  s.read("representation", f.representation);
  s.read("poly_degree", f.poly_degree);
  s.finish();
  require(f.t_max > 0.0, "flow.t_max", "must be positive");
  require(f.dt_init >= 0.0, "flow.dt_init", "must be non-negative (0 picks the default)");
  require(f.dt_safety > 0.0 && f.dt_safety <= 1.0, "flow.dt_safety", "must be in (0, 1]");
  require(f.record_every >= 1, "flow.record_every", "must be positive");
  require(f.poly_degree >= 2, "flow.poly_degree", "must be at least 2");
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  RunConfig c;
  Section top(root, "");
  top.read("dimension", c.dimension);
  top.read("grid_size", c.grid_size);
  top.read("seed", c.suite.seed);
  c.potential.seed = c.suite.seed;
  require(c.dimension >= 1 && c.dimension <= 3, "dimension", "unsupported, must be 1, 2 or 3");
  require(c.grid_size >= 16 && c.grid_size % 2 == 0, "grid_size", "must be even and at least 16");

  if (top.has("reference")) {
    Section s = top.child("reference");
    s.read("coefficients", c.reference);
    s.finish();
  }
  if (top.has("potential")) read_potential(top.child("potential"), c.potential);
  if (top.has("flow")) read_flow(top.child("flow"), c.flow);
  if (top.has("suite")) read_suite(top.child("suite"), c.suite);
  if (top.has("tolerances")) read_tolerances(top.child("tolerances"), c.suite.tol);
  if (top.has("mutation")) {
    Section s = top.child("mutation");
    s.read("b1_shift", c.suite.mutation.b1_shift);
    s.read("h_normalization_shift", c.suite.mutation.h_normalization_shift);
    s.finish();
  }
  if (top.has("output")) {
    Section s = top.child("output");
    s.read("report", c.output.report);
    s.read("trace", c.output.trace);
    s.finish();
  }
  top.finish();

  c.suite.n = c.dimension;
  c.suite.grid_size = c.grid_size;
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

ManifoldConfig manifold_config(const RunConfig& config) {
  return ManifoldConfig(config.dimension, build_grid(config.grid_size));
}

Reference make_reference(const RunConfig& config) {
  const ManifoldConfig m = manifold_config(config);
  try {
    return Reference(make_state(m, RadialPotential(config.reference)),
                     config.suite.mutation.h_normalization_shift);
  } catch (const NotInPotentialSpace& e) {
    throw ConfigError(std::string("reference.coefficients: ") + e.what());
  }
}

EnergyCoefficients energy_coefficients(const RunConfig& config) {
  EnergyCoefficients c = EnergyCoefficients::canonical(config.dimension);
  c.b[1] += config.suite.mutation.b1_shift;
  return c;
}

Profile initial_potential(const RunConfig& config, const Reference& ref) {
  const PotentialSpec& p = config.potential;
  if (!p.random) return RadialPotential(p.coefficients).values(ref.state().grid());
  std::mt19937_64 rng(p.seed);
  return sample_admissible(ref, rng, p.sampling).values(ref.state().grid());
}

FlowConfig flow_config(const RunConfig& config, const Reference& ref) {
  FlowConfig f;
  f.initial_phi = initial_potential(config, ref);
  f.t_max = config.flow.t_max;
  f.dt_init = config.flow.dt_init;
  f.dt_safety = config.flow.dt_safety;
  f.record_every = config.flow.record_every;
  f.representation = config.flow.representation;
  f.poly_degree = config.flow.poly_degree;
  return f;
}

}  // namespace kahler
