#include "kahler/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

namespace kahler {

namespace {

double rel_err(double lhs, double rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

double identity_functional(Identity id, const Reference& ref, const Profile& phi, const EnergyCoefficients& coeffs) {
  const int n = ref.n();
  switch (id) {
    case Identity::kDerJFunc:
      return (n + 1.0) * mixed_sum(ref, phi, std::vector<double>(static_cast<std::size_t>(n) + 1, 1.0));
    case Identity::kDerKEnerg:
      return k_energy(ref, phi, coeffs);
    case Identity::kDerJ1Fun:
      return mixed_sum(ref, phi, coeffs.b);
    case Identity::kDerE1:
      return e1_energy(ref, phi, coeffs);
  }
  return 0.0;
}

double identity_variation(Identity id, const Reference& ref, const MetricState& st, const Profile& dir) {
  const int n = ref.n();
  const ManifoldConfig& mc = ref.config();
  const Profile volume = wedge_density({{st.form(), n}}, n);
  switch (id) {
    case Identity::kDerJFunc:
      return (n + 1.0) * average(dir * volume, mc);
    case Identity::kDerKEnerg:
      return -0.5 * average(dir * (st.scal() - 2.0 * n) * volume, mc);
    case Identity::kDerJ1Fun: {
      if (n < 2) return 0.0;
      const Profile base = wedge_density({{ref.state().form(), 2}, {st.form(), n - 2}}, n);
      return (n - 1.0) * average(dir * (volume - base), mc);
    }
    case Identity::kDerE1: {
      const Profile ricci_mixed = wedge_density({{st.ricci_form(), 1}, {st.form(), n - 1}}, n);
      double out = average(laplacian(st, dir) * ricci_mixed, mc);
      if (n >= 2) {
        const Profile ricci_sq = wedge_density({{st.ricci_form(), 2}, {st.form(), n - 2}}, n);
        out -= (n - 1.0) * average(dir * (ricci_sq - volume), mc);
      }
      return out;
    }
  }
  return 0.0;
}

class ReportBuilder {
 public:
  explicit ReportBuilder(SuiteReport& report) : report_(report) {}

  // Passes iff value is finite and value <= tolerance.
  void add(std::string name, double value, double tolerance) {
    const bool ok = std::isfinite(value) && value <= tolerance;
    report_.checks.push_back(CheckResult{std::move(name), ok, value, tolerance});
  }

  // For claims that cannot hold: passes iff value > tolerance.
  void add_expected_failure(std::string name, double value, double tolerance) {
    const bool confirmed = std::isfinite(value) && value > tolerance;
    report_.checks.push_back(CheckResult{std::move(name), confirmed, value, tolerance, true});
  }

 private:
  SuiteReport& report_;
};

double h_defining_residual(const Reference& ref) {
  const Profile expected = ref.state().ricci_form().B - ref.state().form().B;
  return (d_ds(ref.h(), ref.config().grid()) - expected).max_abs();
}

double h_normalization_defect(const Reference& ref) {
  const int n = ref.n();
  const Profile volume = wedge_density({{ref.state().form(), n}}, n);
  return std::abs(average(ref.h().map([](double v) { return std::exp(v) - 1.0; }) * volume, ref.config()));
}

}  // namespace

std::string_view identity_name(Identity id) {
  switch (id) {
    case Identity::kDerJFunc:
      return "der_jfunc";
    case Identity::kDerKEnerg:
      return "der_kenerg";
    case Identity::kDerJ1Fun:
      return "der_j1fun";
    case Identity::kDerE1:
      return "der_e1";
  }
  return "unknown";
}

VariationalCheck variational_check(Identity id, const Reference& ref, const Profile& phi, const Profile& direction,
                                   double dt) {
  return variational_check(id, ref, phi, direction, dt, EnergyCoefficients::canonical(ref.n()));
}

VariationalCheck variational_check(Identity id, const Reference& ref, const Profile& phi, const Profile& direction,
                                   double dt, const EnergyCoefficients& coeffs) {
  VariationalCheck out{id, direction, dt, 0.0, 0.0, 0.0};
  const double plus = identity_functional(id, ref, phi + dt * direction, coeffs);
  const double minus = identity_functional(id, ref, phi - dt * direction, coeffs);
  out.lhs = (plus - minus) / (2.0 * dt);
  out.rhs = identity_variation(id, ref, relative_state(ref, phi), direction);
  out.rel_err = rel_err(out.lhs, out.rhs);
  return out;
}

std::string_view functional_name(Functional f) {
  switch (f) {
    case Functional::kJ:
      return "j";
    case Functional::kNu:
      return "nu";
    case Functional::kE1:
      return "e1";
  }
  return "unknown";
}

double evaluate_functional(Functional f, const Reference& ref, const Profile& phi, const EnergyCoefficients& coeffs) {
  switch (f) {
    case Functional::kJ:
      return j_energy_expressions(ref, phi).gradient_form;
    case Functional::kNu:
      return k_energy(ref, phi, coeffs);
    case Functional::kE1:
      return e1_energy(ref, phi, coeffs);
  }
  return 0.0;
}

CocycleResult cocycle_check(const Reference& ref, const Profile& phi1, const Profile& phi2, Functional f) {
  return cocycle_check(ref, phi1, phi2, f, EnergyCoefficients::canonical(ref.n()));
}

CocycleResult cocycle_check(const Reference& ref, const Profile& phi1, const Profile& phi2, Functional f,
                            const EnergyCoefficients& coeffs) {
  const Reference middle = re_reference(ref, phi1);
  const double first = evaluate_functional(f, ref, phi1, coeffs);
  const double second = evaluate_functional(f, middle, phi2 - phi1, coeffs);
  CocycleResult out;
  out.direct = evaluate_functional(f, ref, phi2, coeffs);
  out.chained = first + second;
  out.defect = std::abs(out.direct - out.chained);
  out.scale = std::max({std::abs(out.direct), std::abs(first), std::abs(second)});
  return out;
}

std::string_view CheckResult::status() const {
  if (!passed) return "fail";
  return expected_failure ? "xfail" : "pass";
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* SuiteReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  out << "check_name,status,value,tolerance\n";
  char buf[96];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%.9e,%.3e", c.value, c.tolerance);
    out << c.name << ',' << c.status() << ',' << buf << '\n';
  }
  return out.str();
}

SuiteReport run_suite(const SuiteConfig& config) {
  SuiteReport report;
  report.config = config;
  ReportBuilder add(report);
  const Tolerances& tol = config.tol;

  const ManifoldConfig mc(config.n, Grid(config.grid_size));
  const Grid& grid = mc.grid();
  const int n = mc.n();
  const Profile zero(grid.points());

  EnergyCoefficients coeffs = EnergyCoefficients::canonical(n);
  coeffs.b[1] += config.mutation.b1_shift;
  const double h_shift = config.mutation.h_normalization_shift;

  const Reference fs(background(mc), h_shift);
  const Reference curved(make_state(mc, RadialPotential(config.reference_potential)), h_shift);
  const std::vector<const Reference*> refs{&fs, &curved};

  std::mt19937_64 rng(config.seed);
  auto sample = [&](const Reference& ref) { return sample_admissible(ref, rng, config.sampling).values(grid); };

  // Functional values over random potentials, per reference.
  double j_agree = 0.0, j_negative = 0.0, spread = 0.0, inequality = 0.0;
  double scal_avg = 0.0, ricci_total = 0.0;
  std::vector<double> shift_by(3, 0.0);
  for (const Reference* ref : refs) {
    const double c_omega = c_omega_estimate(*ref);
    double lo = c_omega, hi = c_omega;
    for (int i = 0; i < config.samples; ++i) {
      const Profile phi = sample(*ref);
      const FunctionalReport rep = evaluate(*ref, phi, coeffs);
      j_agree = std::max(j_agree, std::abs(rep.j - rep.j_mixed) / (1.0 + std::abs(rep.j)));
      j_negative = std::max(j_negative, -rep.j);
      lo = std::min(lo, rep.residual);
      hi = std::max(hi, rep.residual);
      inequality = std::max(inequality, -(rep.e1 - 2.0 * rep.nu - c_omega));

      const MetricState st = relative_state(*ref, phi);
      const Profile volume = wedge_density({{st.form(), n}}, n);
      scal_avg = std::max(scal_avg, std::abs(average(st.scal() * volume, mc) - 2.0 * n));
      const double ric = average(wedge_density({{st.ricci_form(), 1}, {st.form(), n - 1}}, n), mc);
      const double base = average(wedge_density({{ref->state().form(), 1}, {st.form(), n - 1}}, n), mc);
      ricci_total = std::max(ricci_total, std::abs(ric - base));

      if (i < 5) {
        const Profile shifted = phi + 0.7;
        const FunctionalReport moved = evaluate(*ref, shifted, coeffs);
        shift_by[0] = std::max(shift_by[0], std::abs(moved.j - rep.j));
        shift_by[1] = std::max(shift_by[1], std::abs(moved.nu - rep.nu));
        shift_by[2] = std::max(shift_by[2], std::abs(moved.e1 - rep.e1));
      }
    }
    spread = std::max(spread, (hi - lo) / (1.0 + std::abs(c_omega)));
  }

  add.add("j_expression_agreement", j_agree, tol.j_agreement);
  add.add("j_nonnegative", j_negative, 0.0);
  if (n == 1) {
    const double eps = 0.3;
    const double j = j_energy_expressions(fs, RadialPotential({0.0, eps}).values(grid)).gradient_form;
    add.add("j_closed_form", std::abs(j - eps * eps / 24.0), tol.j_closed_form);
  }
  add.add("shift_invariance_j", shift_by[0], tol.shift);
  add.add("shift_invariance_nu", shift_by[1], tol.shift);
  add.add("shift_invariance_e1", shift_by[2], tol.shift);

  // First-variation identities.
  for (Identity id : {Identity::kDerJFunc, Identity::kDerKEnerg, Identity::kDerJ1Fun, Identity::kDerE1}) {
    double worst = 0.0;
    for (const Reference* ref : refs) {
      std::mt19937_64 pair_rng(config.seed + 17 + static_cast<std::uint64_t>(id));
      for (int i = 0; i < config.variational_pairs; ++i) {
        const Profile phi = sample_admissible(*ref, pair_rng, config.sampling).values(grid);
        const Profile dir = RadialPotential::random(pair_rng, config.sampling.bound, config.sampling.degree).values(grid);
        worst = std::max(worst, variational_check(id, *ref, phi, dir, config.fd_step, coeffs).rel_err);
      }
    }
    add.add("variational_" + std::string(identity_name(id)), worst, tol.variational);
  }

  // Energy-functional axioms.
  std::vector<Reference> extra_refs;
  {
    std::mt19937_64 triple_rng(config.seed + 101);
    std::vector<double> worst(3, 0.0);
    // J is nonnegative and vanishes only on the diagonal, so it cannot be a
    // cocycle: J(a,b) + J(b,a) would equal J(a,a) = 0. Track the smallest
    // defect to confirm every triple breaks it.
    double least_j = std::numeric_limits<double>::infinity();
    for (int i = 0; i < config.cocycle_triples; ++i) {
      const Profile phi1 = sample_admissible(curved, triple_rng, config.sampling).values(grid);
      const Profile phi2 = sample_admissible(curved, triple_rng, config.sampling).values(grid);
      extra_refs.push_back(re_reference(curved, phi1));
      std::size_t k = 0;
      for (Functional f : {Functional::kJ, Functional::kNu, Functional::kE1}) {
        const CocycleResult c = cocycle_check(curved, phi1, phi2, f, coeffs);
        worst[k] = std::max(worst[k], c.defect / (1.0 + c.scale));
        if (f == Functional::kJ) least_j = std::min(least_j, c.defect / (1.0 + c.scale));
        ++k;
      }
    }
    add.add_expected_failure("cocycle_j", least_j, tol.cocycle);
    add.add("cocycle_nu", worst[1], tol.cocycle);
    add.add("cocycle_e1", worst[2], tol.cocycle);
  }
  {
    std::vector<double> worst(3, 0.0);
    std::vector<const Reference*> diag_refs = refs;
    for (const Reference& r : extra_refs) diag_refs.push_back(&r);
    for (const Reference* ref : diag_refs) {
      const FunctionalReport rep = evaluate(*ref, zero, coeffs);
      worst[0] = std::max(worst[0], std::abs(rep.j));
      worst[1] = std::max(worst[1], std::abs(rep.nu));
      worst[2] = std::max(worst[2], std::abs(rep.e1));
    }
    add.add("diagonal_j", worst[0], tol.diagonal);
    add.add("diagonal_nu", worst[1], tol.diagonal);
    add.add("diagonal_e1", worst[2], tol.diagonal);
  }

  // Ricci potential and Futaki invariant.
  std::vector<Reference> futaki_refs;
  {
    std::mt19937_64 ref_rng(config.seed + 202);
    for (int i = 0; i < config.futaki_references; ++i) {
      const Profile psi = sample_admissible(fs, ref_rng, config.sampling).values(grid);
      futaki_refs.emplace_back(relative_state(fs, psi), h_shift);
    }
  }
  {
    double defining = 0.0, normalization = 0.0;
    std::vector<const Reference*> all = refs;
    for (const Reference& r : futaki_refs) all.push_back(&r);
    for (const Reference* ref : all) {
      defining = std::max(defining, h_defining_residual(*ref));
      normalization = std::max(normalization, h_normalization_defect(*ref));
    }
    add.add("h_defining_equation", defining, tol.h_residual);
    add.add("h_normalization", normalization, tol.h_normalization);
    add.add("h_fubini_study", fs.h().max_abs(), tol.h_fubini_study);

    add.add("futaki_fubini_study", std::abs(futaki(fs)), 0.0);
    std::vector<double> values;
    for (const Reference* ref : all) values.push_back(futaki(*ref));
    double vanishing = 0.0, independence = 0.0;
    for (double a : values) {
      vanishing = std::max(vanishing, std::abs(a));
      for (double b : values) independence = std::max(independence, std::abs(a - b));
    }
    add.add("futaki_vanishing", vanishing, tol.futaki);
    add.add("futaki_independence", independence, tol.futaki);
  }

  // Curvature.
  {
    const MetricState& st = fs.state();
    add.add("scal_fubini_study", (st.scal() - 2.0 * n).max_abs(), tol.scal_fubini_study);
    add.add("scal_class_average", scal_avg, tol.scal_average);
    add.add("ricci_class_total", ricci_total, tol.ricci_class);
  }

  // The identity E_1 - 2ν - dirichlet(v) = C_ω.
  add.add("residual_constancy", spread, tol.residual_spread);
  add.add("theorem2_inequality", std::max(0.0, inequality), tol.inequality);
  {
    const double c_omega = c_omega_estimate(curved);
    const double expected = -dirichlet(curved.state(), curved.h());
    add.add("c_omega_gradient_form", std::abs(c_omega - expected) / (1.0 + std::abs(expected)), tol.residual_spread);
  }

  if (config.run_flow) {
    FlowConfig fc;
    fc.initial_phi = RadialPotential(config.flow_initial).values(grid);
    fc.t_max = config.flow_t_max;
    fc.record_every = config.flow_record_every;
    fc.representation = config.flow_representation;
    fc.poly_degree = config.flow_poly_degree;
    const FlowTrace trace = run(curved, fc);
    const double c_omega = c_omega_estimate(curved);
    double rise = 0.0, drift = 0.0, below = 0.0, positivity = 0.0;
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
      const FlowRecord& r = trace.records[i];
      if (i > 0) {
        const FlowRecord& p = trace.records[i - 1];
        rise = std::max(rise, (r.nu - p.nu) / (1.0 + std::abs(p.nu)));
      }
      drift = std::max(drift, std::abs(r.residual - c_omega) / (1.0 + std::abs(c_omega)));
      below = std::max(below, -(r.e1 - 2.0 * r.nu - c_omega));
      positivity = std::max(positivity, -std::min(r.min_a_hat, r.min_b_hat));
    }
    add.add("flow_completed", trace.aborted ? 1.0 : 0.0, 0.0);
    add.add("flow_nu_monotone", std::max(0.0, rise), tol.monotone);
    add.add("flow_residual_constant", drift, tol.flow_residual);
    add.add("flow_inequality", std::max(0.0, below), tol.inequality);
    add.add("flow_positivity", positivity, 0.0);
  }
  return report;
}

}  // namespace kahler
