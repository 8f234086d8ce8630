#include "kahler/functionals.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kahler {

namespace {

// Mixed averages M_k = ⨏ φ ω_ref^k ∧ ω_φ^{n-k}, k = 0..n.
std::vector<double> mixed_averages(const Reference& ref, const Profile& phi, const MetricState& state) {
  const int n = ref.n();
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const Profile density = wedge_density({{ref.state().form(), k}, {state.form(), n - k}}, n);
    out[static_cast<std::size_t>(k)] = average(phi * density, ref.config());
  }
  return out;
}

double weighted_mixed(const std::vector<double>& mixed, const std::vector<double>& coeffs) {
  if (coeffs.size() != mixed.size()) {
    std::ostringstream msg;
    msg << "mixed_sum: expected " << mixed.size() << " coefficients, got " << coeffs.size();
    throw std::invalid_argument(msg.str());
  }
  const double np1 = static_cast<double>(mixed.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < mixed.size(); ++k) acc += coeffs[k] / np1 * mixed[k];
  return acc;
}

JExpressions j_from(const Reference& ref, const Profile& phi, const MetricState& state,
                    const std::vector<double>& mixed) {
  const int n = ref.n();
  const RadialForm pairing = gradient_pairing(phi, phi, ref.config().grid());
  JExpressions out;
  for (int k = 0; k < n; ++k) {
    const Profile density =
        wedge_density({{pairing, 1}, {ref.state().form(), k}, {state.form(), n - k - 1}}, n);
    out.gradient_form += (k + 1.0) / (n + 1.0) * average(density, ref.config());
  }
  double total = 0.0;
  for (double m : mixed) total += m;
  out.mixed_form = mixed.back() - total / (n + 1.0);
  return out;
}

// log(ω_φ^n / ω_ref^n) - h_ref.
Profile entropy_integrand(const Reference& ref, const MetricState& state) {
  return state.log_ratio() - ref.state().log_ratio() - ref.h();
}

double k_from(const Reference& ref, const MetricState& state, const std::vector<double>& mixed,
              const EnergyCoefficients& coeffs) {
  const int n = ref.n();
  const Profile volume = wedge_density({{state.form(), n}}, n);
  return average(entropy_integrand(ref, state) * volume, ref.config()) + weighted_mixed(mixed, coeffs.a) +
         ref.c0();
}

double e1_from(const Reference& ref, const MetricState& state, const std::vector<double>& mixed,
               const EnergyCoefficients& coeffs) {
  const int n = ref.n();
  const RadialForm ricci_plus = state.ricci_form() + ref.state().form();
  const Profile density = wedge_density({{ricci_plus, 1}, {state.form(), n - 1}}, n);
  return average(entropy_integrand(ref, state) * density, ref.config()) + weighted_mixed(mixed, coeffs.b) +
         ref.c1();
}

Profile velocity_from(const Reference& ref, const Profile& phi, const MetricState& state) {
  return entropy_integrand(ref, state) + phi;
}

}  // namespace

Profile flow_velocity(const Reference& ref, const Profile& phi) {
  Profile v = log_density_ratio(ref.config(), ref.state().potential() + phi);
  const auto base = ref.state().log_ratio().values();
  const auto h = ref.h().values();
  const auto p = phi.values();
  const auto out = v.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += p[i] - base[i] - h[i];
  return v;
}

EnergyCoefficients EnergyCoefficients::canonical(int n) {
  EnergyCoefficients c;
  c.a.assign(static_cast<std::size_t>(n) + 1, -1.0);
  c.a[0] = n;
  c.b.assign(static_cast<std::size_t>(n) + 1, -2.0);
  c.b[0] = n - 1.0;
  c.b[1] = n - 1.0;
  return c;
}

RicciPotential ricci_potential(const MetricState& ref) {
  const Grid& g = ref.grid();
  const int n = ref.n();
  const Profile gap = ref.ricci_form().B - ref.form().B;  // d_s h
  const double scale = 1.0 + ref.form().B.max_abs();
  const std::size_t last = g.points() - 1;
  if (std::abs(gap[0]) > 1e-8 * scale || std::abs(gap[last]) > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "Ric - omega does not vanish at the poles (" << gap[0] << ", " << gap[last]
        << "); reference is not admissible";
    throw NotInPotentialSpace(msg.str());
  }
  const Profile h_dx = reduce_by_measure(gap, g);
  const Profile raw = cumulative_integral_dx(h_dx, g, last / 2);

  const Profile volume = wedge_density({{ref.form(), n}}, n);
  const double plain = integrate_ds(volume, g);
  const double weighted = integrate_ds(raw.map([](double v) { return std::exp(v); }) * volume, g);
  RicciPotential out;
  out.c = std::log(plain / weighted);
  out.h = raw + out.c;
  return out;
}

Reference::Reference(MetricState state, double normalization_shift)
    : state_(std::move(state)), potential_(kahler::ricci_potential(state_)), c0_(0.0), c1_(0.0) {
  if (normalization_shift != 0.0) potential_.h += normalization_shift;
  const int n = state_.n();
  const Profile volume = wedge_density({{state_.form(), n}}, n);
  c0_ = average(potential_.h * volume, state_.config());
  const RadialForm ricci_plus = state_.ricci_form() + state_.form();
  const Profile mixed = wedge_density({{ricci_plus, 1}, {state_.form(), n - 1}}, n);
  c1_ = average(potential_.h * mixed, state_.config());
}

Reference fubini_study_reference(const ManifoldConfig& config) { return Reference(background(config)); }

MetricState relative_state(const Reference& ref, const Profile& phi) {
  return make_state(ref.config(), ref.state().potential() + phi);
}

Reference re_reference(const Reference& old_ref, const Profile& psi) {
  return Reference(relative_state(old_ref, psi));
}

RadialPotential sample_admissible(const Reference& ref, std::mt19937_64& rng, SamplingOptions opts) {
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    RadialPotential candidate = RadialPotential::random(rng, opts.bound, opts.degree);
    const Profile total = ref.state().potential() + candidate.values(ref.config().grid());
    if (positivity_margin(ref.config(), total) >= opts.margin && is_admissible(ref.config(), total)) {
      return candidate;
    }
  }
  throw NotInPotentialSpace("no admissible potential found within the attempt budget");
}

JExpressions j_energy_expressions(const Reference& ref, const Profile& phi) {
  const MetricState state = relative_state(ref, phi);
  return j_from(ref, phi, state, mixed_averages(ref, phi, state));
}

double j_energy(const Reference& ref, const Profile& phi, double tolerance) {
  const JExpressions j = j_energy_expressions(ref, phi);
  if (std::abs(j.gradient_form - j.mixed_form) > tolerance * (1.0 + std::abs(j.gradient_form))) {
    std::ostringstream msg;
    msg << "generalized energy expressions disagree: " << j.gradient_form << " vs " << j.mixed_form;
    throw ExpressionMismatch(msg.str(), j.gradient_form, j.mixed_form);
  }
  return j.gradient_form;
}

double mixed_sum(const Reference& ref, const Profile& phi, const std::vector<double>& coeffs) {
  const MetricState state = relative_state(ref, phi);
  return weighted_mixed(mixed_averages(ref, phi, state), coeffs);
}

double k_energy(const Reference& ref, const Profile& phi) {
  return k_energy(ref, phi, EnergyCoefficients::canonical(ref.n()));
}

double k_energy(const Reference& ref, const Profile& phi, const EnergyCoefficients& coeffs) {
  const MetricState state = relative_state(ref, phi);
  return k_from(ref, state, mixed_averages(ref, phi, state), coeffs);
}

double e1_energy(const Reference& ref, const Profile& phi) {
  return e1_energy(ref, phi, EnergyCoefficients::canonical(ref.n()));
}

double e1_energy(const Reference& ref, const Profile& phi, const EnergyCoefficients& coeffs) {
  const MetricState state = relative_state(ref, phi);
  return e1_from(ref, state, mixed_averages(ref, phi, state), coeffs);
}

double dirichlet(const MetricState& state, const Profile& v) {
  const int n = state.n();
  const RadialForm pairing = gradient_pairing(v, v, state.grid());
  return average(wedge_density({{pairing, 1}, {state.form(), n - 1}}, n), state.config());
}

double identity_residual(const Reference& ref, const Profile& phi) {
  return identity_residual(ref, phi, EnergyCoefficients::canonical(ref.n()));
}

double identity_residual(const Reference& ref, const Profile& phi, const EnergyCoefficients& coeffs) {
  return evaluate(ref, phi, coeffs).residual;
}

double futaki(const Reference& ref) {
  const int n = ref.n();
  const Profile volume = wedge_density({{ref.state().form(), n}}, n);
  return average(d_ds(ref.h(), ref.config().grid()) * volume, ref.config());
}

FunctionalReport evaluate(const Reference& ref, const Profile& phi) {
  return evaluate(ref, phi, EnergyCoefficients::canonical(ref.n()));
}

FunctionalReport evaluate(const Reference& ref, const Profile& phi, const EnergyCoefficients& coeffs) {
  const MetricState state = relative_state(ref, phi);
  const std::vector<double> mixed = mixed_averages(ref, phi, state);
  FunctionalReport out;
  const JExpressions j = j_from(ref, phi, state, mixed);
  out.j = j.gradient_form;
  out.j_mixed = j.mixed_form;
  out.nu = k_from(ref, state, mixed, coeffs);
  out.e1 = e1_from(ref, state, mixed, coeffs);
  out.dirichlet = dirichlet(state, velocity_from(ref, phi, state));
  out.residual = out.e1 - 2.0 * out.nu - out.dirichlet;
  out.c0 = ref.c0();
  out.c1 = ref.c1();
  out.futaki = futaki(Reference(state));
  return out;
}

}  // namespace kahler
