#pragma once

#include <random>
#include <vector>

#include "kahler/radial_geometry.hpp"

namespace kahler {

// Coefficients of the mixed terms sum_k c_k/(n+1) ⨏ φ ω^k ∧ ω_φ^{n-k}.
struct EnergyCoefficients {
  std::vector<double> a;  // K-energy: a_0 = n, a_k = -1
  std::vector<double> b;  // E_1: b_0 = b_1 = n-1, b_k = -2

  static EnergyCoefficients canonical(int n);
};

// h_ω with Ric(ω) = ω + i∂∂̄h and ⨏(e^h - 1) ω^n = 0.
struct RicciPotential {
  Profile h;
  double c = 0.0;  // additive constant applied to the raw primitive
};

// Throws NotInPotentialSpace if Ric(ω) - ω does not vanish at the poles.
RicciPotential ricci_potential(const MetricState& ref);

// A metric used as the base point of the functionals, with its Ricci
// potential and the constants C_0 = ⨏h ω^n, C_1 = ⨏h (Ric(ω)+ω)∧ω^{n-1}.
class Reference {
 public:
  // normalization_shift adds a constant to h after normalizing; only the
  // mutation fixtures set it.
  explicit Reference(MetricState state, double normalization_shift = 0.0);

  const MetricState& state() const noexcept { return state_; }
  const ManifoldConfig& config() const noexcept { return state_.config(); }
  int n() const noexcept { return state_.n(); }
  const RicciPotential& ricci_potential() const noexcept { return potential_; }
  const Profile& h() const noexcept { return potential_.h; }
  double c0() const noexcept { return c0_; }
  double c1() const noexcept { return c1_; }

 private:
  MetricState state_;
  RicciPotential potential_;
  double c0_;
  double c1_;
};

Reference fubini_study_reference(const ManifoldConfig& config);

// ω_ψ = ω_ref + i∂∂̄ψ as a new reference.
Reference re_reference(const Reference& old_ref, const Profile& psi);

// ω_ref + i∂∂̄φ.
MetricState relative_state(const Reference& ref, const Profile& phi);

struct SamplingOptions {
  double bound = 0.3;  // coefficients uniform in [-bound, bound]
  int degree = RadialPotential::kDefaultDegree;
  // Accept only if min(Â, B̂) of ω_ref + i∂∂̄φ is at least this. Metrics
  // close to degenerate need far finer grids to resolve log Â.
  double margin = 0.5;
  int max_attempts = 100000;
};

// Uniform random polynomial resampled until it clears the positivity margin
// relative to ref. Throws NotInPotentialSpace when the budget runs out.
RadialPotential sample_admissible(const Reference& ref, std::mt19937_64& rng, SamplingOptions opts = {});

struct JExpressions {
  double gradient_form = 0.0;  // sum of (k+1)/(n+1) ⨏ i∂φ∧∂̄φ∧ω^k∧ω_φ^{n-k-1}
  double mixed_form = 0.0;     // ⨏φω^n - 1/(n+1) sum ⨏φ ω^k∧ω_φ^{n-k}
};

JExpressions j_energy_expressions(const Reference& ref, const Profile& phi);

// Throws ExpressionMismatch if the two expressions differ by more than
// tolerance * (1 + |J|).
double j_energy(const Reference& ref, const Profile& phi, double tolerance = 1e-6);

double mixed_sum(const Reference& ref, const Profile& phi, const std::vector<double>& coeffs);

double k_energy(const Reference& ref, const Profile& phi);
double k_energy(const Reference& ref, const Profile& phi, const EnergyCoefficients& coeffs);
double e1_energy(const Reference& ref, const Profile& phi);
double e1_energy(const Reference& ref, const Profile& phi, const EnergyCoefficients& coeffs);

// Right-hand side of the potential flow: log(ω_φ^n/ω^n) + φ - h_ω.
Profile flow_velocity(const Reference& ref, const Profile& phi);

// ⨏ i∂v∧∂̄v∧ω_φ^{n-1}.
double dirichlet(const MetricState& state, const Profile& v);

// E_1 - 2ν - dirichlet(v(φ)); independent of φ.
double identity_residual(const Reference& ref, const Profile& phi);
double identity_residual(const Reference& ref, const Profile& phi, const EnergyCoefficients& coeffs);

// Futaki invariant on the radial generator sum z_i ∂/∂z_i.
double futaki(const Reference& ref);

struct FunctionalReport {
  double j = 0.0;
  double j_mixed = 0.0;
  double nu = 0.0;
  double e1 = 0.0;
  double dirichlet = 0.0;
  double residual = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double futaki = 0.0;
};

// Every functional at once, sharing one metric state.
FunctionalReport evaluate(const Reference& ref, const Profile& phi);
FunctionalReport evaluate(const Reference& ref, const Profile& phi, const EnergyCoefficients& coeffs);

}  // namespace kahler
