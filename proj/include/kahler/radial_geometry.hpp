#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "kahler/calculus.hpp"

// Rotation-invariant Kähler geometry on CP^n. A U(n)-invariant real
// (1,1)-form is A i∂s∧∂̄s + B i∂∂̄s with s = log|z|^2, stored as the pair of
// profiles (A, B) over the moment coordinate x. The reference metric is
// Fubini–Study scaled into 2πc_1, so B_0 = (n+1) x and Ric = ω exactly.
//
// Top-degree forms are densities against i∂s∧∂̄s ∧ (i∂∂̄s)^{n-1} and
// integrate over ds; the constant relating that measure to the volume form
// of CP^n cancels in every average.
namespace kahler {

class ManifoldConfig {
 public:
  static constexpr int kMaxDimension = 3;

  // Throws ConfigError unless 1 <= n <= kMaxDimension.
  ManifoldConfig(int n, Grid grid);

  int n() const noexcept { return n_; }
  const Grid& grid() const noexcept { return grid_; }
  // Reduced volume of ω^n: the integral over ds of n A_0 B_0^{n-1}.
  double volume() const noexcept { return volume_; }

 private:
  int n_;
  Grid grid_;
  double volume_;
};

struct RadialForm {
  Profile A;  // coefficient of i∂s∧∂̄s
  Profile B;  // coefficient of i∂∂̄s

  RadialForm& operator+=(const RadialForm& other) {
    A += other.A;
    B += other.B;
    return *this;
  }
  friend RadialForm operator+(RadialForm a, const RadialForm& b) { return a += b; }
  friend RadialForm operator-(RadialForm a, const RadialForm& b) {
    a.A -= b.A;
    a.B -= b.B;
    return a;
  }
};

// Polynomial in x: sum_k coefficients[k] x^k.
class RadialPotential {
 public:
  static constexpr int kDefaultDegree = 8;

  RadialPotential() = default;
  explicit RadialPotential(std::vector<double> coefficients);

  // Coefficients uniform in [-bound, bound]. No admissibility check here; see
  // sample_admissible in functionals.hpp.
  static RadialPotential random(std::mt19937_64& rng, double bound, int degree = kDefaultDegree);

  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }

  double operator()(double x) const noexcept;
  Profile values(const Grid& g) const;

 private:
  std::vector<double> coefficients_{0.0};
};

// A positive metric ω_φ = ω_FS + i∂∂̄φ with everything the functionals need.
//
// Besides (A, B) the state keeps endpoint-regular factors:
//   B = x q,        q = (n+1) + (1-x) φ'
//   A = x(1-x) r,   r = dB/dx
// so Â = r/(n+1) and B̂ = q/(n+1) are the ratios to the Fubini–Study
// coefficients and log(ω_φ^n/ω^n) = log Â + (n-1) log B̂. The Ricci form is
// kept the same way: B_R = x q_R, A_R = x(1-x) r_R.
class MetricState {
 public:
  const ManifoldConfig& config() const noexcept { return config_; }
  const Grid& grid() const noexcept { return config_.grid(); }
  int n() const noexcept { return config_.n(); }

  // Potential relative to Fubini–Study.
  const Profile& potential() const noexcept { return phi_; }
  const Profile& potential_dx() const noexcept { return phi_x_; }
  const RadialForm& form() const noexcept { return form_; }
  const Profile& q() const noexcept { return q_; }
  const Profile& r() const noexcept { return r_; }
  const Profile& a_hat() const noexcept { return a_hat_; }
  const Profile& b_hat() const noexcept { return b_hat_; }
  // log(ω_φ^n / ω_FS^n), finite at every node.
  const Profile& log_ratio() const noexcept { return log_ratio_; }
  const RadialForm& ricci_form() const noexcept { return ricci_; }
  const Profile& ricci_q() const noexcept { return ricci_q_; }
  const Profile& ricci_r() const noexcept { return ricci_r_; }
  const Profile& scal() const noexcept { return scal_; }

 private:
  explicit MetricState(const ManifoldConfig& config) : config_(config) {}
  friend MetricState make_state(const ManifoldConfig& config, const Profile& phi);

  ManifoldConfig config_;
  Profile phi_, phi_x_, q_, r_, a_hat_, b_hat_, log_ratio_;
  RadialForm form_;
  Profile ricci_q_, ricci_r_, scal_;
  RadialForm ricci_;
};

// Fubini–Study: φ = 0.
MetricState background(const ManifoldConfig& config);

// Throws NotInPotentialSpace when Â or B̂ fails to be positive somewhere.
MetricState make_state(const ManifoldConfig& config, const Profile& phi);
MetricState make_state(const ManifoldConfig& config, const RadialPotential& phi);

// Membership test for the potential space without building a state.
bool is_admissible(const ManifoldConfig& config, const Profile& phi);

// log(ω_φ^n / ω_FS^n) alone, for callers that need no curvature (the flow
// right-hand side). Same positivity errors as make_state.
Profile log_density_ratio(const ManifoldConfig& config, const Profile& phi);

// min over the grid of min(Â, B̂); positive iff φ is admissible.
double positivity_margin(const ManifoldConfig& config, const Profile& phi);

struct WedgeFactor {
  const RadialForm& form;
  int multiplicity;
};

// Density of the wedge product of the listed forms (with multiplicity) with
// respect to ds. Multiplicities must sum to n; throws std::invalid_argument
// otherwise.
Profile wedge_density(std::initializer_list<WedgeFactor> factors, int n);

RadialForm ricci(const MetricState& state);
Profile scalar_curvature(const MetricState& state);

// Trace of i∂∂̄f against ω_φ (positive on convex functions).
Profile laplacian(const MetricState& state, const Profile& f);

// i∂f ∧ ∂̄g for radial f, g.
RadialForm gradient_pairing(const Profile& f, const Profile& g, const Grid& grid);

// Average of a top-degree density: integral over ds divided by (n+1)^n.
double average(const Profile& density, const ManifoldConfig& config);

}  // namespace kahler
