#include "kahler/radial_geometry.hpp"

#include "kahler/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace kahler {

namespace {

Profile moment_weight(const Grid& g) {
  return Profile::sample(g, [](double x) { return x * (1.0 - x); });
}

Profile nodes(const Grid& g) { return Profile(std::vector<double>(g.nodes().begin(), g.nodes().end())); }

// Index of the first node where p <= 0 or is not finite, or -1.
long first_nonpositive(const Profile& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0) || !std::isfinite(p[i])) return static_cast<long>(i);
  }
  return -1;
}

struct RicciParts {
  RadialForm form;
  Profile q;  // B_R / x
  Profile r;  // A_R / (x (1 - x))
};

RicciParts ricci_parts(const MetricState& state);

struct Factors {
  Profile phi_x;
  Profile q;  // B / x
  Profile r;  // A / (x (1 - x))
};

Factors metric_factors(const ManifoldConfig& config, const Profile& phi) {
  const Grid& g = config.grid();
  if (phi.size() != g.points()) throw std::invalid_argument("potential does not match grid");
  if (!phi.is_finite()) throw NotInPotentialSpace("potential has non-finite samples");
  const double np1 = config.n() + 1.0;
  Factors f;
  f.phi_x = d_dx(phi, g);
  f.q = np1 + (1.0 - nodes(g)) * f.phi_x;
  f.r = np1 + d_dx(moment_weight(g) * f.phi_x, g);
  return f;
}

void require_positive(const Grid& g, const Profile& a_hat, const Profile& b_hat) {
  for (const auto& [name, p] : {std::pair<const char*, const Profile*>{"A-hat", &a_hat},
                                std::pair<const char*, const Profile*>{"B-hat", &b_hat}}) {
    if (long i = first_nonpositive(*p); i >= 0) {
      std::ostringstream msg;
      msg << "not in potential space: " << name << " = " << (*p)[static_cast<std::size_t>(i)]
          << " at x = " << g.node(static_cast<std::size_t>(i));
      throw NotInPotentialSpace(msg.str());
    }
  }
}

Profile log_ratio_from(int n, const Profile& a_hat, const Profile& b_hat) {
  Profile out = a_hat.map([](double v) { return std::log(v); });
  if (n > 1) out += (n - 1.0) * b_hat.map([](double v) { return std::log(v); });
  return out;
}

}  // namespace

ManifoldConfig::ManifoldConfig(int n, Grid grid) : n_(n), grid_(std::move(grid)), volume_(0.0) {
  if (n < 1 || n > kMaxDimension) {
    std::ostringstream msg;
    msg << "complex dimension must be in [1, " << kMaxDimension << "], got " << n;
    throw ConfigError(msg.str());
  }
  volume_ = std::pow(static_cast<double>(n + 1), n);
}

RadialPotential::RadialPotential(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) coefficients_.push_back(0.0);
}

RadialPotential RadialPotential::random(std::mt19937_64& rng, double bound, int degree) {
  if (degree < 0) throw std::invalid_argument("polynomial degree must be non-negative");
  std::uniform_real_distribution<double> coef(-bound, bound);
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (double& v : c) v = coef(rng);
  return RadialPotential(std::move(c));
}

double RadialPotential::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Profile RadialPotential::values(const Grid& g) const {
  return Profile::sample(g, [this](double x) { return (*this)(x); });
}

MetricState background(const ManifoldConfig& config) {
  return make_state(config, Profile(config.grid().points()));
}

MetricState make_state(const ManifoldConfig& config, const RadialPotential& phi) {
  return make_state(config, phi.values(config.grid()));
}

bool is_admissible(const ManifoldConfig& config, const Profile& phi) {
  return phi.is_finite() && positivity_margin(config, phi) > 0.0;
}

Profile log_density_ratio(const ManifoldConfig& config, const Profile& phi) {
  const Grid& g = config.grid();
  if (phi.size() != g.points()) throw std::invalid_argument("log_density_ratio: shape mismatch");
  Profile out(g.points());
  std::vector<double> scratch(2 * g.points());
  const double lowest = kernels::parallel::log_density_ratio(phi.values(), config.n(), g.spacing(),
                                                             out.values(), scratch);
  if (!(lowest > 0.0)) {
    // slow path, only to produce a useful message
    const Factors f = metric_factors(config, phi);
    const double np1 = config.n() + 1.0;
    require_positive(g, f.r * (1.0 / np1), f.q * (1.0 / np1));
    throw NotInPotentialSpace("not in potential space: non-finite density");
  }
  return out;
}

double positivity_margin(const ManifoldConfig& config, const Profile& phi) {
  const Grid& g = config.grid();
  if (phi.size() != g.points()) throw std::invalid_argument("positivity_margin: shape mismatch");
  std::vector<double> scratch(3 * g.points());
  return kernels::parallel::positivity_margin(phi.values(), config.n(), g.spacing(), scratch);
}

MetricState make_state(const ManifoldConfig& config, const Profile& phi) {
  const Grid& g = config.grid();
  const int n = config.n();
  const double np1 = n + 1.0;
  Factors f = metric_factors(config, phi);

  MetricState st(config);
  st.phi_ = phi;
  st.phi_x_ = std::move(f.phi_x);
  st.q_ = std::move(f.q);
  st.r_ = std::move(f.r);
  st.form_.B = nodes(g) * st.q_;
  st.form_.A = moment_weight(g) * st.r_;
  st.a_hat_ = st.r_ * (1.0 / np1);
  st.b_hat_ = st.q_ * (1.0 / np1);
  require_positive(g, st.a_hat_, st.b_hat_);
  st.log_ratio_ = log_ratio_from(n, st.a_hat_, st.b_hat_);

  auto parts = ricci_parts(st);
  st.ricci_q_ = std::move(parts.q);
  st.ricci_r_ = std::move(parts.r);
  st.ricci_ = std::move(parts.form);
  st.scal_ = scalar_curvature(st);
  return st;
}

Profile wedge_density(std::initializer_list<WedgeFactor> factors, int n) {
  int total = 0;
  std::size_t points = 0;
  for (const auto& f : factors) {
    if (f.multiplicity < 0) throw std::invalid_argument("wedge_density: negative multiplicity");
    total += f.multiplicity;
    if (f.multiplicity > 0) {
      if (points != 0 && f.form.A.size() != points) throw std::invalid_argument("wedge_density: size mismatch");
      points = f.form.A.size();
    }
  }
  if (total != n) {
    std::ostringstream msg;
    msg << "wedge_density: multiplicities sum to " << total << ", expected degree " << n;
    throw std::invalid_argument(msg.str());
  }

  Profile density(points);
  for (const auto& lead : factors) {
    if (lead.multiplicity == 0) continue;
    Profile term = lead.multiplicity * lead.form.A;
    for (const auto& other : factors) {
      const int power = &other == &lead ? other.multiplicity - 1 : other.multiplicity;
      for (int k = 0; k < power; ++k) term *= other.form.B;
    }
    density += term;
  }
  return density;
}

RadialForm ricci(const MetricState& state) { return ricci_parts(state).form; }

namespace {

RicciParts ricci_parts(const MetricState& state) {
  const Grid& g = state.grid();
  const int n = state.n();
  const double np1 = n + 1.0;
  const Profile x = nodes(g);
  const Profile w = moment_weight(g);

  // d/dx log(ω_φ^n / ω^n) in factored form: r'/r + (n-1) q'/q.
  Profile log_ratio_dx = d_dx(state.r(), g) / state.r();
  if (n > 1) log_ratio_dx += (n - 1.0) * (d_dx(state.q(), g) / state.q());

  RicciParts out;
  out.q = np1 - (1.0 - x) * log_ratio_dx;
  out.r = np1 - d_dx(w * log_ratio_dx, g);
  out.form.B = x * out.q;
  out.form.A = w * out.r;
  return out;
}

}  // namespace

Profile scalar_curvature(const MetricState& state) {
  const int n = state.n();
  Profile scal = state.ricci_r() / state.r();
  if (n > 1) scal += (n - 1.0) * (state.ricci_q() / state.q());
  return 2.0 * scal;
}

Profile laplacian(const MetricState& state, const Profile& f) {
  const Grid& g = state.grid();
  const int n = state.n();
  const Profile x = nodes(g);
  const Profile f_x = d_dx(f, g);
  Profile out = d_dx(moment_weight(g) * f_x, g) / state.r();
  if (n > 1) out += (n - 1.0) * ((1.0 - x) * f_x / state.q());
  return 2.0 * out;
}

RadialForm gradient_pairing(const Profile& f, const Profile& g, const Grid& grid) {
  return RadialForm{d_ds(f, grid) * d_ds(g, grid), Profile(grid.points())};
}

double average(const Profile& density, const ManifoldConfig& config) {
  return integrate_ds(density, config.grid()) / config.volume();
}

}  // namespace kahler
