#include <array>
#include <cmath>

#include <doctest.h>

#include "support.hpp"

using namespace kahler;
using testing::curved_reference;
using testing::manifold;
using testing::poly;

namespace {

// 8-point Gauss–Legendre on [0, 1].
constexpr std::array<double, 8> kNodes{0.0198550717512319, 0.1016667612931866, 0.2372337950418355,
                                       0.4082826787521751, 0.5917173212478249, 0.7627662049581645,
                                       0.8983332387068134, 0.9801449282487681};
constexpr std::array<double, 8> kWeights{0.0506142681451881, 0.1111905172266872, 0.1568533229389436,
                                         0.1813418916891810, 0.1813418916891810, 0.1568533229389436,
                                         0.1111905172266872, 0.0506142681451881};

template <typename F>
double path_integral(F&& rate) {
  double acc = 0.0;
  for (std::size_t i = 0; i < kNodes.size(); ++i) acc += kWeights[i] * rate(kNodes[i]);
  return acc;
}

}  // namespace

TEST_CASE("canonical coefficients") {
  const EnergyCoefficients c2 = EnergyCoefficients::canonical(2);
  CHECK(c2.a == std::vector<double>{2.0, -1.0, -1.0});
  CHECK(c2.b == std::vector<double>{1.0, 1.0, -2.0});
  const EnergyCoefficients c1 = EnergyCoefficients::canonical(1);
  CHECK(c1.a == std::vector<double>{1.0, -1.0});
  CHECK(c1.b == std::vector<double>{0.0, 0.0});
}

TEST_CASE("mixed sums vanish on constants") {
  for (int n = 1; n <= 3; ++n) {
    const Reference ref = curved_reference(manifold(n));
    const Profile c(ref.state().grid().points(), 0.8);
    const EnergyCoefficients k = EnergyCoefficients::canonical(n);
    CHECK(std::abs(mixed_sum(ref, c, k.a)) < 1e-12);
    CHECK(std::abs(mixed_sum(ref, c, k.b)) < 1e-12);
    CHECK_THROWS_AS(mixed_sum(ref, c, {1.0}), std::invalid_argument);
  }
}

TEST_CASE("ricci potential") {
  for (int n = 1; n <= 3; ++n) {
    const ManifoldConfig m = manifold(n);
    const Reference fs = fubini_study_reference(m);
    CHECK(fs.h().max_abs() <= 1e-10);
    CHECK(std::abs(fs.ricci_potential().c) <= 1e-10);

    // Ric(ω_ψ) = ω_ψ - i∂∂̄(ψ + L), so h + ψ + L is constant.
    const Reference ref = curved_reference(m);
    const Grid& g = m.grid();
    const Profile sum = ref.h() + ref.state().potential() + ref.state().log_ratio();
    CHECK(sum.max() - sum.min() <= 1e-9);

    const Profile gap = ref.state().ricci_form().B - ref.state().form().B;
    CHECK((d_ds(ref.h(), g) - gap).max_abs() <= 1e-6);
    const Profile vol = wedge_density({{ref.state().form(), n}}, n);
    CHECK(std::abs(average(ref.h().map([](double v) { return std::exp(v) - 1.0; }) * vol, m)) <= 1e-10);
  }
}

TEST_CASE("J energy") {
  const ManifoldConfig m = manifold(1);
  const Reference fs = fubini_study_reference(m);
  const Grid& g = m.grid();
  CHECK(j_energy(fs, Profile(g.points())) == 0.0);
  const JExpressions c = j_energy_expressions(fs, Profile(g.points(), -2.5));
  CHECK(std::abs(c.gradient_form) < 1e-12);
  CHECK(std::abs(c.mixed_form) < 1e-12);
  for (double eps : {0.1, 0.3, -0.4}) {
    CHECK(std::abs(j_energy(fs, poly(g, {0.0, eps})) - eps * eps / 24.0) <= 1e-7);
  }
  CHECK_THROWS_AS(j_energy(fs, poly(g, {0.0, 0.3}), -1.0), ExpressionMismatch);

  std::mt19937_64 rng(3);
  for (int n = 1; n <= 3; ++n) {
    const Reference ref = curved_reference(manifold(n));
    for (int i = 0; i < 4; ++i) {
      const JExpressions e = j_energy_expressions(ref, testing::sample(ref, rng));
      CHECK(e.gradient_form >= 0.0);
      CHECK(std::abs(e.gradient_form - e.mixed_form) <= 1e-6 * (1.0 + e.gradient_form));
    }
  }
}

TEST_CASE("K-energy axioms and path integral") {
  const ManifoldConfig m = manifold(1);
  const Grid& g = m.grid();
  for (const Reference& ref : {fubini_study_reference(m), curved_reference(m)}) {
    CHECK(std::abs(k_energy(ref, Profile(g.points()))) <= 1e-12);
    const Profile phi = poly(g, {0.0, 0.2});
    CHECK(std::abs(k_energy(ref, phi + 1.3) - k_energy(ref, phi)) <= 1e-8);

    // dν/dt = -1/2 ⨏ φ (Scal - 2n) ω_t^n along t φ.
    const double integral = path_integral([&](double t) {
      const MetricState s = relative_state(ref, t * phi);
      const Profile vol = wedge_density({{s.form(), 1}}, 1);
      return -0.5 * average(phi * (s.scal() - 2.0) * vol, m);
    });
    CHECK(std::abs(k_energy(ref, phi) - integral) <= 1e-5);
  }
}

TEST_CASE("E1 axioms and path integral") {
  const int n = 2;
  const ManifoldConfig m = manifold(n);
  const Grid& g = m.grid();
  for (const Reference& ref : {fubini_study_reference(m), curved_reference(m)}) {
    CHECK(std::abs(e1_energy(ref, Profile(g.points()))) <= 1e-12);
    const Profile phi = poly(g, {0.0, 0.2});
    CHECK(std::abs(e1_energy(ref, phi - 0.6) - e1_energy(ref, phi)) <= 1e-8);

    // dE1/dt = ⨏ Δφ Ric∧ω_t - ⨏ φ (Ric^2 - ω_t^2) for n = 2.
    const double integral = path_integral([&](double t) {
      const MetricState s = relative_state(ref, t * phi);
      const RadialForm& ric = s.ricci_form();
      const Profile first = laplacian(s, phi) * wedge_density({{ric, 1}, {s.form(), 1}}, n);
      const Profile second = phi * (wedge_density({{ric, 2}}, n) - wedge_density({{s.form(), 2}}, n));
      return average(first - second, m);
    });
    CHECK(std::abs(e1_energy(ref, phi) - integral) <= 1e-5);
  }
}

TEST_CASE("flow velocity") {
  const ManifoldConfig m = manifold(2);
  const Grid& g = m.grid();
  const Reference fs = fubini_study_reference(m);
  CHECK(flow_velocity(fs, Profile(g.points())).max_abs() == 0.0);
  CHECK((flow_velocity(fs, Profile(g.points(), 0.7)) - 0.7).max_abs() <= 1e-12);

  // Ric(ω_t) = ω_t - i∂∂̄v, i.e. D_s v = B - B_R.
  const Reference ref = curved_reference(m);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3; ++i) {
    const Profile phi = testing::sample(ref, rng);
    const MetricState s = relative_state(ref, phi);
    const Profile v = flow_velocity(ref, phi);
    CHECK((d_ds(v, g) - (s.form().B - s.ricci_form().B)).max_abs() <= 1e-6);
  }
  CHECK_THROWS_AS(flow_velocity(fs, poly(g, {0.0, -10.0})), NotInPotentialSpace);
}

TEST_CASE("dirichlet") {
  const ManifoldConfig m = manifold(1);
  const MetricState fs = background(m);
  const Grid& g = m.grid();
  CHECK(std::abs(dirichlet(fs, Profile(g.points(), 3.0))) < 1e-12);
  // ⨏ (D_s x)^2 = (1/2) ∫ x(1-x) dx; J(εx) = ε^2/24 is half of this.
  CHECK(dirichlet(fs, poly(g, {0.0, 1.0})) == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
  const MetricState s = make_state(m, RadialPotential({0.0, 0.1, 0.2}));
  CHECK(dirichlet(s, poly(g, {0.1, -1.0, 2.0, -0.5})) >= 0.0);
}

TEST_CASE("identity residual is a constant of the reference") {
  for (int n = 1; n <= 2; ++n) {
    const ManifoldConfig m = manifold(n);
    const Reference fs = fubini_study_reference(m);
    CHECK(std::abs(identity_residual(fs, Profile(m.grid().points()))) <= 1e-12);

    const Reference ref = curved_reference(m);
    const double c_omega = c_omega_estimate(ref);
    CHECK(c_omega < 0.0);
    CHECK(c_omega == doctest::Approx(-dirichlet(ref.state(), -1.0 * ref.h())).epsilon(1e-12));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 5; ++i) {
      CHECK(std::abs(identity_residual(ref, testing::sample(ref, rng)) - c_omega) <= 1e-7);
    }
  }
}

TEST_CASE("futaki invariant") {
  for (int n = 1; n <= 2; ++n) {
    const ManifoldConfig m = manifold(n);
    CHECK(futaki(fubini_study_reference(m)) == 0.0);
    const Reference ref = curved_reference(m);
    CHECK(std::abs(futaki(ref)) <= 1e-6);
  }
}

TEST_CASE("re-referencing") {
  const ManifoldConfig m = manifold(2);
  const Reference ref = curved_reference(m);
  const Grid& g = m.grid();
  const Profile phi = poly(g, {0.0, 0.1, -0.15});
  const Reference same = re_reference(ref, Profile(g.points()));
  CHECK(k_energy(same, phi) == doctest::Approx(k_energy(ref, phi)).epsilon(1e-12));
  CHECK(e1_energy(same, phi) == doctest::Approx(e1_energy(ref, phi)).epsilon(1e-12));

  const Reference moved = re_reference(ref, phi);
  CHECK((moved.state().form().A - relative_state(ref, phi).form().A).max_abs() == 0.0);
}

TEST_CASE("sampling is seeded and respects the margin") {
  const ManifoldConfig m = manifold(2, 256);
  const Reference ref = curved_reference(m);
  std::mt19937_64 a(9), b(9);
  for (int i = 0; i < 5; ++i) {
    const RadialPotential pa = sample_admissible(ref, a);
    const RadialPotential pb = sample_admissible(ref, b);
    CHECK(pa.coefficients() == pb.coefficients());
    const MetricState s = relative_state(ref, pa.values(m.grid()));
    CHECK(std::min(s.a_hat().min(), s.b_hat().min()) >= 0.5);
  }
}

TEST_CASE("evaluate agrees with the separate functionals") {
  const ManifoldConfig m = manifold(2);
  const Reference ref = curved_reference(m);
  const Profile phi = poly(m.grid(), {0.0, 0.2, -0.1});
  const FunctionalReport r = evaluate(ref, phi);
  CHECK(r.j == doctest::Approx(j_energy(ref, phi)).epsilon(1e-14));
  CHECK(r.nu == doctest::Approx(k_energy(ref, phi)).epsilon(1e-14));
  CHECK(r.e1 == doctest::Approx(e1_energy(ref, phi)).epsilon(1e-14));
  CHECK(r.residual == doctest::Approx(identity_residual(ref, phi)).epsilon(1e-14));
  CHECK(r.residual == doctest::Approx(r.e1 - 2.0 * r.nu - r.dirichlet).epsilon(1e-12));
}
