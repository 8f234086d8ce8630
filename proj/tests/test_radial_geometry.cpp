#include <cmath>

#include <doctest.h>

#include "support.hpp"

using namespace kahler;
using testing::manifold;
using testing::poly;

TEST_CASE("dimension is validated") {
  CHECK_THROWS_AS(manifold(0), ConfigError);
  CHECK_THROWS_AS(manifold(4), ConfigError);
  CHECK(manifold(3).volume() == 64.0);
}

TEST_CASE("background is Fubini–Study") {
  for (int n = 1; n <= 3; ++n) {
    const ManifoldConfig m = manifold(n);
    const MetricState fs = background(m);
    const Grid& g = m.grid();
    const double np1 = n + 1.0;
    for (std::size_t i = 0; i < g.points(); ++i) {
      const double x = g.node(i);
      CHECK(fs.form().B[i] == doctest::Approx(np1 * x).epsilon(1e-14));
      CHECK(fs.form().A[i] == doctest::Approx(np1 * x * (1.0 - x)).epsilon(1e-14));
    }
    CHECK((fs.ricci_form().A - fs.form().A).max_abs() <= 1e-10);
    CHECK((fs.ricci_form().B - fs.form().B).max_abs() <= 1e-10);
    CHECK(fs.log_ratio().max_abs() == 0.0);
    CHECK((fs.scal() - 2.0 * n).max_abs() <= 1e-8);
  }
  const MetricState fs1 = background(manifold(1, 64));
  CHECK(fs1.form().B[32] == 1.0);
  CHECK(fs1.form().A[32] == 0.5);
}

TEST_CASE("constant potentials do not move the metric") {
  const ManifoldConfig m = manifold(2);
  const MetricState fs = background(m);
  const MetricState c = make_state(m, RadialPotential({1.7}));
  CHECK((c.form().A - fs.form().A).max_abs() <= 1e-12);
  CHECK((c.form().B - fs.form().B).max_abs() <= 1e-12);
  CHECK(c.potential()[0] == 1.7);
}

TEST_CASE("positivity of linear potentials") {
  const ManifoldConfig m = manifold(1);
  const MetricState s = make_state(m, RadialPotential({0.0, 0.3}));
  const Grid& g = m.grid();
  for (std::size_t i = 0; i < g.points(); ++i) {
    CHECK(s.b_hat()[i] == doctest::Approx(1.0 + 0.15 * (1.0 - g.node(i))).epsilon(1e-12));
    CHECK(s.a_hat()[i] == doctest::Approx(1.0 + 0.15 * (1.0 - 2.0 * g.node(i))).epsilon(1e-10));
  }
  CHECK(positivity_margin(m, poly(g, {0.0, 0.3})) == doctest::Approx(0.85).epsilon(1e-12));
  CHECK_THROWS_AS(make_state(m, RadialPotential({0.0, -10.0})), NotInPotentialSpace);
  CHECK_FALSE(is_admissible(m, poly(g, {0.0, -10.0})));
  CHECK(is_admissible(m, poly(g, {0.0, 0.3})));
  CHECK_THROWS_AS(log_density_ratio(m, poly(g, {0.0, -10.0})), NotInPotentialSpace);
}

TEST_CASE("fast log density matches the full state") {
  for (int n = 1; n <= 3; ++n) {
    const ManifoldConfig m = manifold(n);
    const Profile phi = poly(m.grid(), {0.1, 0.2, -0.3, 0.15});
    CHECK((log_density_ratio(m, phi) - make_state(m, phi).log_ratio()).max_abs() < 1e-14);
  }
}

TEST_CASE("wedge densities") {
  const int n = 2;
  const ManifoldConfig m = manifold(n);
  const MetricState fs = background(m);
  const MetricState s = make_state(m, RadialPotential({0.0, 0.2, -0.1}));
  const RadialForm& w = fs.form();
  const RadialForm& ws = s.form();

  CHECK((wedge_density({{ws, 2}}, n) - 2.0 * ws.A * ws.B).max_abs() < 1e-12);
  const Profile mixed = wedge_density({{w, 1}, {ws, 1}}, n);
  CHECK((mixed - (w.A * ws.B + ws.A * w.B)).max_abs() < 1e-12);
  CHECK_THROWS_AS(wedge_density({{w, 1}}, n), std::invalid_argument);

  const ManifoldConfig m1 = manifold(1);
  const MetricState s1 = make_state(m1, RadialPotential({0.0, 0.2}));
  CHECK((wedge_density({{background(m1).form(), 0}, {s1.form(), 1}}, 1) - s1.form().A).max_abs() == 0.0);
}

TEST_CASE("class volume is fixed") {
  for (int n = 1; n <= 3; ++n) {
    const ManifoldConfig m = manifold(n);
    CHECK(average(wedge_density({{background(m).form(), n}}, n), m) == doctest::Approx(1.0).epsilon(1e-12));
    const MetricState s = make_state(m, RadialPotential({0.0, 0.25, -0.2, 0.1}));
    CHECK(std::abs(average(wedge_density({{s.form(), n}}, n), m) - 1.0) <= 1e-8);
    CHECK(average(Profile(m.grid().points()), m) == 0.0);
  }
}

TEST_CASE("ricci form against direct differentiation of the log density") {
  // Ric(ω_φ) = ω_FS - i∂∂̄ log(ω_φ^n/ω^n), so A_R = A_0 - D_s D_s L.
  const ManifoldConfig m = manifold(1);
  const Grid& g = m.grid();
  const MetricState fs = background(m);
  const MetricState s = make_state(m, RadialPotential({0.0, 0.1}));
  const Profile direct = fs.form().A - d_ds(d_ds(s.log_ratio(), g), g);
  CHECK((ricci(s).A - direct).max_abs() <= 1e-6);
  CHECK((ricci(s).B - s.ricci_form().B).max_abs() == 0.0);
}

TEST_CASE("ricci class and scalar curvature average") {
  for (int n = 1; n <= 3; ++n) {
    const ManifoldConfig m = manifold(n);
    const MetricState s = make_state(m, RadialPotential({0.0, 0.2, -0.25, 0.1}));
    const double ric_total = integrate_ds(wedge_density({{s.ricci_form(), 1}, {s.form(), n - 1}}, n), m.grid());
    CHECK(std::abs(ric_total - std::pow(n + 1.0, n)) <= 1e-6 * std::pow(n + 1.0, n));
    const Profile vol = wedge_density({{s.form(), n}}, n);
    CHECK(std::abs(average(s.scal() * vol, m) - 2.0 * n) <= 1e-6);
    CHECK((scalar_curvature(s) - s.scal()).max_abs() == 0.0);

    // Scal = 2n Ric∧ω^{n-1}/ω^n away from the degenerate endpoints.
    const Profile ric_wedge = wedge_density({{s.ricci_form(), 1}, {s.form(), n - 1}}, n);
    for (std::size_t i = 8; i + 8 < m.grid().points(); ++i) {
      CHECK(s.scal()[i] == doctest::Approx(2.0 * n * ric_wedge[i] / vol[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("laplacian") {
  for (int n = 1; n <= 3; ++n) {
    const ManifoldConfig m = manifold(n);
    const Grid& g = m.grid();
    const MetricState fs = background(m);
    CHECK(laplacian(fs, Profile(g.points(), 4.0)).max_abs() < 1e-10);
    // The centred moment coordinate is a first eigenfunction: Δx = -2(x - n/(n+1)).
    const Profile x = Profile::sample(g, [](double t) { return t; });
    const Profile expected = Profile::sample(g, [&](double t) { return -2.0 * (t - n / (n + 1.0)); });
    CHECK((laplacian(fs, x) - expected).max_abs() <= 1e-8);

    const MetricState s = make_state(m, RadialPotential({0.0, 0.2, -0.25}));
    const Profile f = poly(g, {0.3, -1.0, 0.5, 0.7});
    const Profile vol = wedge_density({{s.form(), n}}, n);
    CHECK(std::abs(average(laplacian(s, f) * vol, m)) <= 1e-6);
  }
}

TEST_CASE("gradient pairing") {
  const Grid g = kahler::build_grid(64);
  const RadialForm zero = gradient_pairing(Profile(g.points(), 1.0), Profile(g.points(), 1.0), g);
  CHECK(zero.A.max_abs() < 1e-12);
  CHECK(zero.B.max_abs() == 0.0);
  const Profile x = Profile::sample(g, [](double t) { return t; });
  const RadialForm xx = gradient_pairing(x, x, g);
  CHECK(xx.A[32] == doctest::Approx(0.0625).epsilon(1e-14));
  const Profile f = poly(g, {0.0, 1.0, -3.0, 2.0});
  CHECK(gradient_pairing(f, f, g).A.min() >= 0.0);
}
