#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "kahler/kernels.hpp"

namespace k = kahler::kernels;

namespace {

std::vector<double> on_grid(std::size_t m, double (*f)(double)) {
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = f(static_cast<double>(i) / static_cast<double>(m - 1));
  return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("derivative stencils are exact on quartics, edges included") {
  const std::size_t m = 33;
  const auto f = on_grid(m, [](double x) { return 1.0 - 2.0 * x + 3.0 * x * x - x * x * x + 0.5 * x * x * x * x; });
  const auto df = on_grid(m, [](double x) { return -2.0 + 6.0 * x - 3.0 * x * x + 2.0 * x * x * x; });
  std::vector<double> out(m);
  k::serial::first_derivative(f, 1.0 / 32.0, out);
  CHECK(max_diff(out, df) < 1e-12);
}

TEST_CASE("serial and parallel kernels agree") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t m : {17u, 257u, 4097u}) {
    std::vector<double> f(m);
    for (double& v : f) v = u(rng);
    const double dx = 1.0 / static_cast<double>(m - 1);
    std::vector<double> a(m), b(m);
    k::serial::first_derivative(f, dx, a);
    k::parallel::first_derivative(f, dx, b);
    CHECK(max_diff(a, b) == 0.0);
    const double s = k::serial::simpson(f, dx);
    const double p = k::parallel::simpson(f, dx);
    CHECK(std::abs(s - p) <= 1e-14 * (1.0 + std::abs(s)));
  }
}

TEST_CASE("simpson integrates cubics exactly") {
  const auto f = on_grid(17, [](double x) { return 4.0 * x * x * x - 3.0 * x * x + 1.0; });
  CHECK(k::serial::simpson(f, 1.0 / 16.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k::parallel::simpson(f, 1.0 / 16.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("log density ratio of a linear potential") {
  // n = 1, φ = εx: Â = 1 + ε(1 - 2x)/2, B̂ plays no role.
  const std::size_t m = 65;
  const double eps = 0.3;
  std::vector<double> phi(m), out_s(m), out_p(m), scratch(2 * m);
  for (std::size_t i = 0; i < m; ++i) phi[i] = eps * static_cast<double>(i) / (m - 1.0);
  const double low_s = k::serial::log_density_ratio(phi, 1, 1.0 / (m - 1.0), out_s, scratch);
  const double low_p = k::parallel::log_density_ratio(phi, 1, 1.0 / (m - 1.0), out_p, scratch);
  CHECK(low_s == doctest::Approx(1.0 - eps / 2.0));
  CHECK(low_s == low_p);
  CHECK(max_diff(out_s, out_p) == 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = static_cast<double>(i) / (m - 1.0);
    CHECK(out_s[i] == doctest::Approx(std::log(1.0 + eps * (1.0 - 2.0 * x) / 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("log density ratio reports loss of positivity") {
  const std::size_t m = 65;
  std::vector<double> phi(m), out(m), scratch(2 * m);
  for (std::size_t i = 0; i < m; ++i) phi[i] = -10.0 * static_cast<double>(i) / (m - 1.0);
  CHECK(k::serial::log_density_ratio(phi, 2, 1.0 / (m - 1.0), out, scratch) <= 0.0);
  CHECK(k::parallel::log_density_ratio(phi, 2, 1.0 / (m - 1.0), out, scratch) <= 0.0);
  phi[10] = std::nan("");
  CHECK(k::parallel::log_density_ratio(phi, 2, 1.0 / (m - 1.0), out, scratch) <= 0.0);
}

TEST_CASE("positivity margin matches the log kernel") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  const std::size_t m = 257;
  std::vector<double> phi(m), out(m), scratch(3 * m);
  for (int n = 1; n <= 3; ++n) {
    const double c1 = u(rng), c2 = u(rng);
    for (std::size_t i = 0; i < m; ++i) {
      const double x = static_cast<double>(i) / (m - 1.0);
      phi[i] = c1 * x + c2 * x * x;
    }
    const double dx = 1.0 / (m - 1.0);
    const double expected = k::serial::log_density_ratio(phi, n, dx, out, scratch);
    CHECK(k::serial::positivity_margin(phi, n, dx, scratch) == expected);
    CHECK(k::parallel::positivity_margin(phi, n, dx, scratch) == expected);
  }
}
