#include "kahler/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace kahler::kernels {

namespace {

// One-sided fourth-order stencils at node 0 and node 1 (scaled by 12 dx).
inline double left_edge0(const double* f) {
  return -25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4];
}
inline double left_edge1(const double* f) {
  return -3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4];
}
// Mirrored: f points at the last node, indices run backwards.
inline double right_edge0(const double* f) {
  return 25.0 * f[0] - 48.0 * f[-1] + 36.0 * f[-2] - 16.0 * f[-3] + 3.0 * f[-4];
}
inline double right_edge1(const double* f) {
  return 3.0 * f[0] + 10.0 * f[-1] - 18.0 * f[-2] + 6.0 * f[-3] - f[-4];
}
inline double central(const double* f, std::ptrdiff_t i) {
  return f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2];
}

void edges(std::span<const double> f, double scale, std::span<double> out) {
  const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(f.size()) - 1;
  out[0] = scale * left_edge0(f.data());
  out[1] = scale * left_edge1(f.data());
  out[last] = scale * right_edge0(f.data() + last);
  out[last - 1] = scale * right_edge1(f.data() + last);
}

inline double ratio_at(double x, double phi_x, double r, int n, double* log_out) {
  const double np1 = n + 1.0;
  const double a_hat = r / np1;
  const double b_hat = 1.0 + (1.0 - x) * phi_x / np1;
  const double lowest = a_hat < b_hat ? a_hat : b_hat;
  if (log_out && lowest > 0.0) {
    *log_out = n == 1 ? std::log(a_hat) : std::log(a_hat) + (n - 1) * std::log(b_hat);
  }
  return lowest;
}

}  // namespace

namespace serial {

void first_derivative(std::span<const double> f, double dx, std::span<double> out) {
  const double scale = 1.0 / (12.0 * dx);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(f.size());
  for (std::ptrdiff_t i = 2; i < n - 2; ++i) out[i] = scale * central(f.data(), i);
  edges(f, scale, out);
}

double simpson(std::span<const double> g, double dx) {
  const std::size_t last = g.size() - 1;
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < last; i += 2) odd += g[i];
  for (std::size_t i = 2; i < last; i += 2) even += g[i];
  return dx / 3.0 * (g[0] + g[last] + 4.0 * odd + 2.0 * even);
}

double log_density_ratio(std::span<const double> phi, int n, double dx, std::span<double> out,
                         std::span<double> scratch) {
  const std::size_t m = phi.size();
  std::span<double> phi_x = scratch.subspan(0, m);
  std::span<double> flux = scratch.subspan(m, m);
  first_derivative(phi, dx, phi_x);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = static_cast<double>(i) * dx;
    flux[i] = x * (1.0 - x) * phi_x[i];
  }
  first_derivative(flux, dx, out);  // out holds d/dx(flux) until overwritten
  double lowest = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = static_cast<double>(i) * dx;
    const double v = ratio_at(x, phi_x[i], (n + 1.0) + out[i], n, &out[i]);
    if (v < lowest || v != v) lowest = v != v ? -1.0 : v;
  }
  return lowest;
}

double positivity_margin(std::span<const double> phi, int n, double dx, std::span<double> scratch) {
  const std::size_t m = phi.size();
  std::span<double> phi_x = scratch.subspan(0, m);
  std::span<double> flux = scratch.subspan(m, m);
  std::span<double> dflux = scratch.subspan(2 * m, m);
  first_derivative(phi, dx, phi_x);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = static_cast<double>(i) * dx;
    flux[i] = x * (1.0 - x) * phi_x[i];
  }
  first_derivative(flux, dx, dflux);
  double lowest = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = static_cast<double>(i) * dx;
    const double v = ratio_at(x, phi_x[i], (n + 1.0) + dflux[i], n, nullptr);
    if (v < lowest || v != v) lowest = v != v ? -1.0 : v;
  }
  return lowest;
}

}  // namespace serial

namespace parallel {

void first_derivative(std::span<const double> f, double dx, std::span<double> out) {
  const double scale = 1.0 / (12.0 * dx);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(f.size());
  const double* src = f.data();
  double* dst = out.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 2; i < n - 2; ++i) dst[i] = scale * central(src, i);
  edges(f, scale, out);
}

double simpson(std::span<const double> g, double dx) {
  const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(g.size()) - 1;
  const double* src = g.data();
  double interior = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : interior)
  for (std::ptrdiff_t i = 1; i < last; ++i) interior += (i % 2 == 1 ? 4.0 : 2.0) * src[i];
  return dx / 3.0 * (src[0] + src[last] + interior);
}

double log_density_ratio(std::span<const double> phi, int n, double dx, std::span<double> out,
                         std::span<double> scratch) {
  const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(phi.size());
  double* phi_x = scratch.data();
  double* flux = scratch.data() + m;
  double* dst = out.data();
  first_derivative(phi, dx, scratch.subspan(0, static_cast<std::size_t>(m)));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const double x = static_cast<double>(i) * dx;
    flux[i] = x * (1.0 - x) * phi_x[i];
  }
  first_derivative(scratch.subspan(static_cast<std::size_t>(m), static_cast<std::size_t>(m)), dx, out);
  double lowest = 1.0;
#pragma omp parallel for schedule(static) reduction(min : lowest)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const double x = static_cast<double>(i) * dx;
    double v = ratio_at(x, phi_x[i], (n + 1.0) + dst[i], n, &dst[i]);
    if (v != v) v = -1.0;
    lowest = v < lowest ? v : lowest;
  }
  return lowest;
}

double positivity_margin(std::span<const double> phi, int n, double dx, std::span<double> scratch) {
  const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(phi.size());
  const auto um = static_cast<std::size_t>(m);
  double* phi_x = scratch.data();
  double* flux = scratch.data() + m;
  const double* dflux = scratch.data() + 2 * m;
  first_derivative(phi, dx, scratch.subspan(0, um));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const double x = static_cast<double>(i) * dx;
    flux[i] = x * (1.0 - x) * phi_x[i];
  }
  first_derivative(scratch.subspan(um, um), dx, scratch.subspan(2 * um, um));
  double lowest = 1.0;
#pragma omp parallel for schedule(static) reduction(min : lowest)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const double x = static_cast<double>(i) * dx;
    double v = ratio_at(x, phi_x[i], (n + 1.0) + dflux[i], n, nullptr);
    if (v != v) v = -1.0;
    lowest = v < lowest ? v : lowest;
  }
  return lowest;
}

}  // namespace parallel

}  // namespace kahler::kernels
