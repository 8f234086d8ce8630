#include "kahler/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kahler/kernels.hpp"

namespace kahler {

namespace {

void require_same_shape(const Profile& a, std::size_t points, const char* what) {
  if (a.size() != points) {
    std::ostringstream msg;
    msg << what << ": profile has " << a.size() << " samples, grid has " << points;
    throw std::invalid_argument(msg.str());
  }
}

void require_same_shape(const Profile& a, const Profile& b) {
  if (a.size() != b.size()) throw std::invalid_argument("profile size mismatch");
}

}  // namespace

Grid::Grid(int size) : size_(size), spacing_(0.0) {
  if (size < kMinSize || size % 2 != 0) {
    std::ostringstream msg;
    msg << "grid size must be even and >= " << kMinSize << ", got " << size;
    throw ConfigError(msg.str());
  }
  spacing_ = 1.0 / static_cast<double>(size);
  nodes_.resize(static_cast<std::size_t>(size) + 1);
  for (int i = 0; i <= size; ++i) nodes_[static_cast<std::size_t>(i)] = static_cast<double>(i) / size;
}

Grid build_grid(int size) { return Grid(size); }

Profile Profile::sample(const Grid& g, const std::function<double(double)>& f) {
  Profile out(g.points());
  for (std::size_t i = 0; i < g.points(); ++i) out.values_[i] = f(g.node(i));
  return out;
}

bool Profile::is_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Profile::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Profile::max() const { return *std::max_element(values_.begin(), values_.end()); }
double Profile::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Profile& Profile::operator+=(const Profile& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < size(); ++i) values_[i] += other.values_[i];
  return *this;
}
Profile& Profile::operator-=(const Profile& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < size(); ++i) values_[i] -= other.values_[i];
  return *this;
}
Profile& Profile::operator*=(const Profile& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < size(); ++i) values_[i] *= other.values_[i];
  return *this;
}
Profile& Profile::operator/=(const Profile& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < size(); ++i) values_[i] /= other.values_[i];
  return *this;
}
Profile& Profile::operator+=(double c) {
  for (double& v : values_) v += c;
  return *this;
}
Profile& Profile::operator-=(double c) {
  for (double& v : values_) v -= c;
  return *this;
}
Profile& Profile::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

Profile d_dx(const Profile& f, const Grid& g) {
  require_same_shape(f, g.points(), "d_dx");
  Profile out(f.size());
  kernels::parallel::first_derivative(f.values(), g.spacing(), out.values());
  return out;
}

Profile d_ds(const Profile& f, const Grid& g) {
  Profile out = d_dx(f, g);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = g.node(i);
    out[i] *= x * (1.0 - x);
  }
  return out;
}

Profile reduce_by_measure(const Profile& f, const Grid& g, QuadratureOptions opts) {
  require_same_shape(f, g.points(), "reduce_by_measure");
  const std::size_t last = g.points() - 1;
  Profile out(f.size());
  for (std::size_t i = 1; i < last; ++i) {
    const double x = g.node(i);
    out[i] = f[i] / (x * (1.0 - x));
  }
  // Quartic through five neighbours, evaluated one node further out.
  out[0] = 5.0 * out[1] - 10.0 * out[2] + 10.0 * out[3] - 5.0 * out[4] + out[5];
  out[last] = 5.0 * out[last - 1] - 10.0 * out[last - 2] + 10.0 * out[last - 3] -
              5.0 * out[last - 4] + out[last - 5];
  for (std::size_t i : {std::size_t{0}, last}) {
    if (!std::isfinite(out[i]) || std::abs(out[i]) > opts.endpoint_bound) {
      std::ostringstream msg;
      msg << "integrand f/(x(1-x)) is not admissible: extrapolated value " << out[i]
          << " at x = " << g.node(i) << " exceeds bound " << opts.endpoint_bound;
      throw DivergentIntegrand(msg.str());
    }
  }
  return out;
}

double integrate_ds(const Profile& f, const Grid& g, QuadratureOptions opts) {
  return integrate_dx(reduce_by_measure(f, g, opts), g);
}

double integrate_dx(const Profile& f, const Grid& g) {
  require_same_shape(f, g.points(), "integrate_dx");
  return kernels::parallel::simpson(f.values(), g.spacing());
}

Profile cumulative_integral_dx(const Profile& f, const Grid& g, std::size_t origin) {
  require_same_shape(f, g.points(), "cumulative_integral_dx");
  const std::size_t last = g.points() - 1;
  if (origin > last) throw std::invalid_argument("cumulative_integral_dx: origin outside grid");
  const double w = g.spacing() / 24.0;
  // Integral over cell [x_i, x_{i+1}] of the cubic through four nearby nodes.
  auto cell = [&](std::size_t i) {
    if (i == 0) return w * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    if (i == last - 1) return w * (f[i - 2] - 5.0 * f[i - 1] + 19.0 * f[i] + 9.0 * f[i + 1]);
    return w * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
  };
  Profile out(f.size());
  for (std::size_t i = origin; i < last; ++i) out[i + 1] = out[i] + cell(i);
  for (std::size_t i = origin; i > 0; --i) out[i - 1] = out[i] - cell(i - 1);
  return out;
}

}  // namespace kahler
