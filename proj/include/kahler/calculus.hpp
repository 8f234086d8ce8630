#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "kahler/errors.hpp"

namespace kahler {

// Uniform grid on the moment coordinate x in [0,1]. The chart variable is
// s = log(x / (1 - x)), so d/ds = x (1 - x) d/dx.
class Grid {
 public:
  static constexpr int kMinSize = 16;

  // Throws ConfigError unless size >= kMinSize and size is even.
  explicit Grid(int size);

  int size() const noexcept { return size_; }
  std::size_t points() const noexcept { return nodes_.size(); }
  double spacing() const noexcept { return spacing_; }
  double node(std::size_t i) const noexcept { return nodes_[i]; }
  std::span<const double> nodes() const noexcept { return nodes_; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept { return a.size_ == b.size_; }

 private:
  int size_;
  double spacing_;
  std::vector<double> nodes_;
};

Grid build_grid(int size);

// Samples of a radial function, one per grid node.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::size_t points, double value = 0.0) : values_(points, value) {}
  explicit Profile(std::vector<double> values) : values_(std::move(values)) {}

  // f evaluated at every node of g.
  static Profile sample(const Grid& g, const std::function<double(double)>& f);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }

  bool is_finite() const noexcept;
  double min() const;
  double max() const;
  double max_abs() const;

  Profile& operator+=(const Profile& other);
  Profile& operator-=(const Profile& other);
  Profile& operator*=(const Profile& other);
  Profile& operator/=(const Profile& other);
  Profile& operator+=(double c);
  Profile& operator-=(double c);
  Profile& operator*=(double c);

  friend Profile operator+(Profile a, const Profile& b) { return a += b; }
  friend Profile operator-(Profile a, const Profile& b) { return a -= b; }
  friend Profile operator*(Profile a, const Profile& b) { return a *= b; }
  friend Profile operator/(Profile a, const Profile& b) { return a /= b; }
  friend Profile operator+(Profile a, double c) { return a += c; }
  friend Profile operator+(double c, Profile a) { return a += c; }
  friend Profile operator-(Profile a, double c) { return a -= c; }
  friend Profile operator-(double c, Profile a) {
    for (double& v : a.values_) v = c - v;
    return a;
  }
  friend Profile operator*(Profile a, double c) { return a *= c; }
  friend Profile operator*(double c, Profile a) { return a *= c; }
  friend Profile operator-(Profile a) { return a *= -1.0; }

  template <typename F>
  Profile map(F&& f) const {
    Profile out(size());
    for (std::size_t i = 0; i < size(); ++i) out.values_[i] = f(values_[i]);
    return out;
  }

 private:
  std::vector<double> values_;
};

// Fourth-order derivative in x.
Profile d_dx(const Profile& f, const Grid& g);

// x (1 - x) d/dx; vanishes at both endpoints.
Profile d_ds(const Profile& f, const Grid& g);

struct QuadratureOptions {
  // Largest admissible magnitude of the extrapolated endpoint values.
  double endpoint_bound = 1e8;
};

// Integrand f / (x (1 - x)) with its endpoint values filled in by quartic
// extrapolation from the five nearest interior nodes.
Profile reduce_by_measure(const Profile& f, const Grid& g, QuadratureOptions opts = {});

// Integral over s of f, i.e. the x-integral of f / (x (1 - x)).
double integrate_ds(const Profile& f, const Grid& g, QuadratureOptions opts = {});

// Plain integral over [0,1] in x.
double integrate_dx(const Profile& f, const Grid& g);

// F(x_i) = integral of f from x_{origin} to x_i (fourth order per cell).
Profile cumulative_integral_dx(const Profile& f, const Grid& g, std::size_t origin);

}  // namespace kahler
