#pragma once

#include <random>

#include "kahler/verification.hpp"

namespace testing {

inline kahler::ManifoldConfig manifold(int n, int size = 1024) {
  return kahler::ManifoldConfig(n, kahler::build_grid(size));
}

inline kahler::Profile poly(const kahler::Grid& g, std::vector<double> c) {
  return kahler::RadialPotential(std::move(c)).values(g);
}

// The non-Einstein reference used throughout: ψ = -0.2x + 0.3x^2.
inline kahler::Reference curved_reference(const kahler::ManifoldConfig& m) {
  return kahler::Reference(kahler::make_state(m, kahler::RadialPotential({0.0, -0.2, 0.3})));
}

inline kahler::Profile sample(const kahler::Reference& ref, std::mt19937_64& rng) {
  return kahler::sample_admissible(ref, rng).values(ref.state().grid());
}

}  // namespace testing
