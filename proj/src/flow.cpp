#include "kahler/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kahler {

namespace {

double dot(const Profile& a, const Profile& b) {
  return std::inner_product(a.data().begin(), a.data().end(), b.data().begin(), 0.0);
}

Profile rhs(const Reference& ref, const Profile& phi, const PolynomialProjector* projector) {
  Profile v;
  try {
    v = flow_velocity(ref, phi);
  } catch (const NotInPotentialSpace& e) {
    throw StepRejected(std::string("stage left the potential space: ") + e.what());
  }
  return projector ? (*projector)(v) : v;
}

double default_dt(const Grid& g) {
  const double ratio = 2048.0 / g.size();
  return 1e-4 * ratio * ratio;
}

void rebalance(Profile& shape, double& offset) {
  const double mean = std::accumulate(shape.data().begin(), shape.data().end(), 0.0) / shape.size();
  shape -= mean;
  offset += mean;
}

}  // namespace

PolynomialProjector::PolynomialProjector(const Grid& grid, int degree) : degree_(degree) {
  if (degree < 1 || static_cast<std::size_t>(degree) >= grid.points()) {
    throw ConfigError("polynomial degree must be in [1, grid size)");
  }
  // Legendre P_k(2x - 1) by the three-term recurrence.
  const Profile t = Profile::sample(grid, [](double x) { return 2.0 * x - 1.0; });
  std::vector<Profile> raw;
  raw.emplace_back(grid.points(), 1.0);
  raw.push_back(t);
  for (int k = 1; k < degree; ++k) {
    raw.push_back(((2.0 * k + 1.0) * (t * raw[static_cast<std::size_t>(k)]) -
                   k * raw[static_cast<std::size_t>(k) - 1]) *
                  (1.0 / (k + 1.0)));
  }
  // Modified Gram-Schmidt, two passes.
  for (Profile p : raw) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const Profile& b : basis_) p -= dot(p, b) * b;
    }
    p *= 1.0 / std::sqrt(dot(p, p));
    basis_.push_back(std::move(p));
  }
}

Profile PolynomialProjector::operator()(const Profile& f) const {
  Profile out(f.size());
  for (const Profile& b : basis_) out += dot(f, b) * b;
  return out;
}

Profile step(const Reference& ref, const Profile& phi, double dt, const PolynomialProjector* projector) {
  // out accumulates the weighted stages; stage holds the next evaluation point.
  Profile out = phi;
  Profile stage(phi.size());
  const double weight[4] = {dt / 6.0, dt / 3.0, dt / 3.0, dt / 6.0};
  const double advance[3] = {0.5 * dt, 0.5 * dt, dt};
  const auto p = phi.values();
  for (int s = 0; s < 4; ++s) {
    const Profile k = rhs(ref, s == 0 ? phi : stage, projector);
    const auto kv = k.values();
    const auto acc = out.values();
    for (std::size_t i = 0; i < kv.size(); ++i) acc[i] += weight[s] * kv[i];
    if (s < 3) {
      const auto next = stage.values();
      for (std::size_t i = 0; i < kv.size(); ++i) next[i] = p[i] + advance[s] * kv[i];
    }
  }
  if (!is_admissible(ref.config(), ref.state().potential() + out)) {
    std::ostringstream msg;
    msg << "step of size " << dt << " left the potential space";
    throw StepRejected(msg.str());
  }
  return out;
}

double stiffness_estimate(const Reference& ref, const Profile& phi, const PolynomialProjector* projector,
                          int iterations) {
  const Profile base = rhs(ref, phi, projector);
  // Start from a mix of smooth and grid-scale content so both regimes are seen.
  Profile w = Profile::sample(ref.config().grid(), [](double x) { return std::sin(37.0 * x) + std::cos(3.0 * x); });
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += (i % 2 == 0 ? 0.5 : -0.5);
  if (projector) w = (*projector)(w);
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const double norm = std::sqrt(dot(w, w));
    if (norm == 0.0) break;
    w *= 1.0 / norm;
    double eps = 1e-6;
    Profile jw;
    for (;;) {
      try {
        jw = (rhs(ref, phi + eps * w, projector) - base) * (1.0 / eps);
        break;
      } catch (const StepRejected&) {
        eps *= 0.1;
        if (eps < 1e-14) return lambda;
      }
    }
    lambda = std::sqrt(dot(jw, jw));
    w = std::move(jw);
  }
  return lambda;
}

FlowRecord make_record(const Reference& ref, double t, const Profile& phi) {
  const MetricState state = relative_state(ref, phi);
  const FunctionalReport rep = evaluate(ref, phi);
  FlowRecord rec;
  rec.t = t;
  rec.nu = rep.nu;
  rec.e1 = rep.e1;
  rec.dirichlet = rep.dirichlet;
  rec.residual = rep.residual;
  rec.scal_min = state.scal().min();
  rec.scal_max = state.scal().max();
  rec.futaki = rep.futaki;
  rec.min_a_hat = state.a_hat().min();
  rec.min_b_hat = state.b_hat().min();
  return rec;
}

FlowTrace run(const Reference& ref, const FlowConfig& config) {
  const Grid& g = ref.config().grid();
  if (!(config.t_max > 0.0)) throw ConfigError("t_max must be positive");
  if (config.dt_init < 0.0) throw ConfigError("dt_init must be positive");
  if (!(config.dt_safety > 0.0 && config.dt_safety <= 1.0)) throw ConfigError("dt_safety must lie in (0, 1]");
  if (config.record_every < 1) throw ConfigError("record_every must be positive");
  if (config.initial_phi.size() != g.points()) throw ConfigError("initial potential does not match grid");

  std::optional<PolynomialProjector> projector;
  if (config.representation == Representation::kPolynomial) projector.emplace(g, config.poly_degree);
  const PolynomialProjector* proj = projector ? &*projector : nullptr;

  FlowTrace trace;
  Profile shape = proj ? (*proj)(config.initial_phi) : config.initial_phi;
  double offset = 0.0;
  rebalance(shape, offset);
  if (!is_admissible(ref.config(), ref.state().potential() + shape)) {
    throw NotInPotentialSpace("initial potential is not admissible");
  }

  auto stable_dt = [&](const Profile& phi) {
    const double lambda = stiffness_estimate(ref, phi, proj);
    // RK4 covers about 2.78 on the negative real axis.
    return lambda > 0.0 ? 2.0 / lambda : config.t_max;
  };

  double t = 0.0;
  double dt_stable = stable_dt(shape);
  double dt = std::min(config.dt_init > 0.0 ? config.dt_init : default_dt(g), dt_stable);
  int streak = 0;
  int retries = 0;
  trace.records.push_back(make_record(ref, t, shape));

  const double t_end = config.t_max;
  while (t_end - t > 1e-12 * t_end) {
    const double h = std::min(dt, t_end - t);
    Profile next;
    try {
      next = step(ref, shape, h, proj);
    } catch (const StepRejected& e) {
      ++trace.rejected_steps;
      ++retries;
      streak = 0;
      dt = 0.5 * h;
      if (retries > config.max_retries || dt < config.dt_min) {
        trace.aborted = true;
        std::ostringstream msg;
        msg << "positivity could not be restored at t = " << t << " (dt = " << dt << "): " << e.what();
        trace.diagnostic = msg.str();
        break;
      }
      continue;
    }
    shape = std::move(next);
    offset *= std::exp(h);
    rebalance(shape, offset);
    t += h;
    retries = 0;
    ++trace.accepted_steps;
    if (trace.accepted_steps % config.stability_every == 0) dt_stable = stable_dt(shape);
    if (++streak >= config.grow_after) {
      dt = dt / config.dt_safety;
      streak = 0;
    }
    dt = std::min(dt, dt_stable);
    if (trace.accepted_steps % config.record_every == 0) trace.records.push_back(make_record(ref, t, shape));
  }
  if (!trace.aborted && trace.records.back().t < t) trace.records.push_back(make_record(ref, t, shape));
  trace.final_shape = std::move(shape);
  trace.final_offset = offset;
  return trace;
}

double c_omega_estimate(const Reference& ref) {
  return identity_residual(ref, Profile(ref.config().grid().points()));
}

}  // namespace kahler
