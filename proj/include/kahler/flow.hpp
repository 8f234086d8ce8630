#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kahler/functionals.hpp"

namespace kahler {

enum class Representation {
  kNodal,       // grid values evolve freely
  kPolynomial,  // right-hand side projected onto polynomials of degree poly_degree
};

struct FlowConfig {
  Profile initial_phi;  // relative to the reference
  double t_max = 10.0;
  double dt_init = 0.0;  // 0 selects 1e-4 (2048/N)^2
  double dt_safety = 0.5;
  int record_every = 100;
  Representation representation = Representation::kNodal;
  int poly_degree = 24;
  int max_retries = 40;
  int grow_after = 8;  // accepted steps in a row before dt grows by 1/dt_safety
  double dt_min = 1e-14;
  // Steps between re-estimates of the explicit stability limit.
  int stability_every = 200;
};

struct FlowRecord {
  double t = 0.0;
  double nu = 0.0;
  double e1 = 0.0;
  double dirichlet = 0.0;
  double residual = 0.0;
  double scal_min = 0.0;
  double scal_max = 0.0;
  double futaki = 0.0;
  double min_a_hat = 0.0;
  double min_b_hat = 0.0;
};

struct FlowTrace {
  std::vector<FlowRecord> records;
  long accepted_steps = 0;
  long rejected_steps = 0;
  // Potential at t_max is shape + offset; the constant mode grows like e^t
  // and is carried separately so derivatives never see it.
  Profile final_shape;
  double final_offset = 0.0;
  bool aborted = false;
  std::string diagnostic;
};

// Least-squares projection of grid values onto polynomials of a fixed degree
// (Legendre basis on [0,1], orthonormalized against the nodal inner product).
class PolynomialProjector {
 public:
  PolynomialProjector(const Grid& grid, int degree);
  Profile operator()(const Profile& f) const;
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
  std::vector<Profile> basis_;
};

// One classical RK4 step of φ' = v(φ). With a projector, every stage
// derivative is projected first. Throws StepRejected if a stage or the result
// leaves the potential space.
Profile step(const Reference& ref, const Profile& phi, double dt, const PolynomialProjector* projector = nullptr);

// Spectral radius of the linearized right-hand side, by power iteration.
double stiffness_estimate(const Reference& ref, const Profile& phi, const PolynomialProjector* projector = nullptr,
                          int iterations = 40);

FlowRecord make_record(const Reference& ref, double t, const Profile& phi);

// Integrates to t_max with adaptive dt, recording every record_every
// accepted steps plus t = 0 and t = t_max.
FlowTrace run(const Reference& ref, const FlowConfig& config);

// identity_residual at φ = 0.
double c_omega_estimate(const Reference& ref);

}  // namespace kahler
