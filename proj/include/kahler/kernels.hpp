#pragma once

#include <span>

// Data-parallel inner loops used by the calculus layer. The `serial` versions
// are the reference implementations; `parallel` versions are the OpenMP
// kernels the library calls. Both take the same arguments and must agree to
// rounding.
namespace kahler::kernels {

namespace serial {

// Fourth-order first derivative on a uniform grid with one-sided stencils in
// the two boundary bands. Requires f.size() >= 5 and out.size() == f.size().
void first_derivative(std::span<const double> f, double dx, std::span<double> out);

// Composite Simpson rule over an even number of panels.
double simpson(std::span<const double> g, double dx);

// log(Â) + (n-1) log(B̂) for a potential φ sampled on the uniform grid of
// spacing dx, where Â = 1 + d/dx(x(1-x)φ')/(n+1) and B̂ = 1 + (1-x)φ'/(n+1).
// scratch needs 2 * phi.size() entries. Returns min(Â, B̂) over the grid; if
// that is not positive, out holds garbage.
double log_density_ratio(std::span<const double> phi, int n, double dx, std::span<double> out,
                         std::span<double> scratch);

// min(Â, B̂) alone, no logarithms. scratch needs 3 * phi.size() entries.
double positivity_margin(std::span<const double> phi, int n, double dx, std::span<double> scratch);

}  // namespace serial

namespace parallel {

void first_derivative(std::span<const double> f, double dx, std::span<double> out);
double simpson(std::span<const double> g, double dx);
double log_density_ratio(std::span<const double> phi, int n, double dx, std::span<double> out,
                         std::span<double> scratch);
double positivity_margin(std::span<const double> phi, int n, double dx, std::span<double> scratch);

}  // namespace parallel

}  // namespace kahler::kernels
