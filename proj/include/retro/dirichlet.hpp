#pragma once

#include <functional>
#include <span>
#include <vector>

#include "retro/fields.hpp"
#include "retro/jets.hpp"

namespace retro {

/// Values of a harmonic u(x, y) on the line x = depth inside the half-plane x > 0.
struct HalfPlaneTrace {
  double depth = 1.0;
  SampledField trace;

  void validate() const;
};

/// f(y) = Re (1/pi) int_0^L exp(lambda l) exp(i lambda y) int exp(-i lambda eta) u(l, eta) deta dlambda.
SampledField dirichlet_invert_spectral(const HalfPlaneTrace& trace, double cutoff);

/// f(y) = sum_j d_j / j! ((y + i l)^j + (y - i l)^j) / 2 with d_j = u^(j)(l, 0).
std::function<double(double)> dirichlet_invert_series(std::span<const double> derivatives, double depth);

/// u(x, y) continued to complex y.
using ComplexHarmonic = std::function<cplx(double, cplx)>;

/// f(y) = Re u(l, y + i l).
std::function<double(double)> dirichlet_invert_continuation(ComplexHarmonic u, double depth);

/// d_j = u^(j)(l, 0), j <= order, by polynomial fit of the trace on |y| <= window.
std::vector<double> trace_derivatives(const HalfPlaneTrace& trace, int order, double window);

/// Max |discrete Laplacian| / max |u| of the harmonic extension of f sampled
/// at depths l - delta, l, l + delta, over the middle half of the grid.
double harmonicity_residual(const SampledField& f, double depth, double delta);

}  // namespace retro
