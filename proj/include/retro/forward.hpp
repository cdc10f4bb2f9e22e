#pragma once

#include <functional>
#include <span>

#include "retro/fields.hpp"
#include "retro/media.hpp"

namespace retro {

/// Homogeneous evolution by an FFT multiplier: exp(-a^2 l^2 tau) for
/// alpha = 1, cos(a l tau) for alpha = 2, E_alpha(-a^2 l^2 tau^alpha)
/// otherwise.
FieldResult heat_forward_homogeneous(const SampledField& f, double tau, double speed, double alpha);

/// Crank-Nicolson finite volumes for u_t = (a^2 u_x)_x with u = 0 at the
/// grid ends. Breakpoints must be grid points and couplings must be ideal
/// contact (continuity of u and a^2 u_x) or a positive multiple of it.
SampledField piecewise_heat_fd(const LayeredMedium& medium, const SampledField& f, double tau, int steps);

/// K(t, x, xi) = weight * int_{-L}^{L} exp(-l^2 t) phi(x, l) phi*(xi, l) dl.
double influence_kernel(const LayeredMedium& medium, double t, double x, double xi, double lambda_cutoff,
                        double weight);
double influence_kernel(const LayeredMedium& medium, double t, double x, double xi, double lambda_cutoff);

/// u(x, t) = g(x + tau - t) + g(x - tau + t) on n samples of [xmin, xmax).
SampledField wave_forward_family(const std::function<double(double)>& g, double t, double tau, double xmin,
                                 double xmax, int n);

/// u(x, tau) = sum_j f_j tau^(beta j) / j! H*_j(x / tau^beta) from Taylor
/// derivatives f_j = f^(j)(0), beta = alpha / 2, tau > 0.
std::function<double(double)> forward_series(std::span<const double> taylor, double tau, double alpha);

/// Laplace half-plane evolution u(l, y) from u(0, y) = f: multiplier exp(-l |lambda|).
FieldResult halfplane_forward(const SampledField& f, double depth);

}  // namespace retro
