#pragma once

#include <span>
#include <vector>

namespace retro {

/// Gauss-Hermite rule for weight exp(-x^2). `scaled_weights` are
/// weights * exp(x^2), for integrating functions that already carry the decay.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
};

GaussHermiteRule gauss_hermite(int n);

/// Composite trapezoid weights for `n` equispaced points with spacing h.
std::vector<double> trapezoid_weights(int n, double h);

double trapezoid(std::span<const double> values, double h);

}  // namespace retro
