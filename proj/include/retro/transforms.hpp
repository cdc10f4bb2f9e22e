#pragma once

#include <span>
#include <vector>

#include "retro/fields.hpp"
#include "retro/media.hpp"

namespace retro {

/// 1 / (2 pi a_{n+1}); makes the homogeneous pair an exact Fourier pair.
double default_spectral_weight(const LayeredMedium& medium);

/// u~(lambda) = integral phi*(xi, lambda) u(xi) dxi by the trapezoid rule on
/// the field's grid. Flags truncation when u does not decay to 1e-12 of its
/// peak at the grid ends.
Spectrum transform_analysis(const LayeredMedium& medium, const SampledField& u, std::span<const double> lambda_grid);

/// f(x) = weight * integral phi(x, lambda) u~(lambda) dlambda by the
/// trapezoid rule over the (symmetric, uniform) spectrum grid, evaluated on
/// the grid of `like`.
SampledField transform_synthesis(const LayeredMedium& medium, const Spectrum& spectrum, const SampledField& like,
                                 double weight);

/// Aggregated mass of the smoothed kernel
///   K_eps(x, xi) = weight * integral phi(x, l) exp(-eps l^2) phi*(xi, l) dl
/// for probe points x in `layer_x` against xi in `layer_xi`.
struct LayerPairDefect {
  int layer_x = 0;
  int layer_xi = 0;
  /// Mean mass within the diagonal window (same-layer pairs only, else 0).
  double diagonal_mass = 0.0;
  double diagonal_deviation = 0.0;
  /// Largest absolute mass away from the diagonal window.
  double ghost_mass = 0.0;
  int probes = 0;
};

struct CompletenessReport {
  double epsilon = 0.0;
  double weight = 0.0;
  double tolerance = 1e-3;
  std::vector<LayerPairDefect> pairs;
  /// Set when any diagonal mass misses 1 or any ghost exceeds the tolerance.
  bool mismatch = false;
};

CompletenessReport completeness_defect(const LayeredMedium& medium, double epsilon, std::span<const double> x_points,
                                       double weight, double tolerance = 1e-3);
CompletenessReport completeness_defect(const LayeredMedium& medium, double epsilon, std::span<const double> x_points);

}  // namespace retro
