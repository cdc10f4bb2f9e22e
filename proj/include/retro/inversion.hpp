#pragma once

#include <cstdint>
#include <vector>

#include "retro/fields.hpp"
#include "retro/genfun.hpp"
#include "retro/media.hpp"

namespace retro {

enum class InversionMethod { spectral, series, dalembert };
enum class CoeffMethod { moments, polyfit };

inline constexpr int kMaxSeriesOrder = 48;
inline constexpr double kMaxCutoff = 64.0;

struct ReconstructionConfig {
  InversionMethod method = InversionMethod::series;
  int order = 24;
  double cutoff = 12.0;
  CoeffMethod coeff_method = CoeffMethod::polyfit;
  double fit_window = 3.0;
  EvolutionKernel kernel = EvolutionKernel::classical(0.1);

  /// Throws invalid-argument unless J <= 48, 0 < cutoff <= 64, fit_window > 0.
  void validate() const;
};

/// Generalized Taylor coefficients u_j, j = 0..J, of a sampled field.
struct TaylorCoeffs {
  std::vector<double> u;
  CoeffMethod method = CoeffMethod::polyfit;
  /// 2-norm condition number of the equilibrated fit matrix (polyfit), or
  /// the largest |lambda|^J weight growth used by the moments quadrature.
  double condition = 1.0;
};

struct TaylorOptions {
  int order = 24;
  CoeffMethod method = CoeffMethod::polyfit;
  double fit_window = 3.0;
  /// Expansion point; nonzero only on the homogeneous axis.
  double center = 0.0;
  /// Gaussian damping exp(-eps lambda^2) of the moments quadrature.
  double damping = 1e-4;
};

/// Polyfit: least squares of u against x_n^j / j! on |x - center| <= window.
/// Moments: u_j = w * int (i lambda)^j exp(-eps lambda^2) u~(lambda) dlambda.
TaylorCoeffs taylor_coeffs(const SampledField& u, const LayeredMedium& medium, const TaylorOptions& options);

struct SeriesReconstruction {
  SampledField field;
  TaylorCoeffs coeffs;
  /// Largest |u_j / j! H_jn| over the norm window for each j.
  std::vector<double> term_norms;
  bool non_convergent = false;
};

/// f(x) = sum_{j<=J} u_j / j! H_jn(x) from precomputed coefficients. The
/// divergence flag looks at term sizes on |x| <= norm_window.
SeriesReconstruction reconstruct_from_coeffs(const GenHermiteBasis& basis, const TaylorCoeffs& coeffs,
                                             const SampledField& like, double norm_window);
SeriesReconstruction reconstruct_series(const SampledField& u, const LayeredMedium& medium,
                                        const ReconstructionConfig& config);

/// Analysis, inverse multiplier (exp(l^2 tau) or E_alpha(l^2 tau^alpha)),
/// synthesis over |lambda| <= cutoff. For fractal orders other than 1 the
/// multiplier is applied literally and is not the reciprocal of the forward
/// evolution.
SampledField spectral_invert(const SampledField& u, const LayeredMedium& medium, const EvolutionKernel& kernel,
                             double cutoff);

/// f(x) = (u(x + tau) + u(x - tau)) / 2 on the samples where both shifts stay
/// inside the grid.
SampledField dalembert_invert(const SampledField& u_tau, double tau);

/// Adds independent N(0, sigma^2) noise to every sample.
SampledField add_noise(const SampledField& u, double sigma, std::uint64_t seed);

}  // namespace retro
