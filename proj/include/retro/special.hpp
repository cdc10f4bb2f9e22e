#pragma once

namespace retro {

/// Fractional evolution order, 0 < alpha <= 2. alpha = 1 is classical
/// diffusion, alpha = 2 the hyperbolic (zero-velocity wave) limit.
class FractalOrder {
 public:
  explicit FractalOrder(double alpha);
  double value() const noexcept { return alpha_; }
  /// Spatial scaling exponent alpha / 2.
  double beta() const noexcept { return 0.5 * alpha_; }

 private:
  double alpha_;
};

inline constexpr int kMaxHermiteIndex = 64;

/// Physicists' Hermite polynomial H_j(x), generating function exp(2xt - t^2).
double hermite_poly(int j, double x);

/// Orthonormal Hermite function H_j(x) exp(-x^2/2) / sqrt(2^j j! sqrt(pi)).
double hermite_fn(int j, double x);

/// Sum_k j! / (Gamma(k alpha + 1) (j-2k)!) z^(j-2k): the fractal Hermite sum
/// with every sign positive, i.e. i^j H_j(-iz).
double dual_hermite(int j, double z, FractalOrder alpha);

/// Sum_k (-1)^k j! / (Gamma(k alpha + 1) (j-2k)!) x^(j-2k), k <= floor(j/2).
double fractal_hermite(FractalOrder alpha, int j, double x);

double gamma(double x);

/// Series value of E_{alpha,1}(z) = sum z^k / Gamma(alpha k + 1), |z| <= 50.
/// Throws convergence-failure when 400 terms do not converge or when
/// cancellation between terms destroys the result.
double mittag_leffler(FractalOrder alpha, double z);

inline constexpr double kMittagLefflerDomain = 50.0;

}  // namespace retro
