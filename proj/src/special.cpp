#include "retro/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "retro/errors.hpp"

namespace retro {

namespace {

void check_index(int j) {
  if (j < 0 || j > kMaxHermiteIndex) {
    fail(ErrorKind::out_of_range, "Hermite index " + std::to_string(j) + " outside [0, 64]");
  }
}

// j! / (j - 2k)! as a running product.
double falling_factorial(int j, int count) {
  double p = 1.0;
  for (int i = 0; i < count; ++i) p *= static_cast<double>(j - i);
  return p;
}

double signed_hermite_sum(double alpha, int j, double x, bool alternate) {
  double sum = 0.0;
  for (int k = 0; 2 * k <= j; ++k) {
    const double coeff = falling_factorial(j, 2 * k) / gamma(k * alpha + 1.0);
    const double term = coeff * std::pow(x, j - 2 * k);
    sum += (alternate && (k % 2 == 1)) ? -term : term;
  }
  return sum;
}

}  // namespace

FractalOrder::FractalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    fail(ErrorKind::invalid_argument, "fractal order must lie in (0, 2], got " + std::to_string(alpha));
  }
}

double hermite_poly(int j, double x) {
  check_index(j);
  double prev = 1.0;
  if (j == 0) return prev;
  double cur = 2.0 * x;
  for (int n = 1; n < j; ++n) {
    const double next = 2.0 * x * cur - 2.0 * n * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_fn(int j, double x) {
  check_index(j);
  // Orthonormal recurrence, normalized at every step so j! never appears.
  double prev = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (j == 0) return prev;
  double cur = std::sqrt(2.0) * x * prev;
  for (int n = 1; n < j; ++n) {
    const double next = std::sqrt(2.0 / (n + 1)) * x * cur - std::sqrt(static_cast<double>(n) / (n + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double dual_hermite(int j, double z, FractalOrder alpha) {
  check_index(j);
  return signed_hermite_sum(alpha.value(), j, z, false);
}

double fractal_hermite(FractalOrder alpha, int j, double x) {
  check_index(j);
  return signed_hermite_sum(alpha.value(), j, x, true);
}

double gamma(double x) {
  if (!(x > 0.0)) fail(ErrorKind::out_of_domain, "gamma needs x > 0, got " + std::to_string(x));
  return std::tgamma(x);
}

double mittag_leffler(FractalOrder alpha, double z) {
  if (!(std::abs(z) <= kMittagLefflerDomain)) {
    fail(ErrorKind::out_of_domain, "Mittag-Leffler series limited to |z| <= 50, got " + std::to_string(z));
  }
  constexpr int kMaxTerms = 400;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double a = alpha.value();
  double sum = 0.0;
  double largest = 0.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    double term;
    const double p = std::pow(std::abs(z), k);
    const double g = std::tgamma(a * k + 1.0);
    if (std::isfinite(p) && std::isfinite(g)) {
      term = p / g;
    } else {
      term = std::exp(k * std::log(std::abs(z)) - std::lgamma(a * k + 1.0));
    }
    if (z < 0.0 && (k % 2 == 1)) term = -term;
    sum += term;
    largest = std::max(largest, std::abs(term));
    if (!std::isfinite(sum)) break;
    if (term == 0.0 || std::abs(term) < 1e-16 * std::abs(sum)) {
      if (largest * eps * std::sqrt(k + 1.0) > 1e-8 * std::max(std::abs(sum), 1.0)) {
        fail(ErrorKind::convergence_failure,
             "Mittag-Leffler series loses all precision to cancellation at z = " + std::to_string(z));
      }
      return sum;
    }
  }
  fail(ErrorKind::convergence_failure, "Mittag-Leffler series did not converge within 400 terms at z = " +
                                           std::to_string(z));
}

}  // namespace retro
