#include "retro/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "retro/errors.hpp"

namespace retro {

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1 || n > 512) fail(ErrorKind::invalid_argument, "Gauss-Hermite order " + std::to_string(n));
  GaussHermiteRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  rule.scaled_weights.resize(static_cast<std::size_t>(n));

  const double pim4 = std::pow(std::numbers::pi, -0.25);
  const int m = (n + 1) / 2;
  double z = 0.0;
  // Newton on the orthonormal recurrence with the usual asymptotic starting
  // guesses for the largest roots, then each root seeds the next one.
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[static_cast<std::size_t>(i - 2)];
    }
    double pp = 0.0;
    int iter = 0;
    for (; iter < 100; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    if (iter == 100) fail(ErrorKind::convergence_failure, "Gauss-Hermite Newton iteration");
    // Recompute pp at the converged root for the weight.
    {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
    }
    const double w = 2.0 / (pp * pp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = z;
    rule.nodes[hi] = -z;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.scaled_weights[i] = rule.weights[i] * std::exp(rule.nodes[i] * rule.nodes[i]);
  }
  return rule;
}

std::vector<double> trapezoid_weights(int n, double h) {
  std::vector<double> w(static_cast<std::size_t>(n), h);
  if (n >= 2) {
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
  }
  return w;
}

double trapezoid(std::span<const double> values, double h) {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  if (values.size() >= 2) s -= 0.5 * (values.front() + values.back());
  return s * h;
}

}  // namespace retro
