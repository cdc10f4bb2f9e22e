#include "retro/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "retro/errors.hpp"
#include "retro/quadrature.hpp"
#include "retro/spectral.hpp"
#include "retro/special.hpp"
#include "retro/transforms.hpp"

namespace retro {

FieldResult heat_forward_homogeneous(const SampledField& f, double tau, double speed, double alpha) {
  if (!(tau >= 0.0)) fail(ErrorKind::invalid_argument, "tau must be >= 0");
  if (!(speed > 0.0)) fail(ErrorKind::invalid_argument, "speed must be positive");
  const FractalOrder order(alpha);
  if (alpha == 1.0) {
    return apply_fourier_multiplier(f, [=](double l) { return std::exp(-speed * speed * l * l * tau); });
  }
  if (alpha == 2.0) {
    return apply_fourier_multiplier(f, [=](double l) { return std::cos(speed * l * tau); });
  }
  const double t_alpha = std::pow(tau, alpha);
  return apply_fourier_multiplier(f, [=](double l) { return mittag_leffler(order, -speed * speed * l * l * t_alpha); });
}

namespace {

bool is_flux_form(const LayeredMedium& medium, int k) {
  const auto& c = medium.couplings()[static_cast<std::size_t>(k)];
  const double al = medium.speed(k), ar = medium.speed(k + 1);
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); };
  if (c.alpha[0][0] != 0.0 || c.alpha[0][1] != 0.0) return false;
  if (c.beta[1][0] != 0.0 || c.beta[1][1] != 0.0) return false;
  if (c.beta[0][0] == 0.0 || !close(c.beta[0][0], c.beta[0][1])) return false;
  if (c.alpha[1][1] == 0.0) return false;
  return close(c.alpha[1][0] / c.alpha[1][1], (al * al) / (ar * ar));
}

void thomas(std::vector<double>& lower, std::vector<double>& diag, std::vector<double>& upper,
            std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

}  // namespace

SampledField piecewise_heat_fd(const LayeredMedium& medium, const SampledField& f, double tau, int steps) {
  f.validate();
  if (!(tau >= 0.0)) fail(ErrorKind::invalid_argument, "tau must be >= 0");
  if (steps < 1) fail(ErrorKind::invalid_argument, "need at least one time step");
  for (int k = 0; k < medium.interface_count(); ++k) {
    const double l = medium.breakpoints()[static_cast<std::size_t>(k)];
    const int idx = f.index_of(l);
    if (idx < 1 || idx > f.size() - 2) {
      fail(ErrorKind::invalid_argument, "breakpoint " + std::to_string(l) + " is not an interior grid point");
    }
    if (!is_flux_form(medium, k)) {
      fail(ErrorKind::not_implemented,
           "finite differences support continuity of u and a^2 u_x only (interface " + std::to_string(k + 1) + ")");
    }
  }

  const int n = f.size();
  const double h = f.dx;
  // kappa[i] sits on the face between samples i and i + 1.
  std::vector<double> kappa(static_cast<std::size_t>(n - 1));
  for (int i = 0; i + 1 < n; ++i) {
    const double a = medium.speed_at(f.x(i) + 0.5 * h);
    kappa[static_cast<std::size_t>(i)] = a * a / (h * h);
  }

  SampledField u = f;
  u.values.front() = 0.0;
  u.values.back() = 0.0;
  const int m = n - 2;
  std::vector<double> lower(static_cast<std::size_t>(m)), diag(static_cast<std::size_t>(m)),
      upper(static_cast<std::size_t>(m)), rhs(static_cast<std::size_t>(m));

  auto step = [&](double dt, double theta) {
    for (int r = 0; r < m; ++r) {
      const int i = r + 1;
      const double kl = kappa[static_cast<std::size_t>(i - 1)];
      const double kr = kappa[static_cast<std::size_t>(i)];
      const double ui = u.values[static_cast<std::size_t>(i)];
      const double lu = kr * (u.values[static_cast<std::size_t>(i + 1)] - ui) - kl * (ui - u.values[static_cast<std::size_t>(i - 1)]);
      rhs[static_cast<std::size_t>(r)] = ui + (1.0 - theta) * dt * lu;
      lower[static_cast<std::size_t>(r)] = -theta * dt * kl;
      upper[static_cast<std::size_t>(r)] = -theta * dt * kr;
      diag[static_cast<std::size_t>(r)] = 1.0 + theta * dt * (kl + kr);
    }
    thomas(lower, diag, upper, rhs);
    std::copy(rhs.begin(), rhs.end(), u.values.begin() + 1);
  };

  const double dt = tau / steps;
  int done = 0;
  if (tau > 0.0) {
    // Rannacher start: damp the high-frequency content CN would keep alive.
    const int startup = std::min(steps, 2);
    for (int s = 0; s < 2 * startup; ++s) step(0.5 * dt, 1.0);
    done = startup;
    for (; done < steps; ++done) step(dt, 0.5);
  }
  for (double v : u.values) {
    if (!std::isfinite(v)) fail(ErrorKind::numerical_failure, "finite-difference solution is not finite");
  }
  u.time_tag = f.time_tag + tau;
  return u;
}

double influence_kernel(const LayeredMedium& medium, double t, double x, double xi, double lambda_cutoff,
                        double weight) {
  if (!(t > 0.0)) fail(ErrorKind::invalid_argument, "influence kernel needs t > 0");
  if (!(lambda_cutoff > 0.0)) fail(ErrorKind::invalid_argument, "lambda cutoff must be positive");
  const auto& speeds = medium.speeds();
  const double a_min = *std::min_element(speeds.begin(), speeds.end());
  double l_sum = 0.0;
  for (double l : medium.breakpoints()) l_sum += std::abs(l);
  const double phase = 2.0 * (std::abs(x) + std::abs(xi) + 2.0 * l_sum) / a_min + 1.0;
  const double dl = 2.0 * std::numbers::pi / (phase + std::sqrt(160.0 * t) + 1.0);
  const double cutoff = std::min(lambda_cutoff, std::sqrt(45.0 / t));
  const std::vector<double> grid = symmetric_lambda_grid(cutoff, dl);
  const std::vector<double> w = trapezoid_weights(static_cast<int>(grid.size()), dl);
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double l = grid[k];
    const cplx p = eigenfunction_at(medium, l, EigenKind::direct)(x);
    const cplx q = eigenfunction_at(medium, l, EigenKind::conjugate)(xi);
    acc += w[k] * std::exp(-l * l * t) * (p * q).real();
  }
  return weight * acc;
}

double influence_kernel(const LayeredMedium& medium, double t, double x, double xi, double lambda_cutoff) {
  return influence_kernel(medium, t, x, xi, lambda_cutoff, default_spectral_weight(medium));
}

SampledField wave_forward_family(const std::function<double(double)>& g, double t, double tau, double xmin,
                                 double xmax, int n) {
  const double shift = tau - t;
  return SampledField::from_function(
      xmin, xmax, n, [&](double x) { return g(x + shift) + g(x - shift); }, t);
}

std::function<double(double)> forward_series(std::span<const double> taylor, double tau, double alpha) {
  if (!(tau > 0.0)) fail(ErrorKind::invalid_argument, "series evaluation needs tau > 0");
  if (taylor.empty()) fail(ErrorKind::invalid_argument, "no Taylor coefficients");
  if (static_cast<int>(taylor.size()) > kMaxHermiteIndex + 1) {
    fail(ErrorKind::out_of_range, "too many Taylor coefficients");
  }
  const FractalOrder order(alpha);
  const double scale = std::pow(tau, order.beta());
  std::vector<double> weights(taylor.size());
  double pw = 1.0;
  for (std::size_t j = 0; j < taylor.size(); ++j) {
    if (j > 0) pw *= scale / static_cast<double>(j);
    weights[j] = taylor[j] * pw;
  }
  return [weights, scale, order](double x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      if (weights[j] != 0.0) acc += weights[j] * dual_hermite(static_cast<int>(j), x / scale, order);
    }
    return acc;
  };
}

FieldResult halfplane_forward(const SampledField& f, double depth) {
  if (!(depth >= 0.0)) fail(ErrorKind::invalid_argument, "depth must be >= 0");
  return apply_fourier_multiplier(f, [=](double l) { return std::exp(-depth * std::abs(l)); });
}

}  // namespace retro
