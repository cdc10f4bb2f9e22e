#include "retro/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "retro/errors.hpp"
#include "retro/quadrature.hpp"
#include "retro/spectral.hpp"

namespace retro {

double default_spectral_weight(const LayeredMedium& medium) {
  return 1.0 / (2.0 * std::numbers::pi * medium.outer_speed());
}

Spectrum transform_analysis(const LayeredMedium& medium, const SampledField& u, std::span<const double> lambda_grid) {
  u.validate();
  Spectrum out;
  out.lambda.assign(lambda_grid.begin(), lambda_grid.end());
  out.values.resize(out.lambda.size());
  out.truncation_warning = !decays_at_ends(u, 1e-12);

  const std::vector<double> w = trapezoid_weights(u.size(), u.dx);
  bool all_zero = std::all_of(u.values.begin(), u.values.end(), [](double v) { return v == 0.0; });
  if (all_zero) return out;
  for (std::size_t k = 0; k < out.lambda.size(); ++k) {
    const Eigenfunction phi = eigenfunction_at(medium, out.lambda[k], EigenKind::conjugate);
    cplx acc{};
    for (int i = 0; i < u.size(); ++i) {
      const double v = u.values[static_cast<std::size_t>(i)];
      if (v == 0.0) continue;
      acc += w[static_cast<std::size_t>(i)] * v * phi(u.x(i));
    }
    out.values[k] = acc;
  }
  return out;
}

SampledField transform_synthesis(const LayeredMedium& medium, const Spectrum& spectrum, const SampledField& like,
                                 double weight) {
  SampledField out = SampledField::zeros_like(like);
  const std::size_t n = spectrum.lambda.size();
  if (n < 2) return out;
  const double step = spectrum.lambda[1] - spectrum.lambda[0];
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(spectrum.lambda[k] + spectrum.lambda[n - 1 - k]) > 1e-9 * std::max(1.0, std::abs(step))) {
      fail(ErrorKind::invalid_argument, "synthesis needs a lambda grid symmetric about 0");
    }
  }
  const std::vector<double> w = trapezoid_weights(static_cast<int>(n), step);
  for (std::size_t k = 0; k < n; ++k) {
    if (spectrum.values[k] == cplx{}) continue;
    const Eigenfunction phi = eigenfunction_at(medium, spectrum.lambda[k], EigenKind::direct);
    const cplx c = weight * w[k] * spectrum.values[k];
    for (int i = 0; i < out.size(); ++i) out.values[static_cast<std::size_t>(i)] += (c * phi(out.x(i))).real();
  }
  return out;
}

CompletenessReport completeness_defect(const LayeredMedium& medium, double epsilon, std::span<const double> x_points,
                                       double weight, double tolerance) {
  if (!(epsilon > 0.0)) fail(ErrorKind::invalid_argument, "completeness defect needs epsilon > 0");
  if (x_points.empty()) fail(ErrorKind::invalid_argument, "completeness defect needs probe points");
  CompletenessReport report;
  report.epsilon = epsilon;
  report.weight = weight;
  report.tolerance = tolerance;

  const auto& speeds = medium.speeds();
  const double a_min = *std::min_element(speeds.begin(), speeds.end());
  const double a_max = *std::max_element(speeds.begin(), speeds.end());
  double x_abs = 0.0;
  for (double x : x_points) x_abs = std::max(x_abs, std::abs(x));
  double l_abs = 0.0;
  for (double l : medium.breakpoints()) l_abs = std::max(l_abs, std::abs(l));

  const double width = std::sqrt(epsilon);
  // In a layer of speed a the smoothed delta has standard deviation a sqrt(2 eps).
  const double window = 10.0 * width * a_max;
  // Plane-wave products can map x to xi = (a_q / a_p) x, so the xi range
  // must cover the widest such image.
  const double xi_extent = (x_abs + l_abs) * (a_max / a_min) + l_abs + window + 1.0;
  const double h = width * a_min / 4.0;
  const int n_xi = 2 * static_cast<int>(std::ceil(xi_extent / h)) + 1;
  const double xi0 = -h * (n_xi / 2);

  const double phase = 2.0 * (xi_extent + x_abs + 2.0 * l_abs) / a_min + 1.0;
  const double dl = 2.0 * std::numbers::pi / (phase + std::sqrt(160.0 * epsilon) + 1.0);
  const std::vector<double> lambdas = symmetric_lambda_grid(std::sqrt(40.0 / epsilon), dl);
  const std::vector<double> lw = trapezoid_weights(static_cast<int>(lambdas.size()), dl);

  const std::size_t nx = x_points.size();
  std::vector<double> kernel(nx * static_cast<std::size_t>(n_xi), 0.0);
  std::vector<cplx> phi_x(nx);
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const double lam = lambdas[k];
    const double damp = lw[k] * weight * std::exp(-epsilon * lam * lam);
    const Eigenfunction phi = eigenfunction_at(medium, lam, EigenKind::direct);
    const Eigenfunction phi_star = eigenfunction_at(medium, lam, EigenKind::conjugate);
    for (std::size_t i = 0; i < nx; ++i) phi_x[i] = damp * phi(x_points[i]);
    for (int j = 0; j < n_xi; ++j) {
      const cplx ps = phi_star(xi0 + h * j);
      for (std::size_t i = 0; i < nx; ++i) {
        kernel[i * static_cast<std::size_t>(n_xi) + static_cast<std::size_t>(j)] += (phi_x[i] * ps).real();
      }
    }
  }

  const int layers = medium.layer_count();
  std::vector<LayerPairDefect> pairs(static_cast<std::size_t>(layers * layers));
  for (int p = 0; p < layers; ++p) {
    for (int q = 0; q < layers; ++q) {
      auto& e = pairs[static_cast<std::size_t>(p * layers + q)];
      e.layer_x = p;
      e.layer_xi = q;
    }
  }
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = x_points[i];
    const int p = medium.layer_of(x);
    std::vector<double> diag(static_cast<std::size_t>(layers), 0.0);
    std::vector<double> ghost(static_cast<std::size_t>(layers), 0.0);
    for (int j = 0; j < n_xi; ++j) {
      const double xi = xi0 + h * j;
      const int q = medium.layer_of(xi);
      const double kv = kernel[i * static_cast<std::size_t>(n_xi) + static_cast<std::size_t>(j)];
      if (q == p && std::abs(xi - x) <= window) {
        diag[static_cast<std::size_t>(q)] += kv * h;
      } else {
        ghost[static_cast<std::size_t>(q)] += std::abs(kv) * h;
      }
    }
    for (int q = 0; q < layers; ++q) {
      auto& e = pairs[static_cast<std::size_t>(p * layers + q)];
      e.probes += 1;
      e.ghost_mass = std::max(e.ghost_mass, ghost[static_cast<std::size_t>(q)]);
      if (q == p) {
        const double mass = diag[static_cast<std::size_t>(q)];
        e.diagonal_mass += (mass - e.diagonal_mass) / e.probes;
        e.diagonal_deviation = std::max(e.diagonal_deviation, std::abs(mass - 1.0));
      }
    }
  }
  for (const auto& e : pairs) {
    if (e.probes == 0) continue;
    report.pairs.push_back(e);
    if (e.ghost_mass > tolerance) report.mismatch = true;
    if (e.layer_x == e.layer_xi && e.diagonal_deviation > tolerance) report.mismatch = true;
  }
  return report;
}

CompletenessReport completeness_defect(const LayeredMedium& medium, double epsilon, std::span<const double> x_points) {
  return completeness_defect(medium, epsilon, x_points, default_spectral_weight(medium));
}

}  // namespace retro
