// SampledField helpers and the periodic FFT multiplier used by the
// homogeneous forward solvers.
#include "retro/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "retro/errors.hpp"

namespace retro {

SampledField SampledField::from_function(double xmin, double xmax, int n, const std::function<double(double)>& f,
                                         double time_tag) {
  if (n < 2 || !(xmax > xmin)) fail(ErrorKind::invalid_argument, "bad grid specification");
  SampledField out;
  out.x0 = xmin;
  out.dx = (xmax - xmin) / n;
  out.time_tag = time_tag;
  out.values.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = f(out.x(i));
  return out;
}

SampledField SampledField::zeros_like(const SampledField& other) {
  SampledField out = other;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  return out;
}

std::vector<double> SampledField::grid() const {
  std::vector<double> g(values.size());
  for (int i = 0; i < size(); ++i) g[static_cast<std::size_t>(i)] = x(i);
  return g;
}

int SampledField::index_of(double xv, double tol) const {
  const double s = (xv - x0) / dx;
  const double r = std::round(s);
  if (std::abs(s - r) > tol || r < 0 || r >= size()) return -1;
  return static_cast<int>(r);
}

double SampledField::interpolate(double xv) const {
  const double s = (xv - x0) / dx;
  const double r = std::round(s);
  if (std::abs(s - r) <= 1e-9 && r >= 0 && r < size()) return values[static_cast<std::size_t>(r)];
  if (s < 0.0 || s > size() - 1) {
    fail(ErrorKind::domain_error, "x = " + std::to_string(xv) + " outside the sampled grid");
  }
  const int i = std::min(static_cast<int>(std::floor(s)), size() - 2);
  const double t = s - i;
  return (1.0 - t) * values[static_cast<std::size_t>(i)] + t * values[static_cast<std::size_t>(i + 1)];
}

void SampledField::validate() const {
  if (size() < 16) fail(ErrorKind::invalid_argument, "sampled field needs at least 16 points");
  if (!(dx > 0.0)) fail(ErrorKind::invalid_argument, "grid spacing must be positive");
  for (double v : values) {
    if (!std::isfinite(v)) fail(ErrorKind::numerical_failure, "non-finite field value");
  }
}

std::vector<double> symmetric_lambda_grid(double max, double step) {
  if (!(step > 0.0) || !(max >= 0.0)) fail(ErrorKind::invalid_argument, "bad lambda grid");
  const int k = static_cast<int>(std::floor(max / step + 1e-12));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(2 * k + 1));
  for (int i = -k; i <= k; ++i) grid.push_back(i * step);
  return grid;
}

ErrorMetrics compare_fields(const SampledField& approx, const std::function<double(double)>& exact,
                            double half_width, double center) {
  double num = 0.0, den = 0.0, mx = 0.0;
  for (int i = 0; i < approx.size(); ++i) {
    const double xv = approx.x(i);
    if (std::abs(xv - center) > half_width + 1e-12) continue;
    const double e = exact(xv);
    const double d = approx.values[static_cast<std::size_t>(i)] - e;
    num += d * d;
    den += e * e;
    mx = std::max(mx, std::abs(d));
  }
  ErrorMetrics m;
  m.max_abs = mx;
  m.rel_l2 = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return m;
}

ErrorMetrics compare_fields(const SampledField& approx, const SampledField& exact, double half_width,
                            double center) {
  return compare_fields(approx, [&](double xv) { return exact.interpolate(xv); }, half_width, center);
}

bool decays_at_ends(const SampledField& f, double rel_tol) {
  double peak = 0.0;
  for (double v : f.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return true;
  return std::max(std::abs(f.values.front()), std::abs(f.values.back())) <= rel_tol * peak;
}

FieldResult apply_fourier_multiplier(const SampledField& f, const std::function<double(double)>& multiplier,
                                     double decay_tol) {
  f.validate();
  FieldResult result;
  const bool pad = decays_at_ends(f, decay_tol);
  if (!pad) {
    result.warnings.emplace_back("input does not decay at the grid ends; periodic extension used");
  }
  const int n = f.size();
  const int m = pad ? 2 * n : n;

  std::vector<double> buffer(static_cast<std::size_t>(m), 0.0);
  std::copy(f.values.begin(), f.values.end(), buffer.begin());
  const int nc = m / 2 + 1;
  auto* spec = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(nc)));
  fftw_plan fwd = fftw_plan_dft_r2c_1d(m, buffer.data(), spec, FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft_c2r_1d(m, spec, buffer.data(), FFTW_ESTIMATE);
  fftw_execute(fwd);

  const double dk = 2.0 * std::numbers::pi / (m * f.dx);
  double peak = 0.0;
  for (int k = 0; k < nc; ++k) peak = std::max(peak, std::hypot(spec[k][0], spec[k][1]));
  std::string error;
  for (int k = 0; k < nc; ++k) {
    double factor = 0.0;
    const double amplitude = std::hypot(spec[k][0], spec[k][1]);
    try {
      factor = multiplier(k * dk);
    } catch (const Error& e) {
      // Modes without content do not need the multiplier.
      if (amplitude > 1e-15 * peak) {
        error = e.what();
        break;
      }
    }
    spec[k][0] *= factor / m;
    spec[k][1] *= factor / m;
  }
  if (error.empty()) fftw_execute(bwd);
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
  fftw_free(spec);
  if (!error.empty()) fail(ErrorKind::convergence_failure, "multiplier evaluation failed: " + error);

  result.field = f;
  std::copy(buffer.begin(), buffer.begin() + n, result.field.values.begin());
  return result;
}

}  // namespace retro
