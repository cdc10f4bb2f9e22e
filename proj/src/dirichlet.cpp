#include "retro/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "retro/errors.hpp"
#include "retro/forward.hpp"
#include "retro/inversion.hpp"
#include "retro/media.hpp"
#include "retro/quadrature.hpp"
#include "retro/spectral.hpp"

namespace retro {

void HalfPlaneTrace::validate() const {
  if (!(depth > 0.0) || !std::isfinite(depth)) fail(ErrorKind::invalid_argument, "trace depth must be > 0");
  trace.validate();
}

SampledField dirichlet_invert_spectral(const HalfPlaneTrace& t, double cutoff) {
  t.validate();
  if (!(cutoff > 0.0)) fail(ErrorKind::invalid_argument, "cutoff must be positive");
  const SampledField& u = t.trace;
  const double length = u.size() * u.dx;
  const double step = (decays_at_ends(u, 1e-10) ? 1.0 : 2.0) * std::numbers::pi / length;
  const int count = static_cast<int>(std::floor(cutoff / step + 1e-12)) + 1;

  SampledField out = SampledField::zeros_like(u);
  out.time_tag = 0.0;
  if (count < 2) return out;
  std::vector<double> w = trapezoid_weights(count, step);
  // The half line starts at lambda = 0; the cutoff end keeps its full weight.
  w.back() = step;
  for (int k = 0; k < count; ++k) {
    const double lam = k * step;
    cplx spec{};
    for (int n = 0; n < u.size(); ++n) {
      const double v = u.values[static_cast<std::size_t>(n)];
      if (v != 0.0) spec += u.dx * v * std::polar(1.0, -lam * u.x(n));
    }
    const double gain = std::exp(lam * t.depth);
    if (!std::isfinite(gain) || gain * std::abs(spec) > 1e12) {
      fail(ErrorKind::amplification_overflow, "inverse multiplier overflows at lambda = " + std::to_string(lam));
    }
    const cplx c = w[static_cast<std::size_t>(k)] * gain * spec / std::numbers::pi;
    if (c == cplx{}) continue;
    for (int i = 0; i < out.size(); ++i) {
      out.values[static_cast<std::size_t>(i)] += (c * std::polar(1.0, lam * out.x(i))).real();
    }
  }
  return out;
}

std::function<double(double)> dirichlet_invert_series(std::span<const double> derivatives, double depth) {
  if (static_cast<int>(derivatives.size()) > kMaxSeriesOrder + 1) {
    fail(ErrorKind::invalid_argument, "series order must not exceed " + std::to_string(kMaxSeriesOrder));
  }
  std::vector<double> c(derivatives.begin(), derivatives.end());
  double fact = 1.0;
  for (std::size_t j = 1; j < c.size(); ++j) {
    fact *= static_cast<double>(j);
    c[j] /= fact;
  }
  return [c, depth](double y) {
    const cplx z(y, depth);
    cplx acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    // ((y + il)^j + (y - il)^j) / 2 is the real part of (y + il)^j.
    return acc.real();
  };
}

std::function<double(double)> dirichlet_invert_continuation(ComplexHarmonic u, double depth) {
  return [u = std::move(u), depth](double y) { return u(depth, cplx(y, depth)).real(); };
}

std::vector<double> trace_derivatives(const HalfPlaneTrace& t, int order, double window) {
  t.validate();
  TaylorOptions opt;
  opt.order = order;
  opt.method = CoeffMethod::polyfit;
  opt.fit_window = window;
  return taylor_coeffs(t.trace, LayeredMedium::homogeneous(1.0), opt).u;
}

double harmonicity_residual(const SampledField& f, double depth, double delta) {
  if (!(delta > 0.0) || !(depth - delta >= 0.0)) fail(ErrorKind::invalid_argument, "need 0 < delta <= depth");
  const SampledField lo = halfplane_forward(f, depth - delta).field;
  const SampledField mid = halfplane_forward(f, depth).field;
  const SampledField hi = halfplane_forward(f, depth + delta).field;
  const int n = f.size();
  double peak = 0.0;
  for (double v : mid.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  double worst = 0.0;
  for (int i = n / 4; i < n - n / 4; ++i) {
    const auto at = [i](const SampledField& s) { return s.values[static_cast<std::size_t>(i)]; };
    const double uxx = (at(hi) - 2.0 * at(mid) + at(lo)) / (delta * delta);
    const double uyy = (mid.values[static_cast<std::size_t>(i + 1)] - 2.0 * at(mid) +
                        mid.values[static_cast<std::size_t>(i - 1)]) /
                       (f.dx * f.dx);
    worst = std::max(worst, std::abs(uxx + uyy));
  }
  return worst / peak;
}

}  // namespace retro
