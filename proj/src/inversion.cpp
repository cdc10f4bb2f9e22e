#include "retro/inversion.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "retro/errors.hpp"
#include "retro/quadrature.hpp"
#include "retro/spectral.hpp"
#include "retro/transforms.hpp"

namespace retro {

void ReconstructionConfig::validate() const {
  if (order < 0 || order > kMaxSeriesOrder) {
    fail(ErrorKind::invalid_argument, "series order must lie in [0, " + std::to_string(kMaxSeriesOrder) + "]");
  }
  if (!(cutoff > 0.0) || cutoff > kMaxCutoff) fail(ErrorKind::invalid_argument, "cutoff must lie in (0, 64]");
  if (!(fit_window > 0.0)) fail(ErrorKind::invalid_argument, "fit window must be positive");
}

namespace {

TaylorCoeffs polyfit_coeffs(const SampledField& u, const LayeredMedium& medium, const TaylorOptions& opt) {
  const int cols = opt.order + 1;
  const double lo = opt.center - opt.fit_window, hi = opt.center + opt.fit_window;
  if (u.x0 > lo + 1e-9 * u.dx || u.xmax() < hi - 1e-9 * u.dx) {
    fail(ErrorKind::invalid_argument, "fit window is not covered by the sampled grid");
  }
  std::vector<int> rows;
  for (int i = 0; i < u.size(); ++i) {
    if (std::abs(u.x(i) - opt.center) <= opt.fit_window + 1e-9 * u.dx) rows.push_back(i);
  }
  if (static_cast<int>(rows.size()) < 2 * cols) {
    fail(ErrorKind::ill_conditioned, "fit window holds " + std::to_string(rows.size()) + " samples for " +
                                         std::to_string(cols) + " coefficients");
  }

  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), cols);
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
  if (medium.is_homogeneous()) {
    const double speed = medium.outer_speed();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double s = (u.x(rows[r]) - opt.center) / speed;
      double term = 1.0;
      for (int j = 0; j < cols; ++j) {
        if (j > 0) term *= s / j;
        a(static_cast<Eigen::Index>(r), j) = term;
      }
    }
  } else {
    if (opt.center != 0.0) fail(ErrorKind::invalid_argument, "layered fits expand about x = 0 only");
    const GeneralizedMonomialTable table = generalized_monomials(medium, opt.order);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double x = u.x(rows[r]);
      double fact = 1.0;
      for (int j = 0; j < cols; ++j) {
        if (j > 0) fact *= j;
        a(static_cast<Eigen::Index>(r), j) = table.evaluate(j, x) / fact;
      }
    }
  }
  for (std::size_t r = 0; r < rows.size(); ++r) b(static_cast<Eigen::Index>(r)) = u.values[static_cast<std::size_t>(rows[r])];

  Eigen::VectorXd scale(cols);
  for (int j = 0; j < cols; ++j) {
    const double norm = a.col(j).norm();
    if (norm == 0.0) fail(ErrorKind::ill_conditioned, "basis column " + std::to_string(j) + " vanishes on the window");
    scale(j) = 1.0 / norm;
    a.col(j) *= scale(j);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!std::isfinite(cond) || cond > 1e14) {
    fail(ErrorKind::ill_conditioned, "polynomial fit condition estimate " + std::to_string(cond));
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);

  TaylorCoeffs out;
  out.method = CoeffMethod::polyfit;
  out.condition = cond;
  out.u.resize(static_cast<std::size_t>(cols));
  // The coefficient of x_n^j / j! is u_j itself.
  for (int j = 0; j < cols; ++j) out.u[static_cast<std::size_t>(j)] = c(j) * scale(j);
  return out;
}

TaylorCoeffs moments_coeffs(const SampledField& u, const LayeredMedium& medium, const TaylorOptions& opt) {
  if (opt.center != 0.0) fail(ErrorKind::invalid_argument, "moments expand about x = 0 only");
  if (!(opt.damping > 0.0)) fail(ErrorKind::invalid_argument, "moment damping must be positive");
  const double length = u.size() * u.dx;
  const double step = std::numbers::pi / length;
  const std::vector<double> grid = symmetric_lambda_grid(std::numbers::pi / u.dx, step);
  const Spectrum spec = transform_analysis(medium, u, grid);

  double peak = 0.0;
  for (const auto& v : spec.values) peak = std::max(peak, std::abs(v));
  TaylorCoeffs out;
  out.method = CoeffMethod::moments;
  out.u.assign(static_cast<std::size_t>(opt.order) + 1, 0.0);
  if (peak == 0.0) return out;

  // Content below 1e-13 of the peak is rounding noise; (i lambda)^j would
  // amplify it without bound.
  const double floor = 1e-13 * peak;
  std::size_t first = spec.values.size(), last = 0;
  for (std::size_t k = 0; k < spec.values.size(); ++k) {
    if (std::abs(spec.values[k]) > floor) {
      first = std::min(first, k);
      last = k;
    }
  }
  // Checked over the outer tenth of the grid: a single end sample can sit on
  // a zero of the discrete transform.
  const std::size_t tail = std::max<std::size_t>(1, spec.values.size() / 20);
  if (first < tail || last + tail >= spec.values.size()) {
    fail(ErrorKind::quadrature_failure, "transform has not decayed at the resolvable lambda limit");
  }
  const std::vector<double> w = trapezoid_weights(static_cast<int>(grid.size()), step);
  const double weight = default_spectral_weight(medium);
  double growth = 1.0;
  for (std::size_t k = first; k <= last; ++k) {
    const double lam = grid[k];
    const cplx base = weight * w[k] * std::exp(-opt.damping * lam * lam) * spec.values[k];
    cplx pw = 1.0;
    for (int j = 0; j <= opt.order; ++j) {
      if (j > 0) pw *= cplx(0.0, lam);
      out.u[static_cast<std::size_t>(j)] += (pw * base).real();
    }
    growth = std::max(growth, std::abs(pw) * std::exp(-opt.damping * lam * lam));
  }
  out.condition = growth;
  return out;
}

}  // namespace

TaylorCoeffs taylor_coeffs(const SampledField& u, const LayeredMedium& medium, const TaylorOptions& options) {
  u.validate();
  if (options.order < 0 || options.order > kMaxSeriesOrder) {
    fail(ErrorKind::invalid_argument, "Taylor order must lie in [0, " + std::to_string(kMaxSeriesOrder) + "]");
  }
  if (!(options.fit_window > 0.0)) fail(ErrorKind::invalid_argument, "fit window must be positive");
  TaylorCoeffs out = options.method == CoeffMethod::polyfit ? polyfit_coeffs(u, medium, options)
                                                             : moments_coeffs(u, medium, options);
  for (double v : out.u) {
    if (!std::isfinite(v)) fail(ErrorKind::numerical_failure, "non-finite Taylor coefficient");
  }
  return out;
}

SeriesReconstruction reconstruct_from_coeffs(const GenHermiteBasis& basis, const TaylorCoeffs& coeffs,
                                             const SampledField& like, double norm_window) {
  const int order = static_cast<int>(coeffs.u.size()) - 1;
  if (order > basis.max_index()) fail(ErrorKind::invalid_argument, "basis order below the coefficient count");
  SeriesReconstruction out;
  out.coeffs = coeffs;
  out.field = SampledField::zeros_like(like);
  out.field.time_tag = 0.0;
  out.term_norms.assign(static_cast<std::size_t>(order) + 1, 0.0);
  double fact = 1.0;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) fact *= j;
    const double c = coeffs.u[static_cast<std::size_t>(j)] / fact;
    if (c == 0.0) continue;
    double norm = 0.0;
    for (int i = 0; i < like.size(); ++i) {
      const double term = c * basis.evaluate(j, like.x(i));
      out.field.values[static_cast<std::size_t>(i)] += term;
      if (std::abs(like.x(i)) <= norm_window) norm = std::max(norm, std::abs(term));
    }
    out.term_norms[static_cast<std::size_t>(j)] = norm;
  }
  if (order >= 5) {
    bool growing = true;
    for (int j = order - 4; j <= order; ++j) {
      if (!(out.term_norms[static_cast<std::size_t>(j)] > out.term_norms[static_cast<std::size_t>(j - 1)])) {
        growing = false;
      }
    }
    out.non_convergent = growing;
  }
  return out;
}

SeriesReconstruction reconstruct_series(const SampledField& u, const LayeredMedium& medium,
                                        const ReconstructionConfig& config) {
  config.validate();
  if (config.method != InversionMethod::series) fail(ErrorKind::invalid_argument, "config method is not series");
  TaylorOptions opt;
  opt.order = config.order;
  opt.method = config.coeff_method;
  opt.fit_window = config.fit_window;
  const TaylorCoeffs coeffs = taylor_coeffs(u, medium, opt);
  const GenHermiteBasis basis = gen_hermite_basis(medium, config.kernel, config.order);
  return reconstruct_from_coeffs(basis, coeffs, u, config.fit_window);
}

SampledField spectral_invert(const SampledField& u, const LayeredMedium& medium, const EvolutionKernel& kernel,
                             double cutoff) {
  u.validate();
  if (!(cutoff > 0.0)) fail(ErrorKind::invalid_argument, "cutoff must be positive");
  if (kernel.kind() == KernelKind::cos_kernel) {
    fail(ErrorKind::not_implemented, "spectral inversion of the cos kernel is not available; use dalembert");
  }
  const double length = u.size() * u.dx;
  const double step = (decays_at_ends(u, 1e-10) ? 1.0 : 2.0) * std::numbers::pi / length;
  const std::vector<double> grid = symmetric_lambda_grid(cutoff, step);
  SampledField out = SampledField::zeros_like(u);
  out.time_tag = 0.0;
  if (grid.size() < 2) return out;

  Spectrum spec = transform_analysis(medium, u, grid);
  const double alpha = kernel.alpha();
  const double t_alpha = std::pow(kernel.tau(), alpha);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double lam = grid[k];
    const double z = lam * lam * t_alpha;
    const double m = alpha == 1.0 ? std::exp(z) : mittag_leffler(FractalOrder(alpha), z);
    if (!std::isfinite(m) || m * std::abs(spec.values[k]) > 1e12) {
      fail(ErrorKind::amplification_overflow, "inverse multiplier overflows at lambda = " + std::to_string(lam));
    }
    spec.values[k] *= m;
  }
  out = transform_synthesis(medium, spec, u, default_spectral_weight(medium));
  out.time_tag = 0.0;
  return out;
}

SampledField dalembert_invert(const SampledField& u_tau, double tau) {
  u_tau.validate();
  if (!(tau >= 0.0)) fail(ErrorKind::invalid_argument, "tau must be >= 0");
  const double shift = tau / u_tau.dx;
  const int margin = static_cast<int>(std::ceil(shift - 1e-9));
  const int count = u_tau.size() - 2 * margin;
  if (count < 16) {
    fail(ErrorKind::domain_error, "grid too narrow to shift by tau = " + std::to_string(tau));
  }
  SampledField out;
  out.x0 = u_tau.x(margin);
  out.dx = u_tau.dx;
  out.time_tag = 0.0;
  out.values.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double x = out.x(i);
    out.values[static_cast<std::size_t>(i)] = 0.5 * (u_tau.interpolate(x + tau) + u_tau.interpolate(x - tau));
  }
  return out;
}

SampledField add_noise(const SampledField& u, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) fail(ErrorKind::invalid_argument, "noise sigma must be >= 0");
  SampledField out = u;
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, sigma);
  for (double& v : out.values) v += dist(rng);
  return out;
}

}  // namespace retro
