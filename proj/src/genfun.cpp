#include "retro/genfun.hpp"

#include <cmath>
#include <string>

#include "retro/errors.hpp"
#include "retro/quadrature.hpp"

namespace retro {

EvolutionKernel::EvolutionKernel(KernelKind kind, double alpha, double tau) : kind_(kind), alpha_(alpha), tau_(tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) fail(ErrorKind::invalid_argument, "evolution time must be >= 0");
  FractalOrder check(alpha);
  (void)check;
}

EvolutionKernel EvolutionKernel::classical(double tau) { return EvolutionKernel(KernelKind::classical, 1.0, tau); }
EvolutionKernel EvolutionKernel::fractal(double alpha, double tau) {
  return EvolutionKernel(KernelKind::fractal, alpha, tau);
}
EvolutionKernel EvolutionKernel::cos_kernel(double tau) { return EvolutionKernel(KernelKind::cos_kernel, 2.0, tau); }

double EvolutionKernel::coefficient(int j, int k) const {
  if (j < 0 || k < 0 || 2 * k > j) fail(ErrorKind::out_of_range, "basis coefficient index out of range");
  double falling = 1.0;  // j! / (j-2k)!
  for (int i = 0; i < 2 * k; ++i) falling *= static_cast<double>(j - i);
  const double sign = (kind_ == KernelKind::cos_kernel || k % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(tau_, alpha_ * k) * falling / gamma(alpha_ * k + 1.0);
}

namespace {

double relaxation(double alpha, double z) {
  if (alpha == 1.0) return std::exp(z);
  if (alpha == 2.0) return z <= 0.0 ? std::cos(std::sqrt(-z)) : std::cosh(std::sqrt(z));
  return mittag_leffler(FractalOrder(alpha), z);
}

}  // namespace

double EvolutionKernel::generating_factor(double mu) const {
  if (kind_ == KernelKind::cos_kernel) return std::cosh(mu * tau_);
  return relaxation(alpha_, -mu * mu * std::pow(tau_, alpha_));
}

double EvolutionKernel::multiplier(double lambda) const {
  if (kind_ == KernelKind::cos_kernel) return std::cos(lambda * tau_);
  return relaxation(alpha_, -lambda * lambda * std::pow(tau_, alpha_));
}

GenHermiteBasis::GenHermiteBasis(EvolutionKernel kernel, EigenfunctionJet phi, GeneralizedMonomialTable monomials)
    : kernel_(kernel), phi_(std::move(phi)), monomials_(std::move(monomials)) {
  const int layers = phi_.medium.layer_count();
  const int jmax = monomials_.max_degree();
  polys_.resize(static_cast<std::size_t>(layers));
  for (int m = 0; m < layers; ++m) {
    auto& layer = polys_[static_cast<std::size_t>(m)];
    for (int j = 0; j <= jmax; ++j) {
      std::vector<double> poly(static_cast<std::size_t>(j) + 1, 0.0);
      for (int k = 0; 2 * k <= j; ++k) {
        const double c = kernel_.coefficient(j, k);
        const auto& mono = monomials_.coeffs(m, j - 2 * k);
        for (std::size_t r = 0; r < mono.size(); ++r) poly[r] += c * mono[r];
      }
      layer.push_back(std::move(poly));
    }
  }
}

const std::vector<double>& GenHermiteBasis::layer_poly(int layer, int j) const {
  if (j < 0 || j > max_index()) fail(ErrorKind::out_of_range, "basis index " + std::to_string(j));
  return polys_.at(static_cast<std::size_t>(layer))[static_cast<std::size_t>(j)];
}

double GenHermiteBasis::evaluate(int j, double x) const { return polyval(layer_poly(medium().layer_of(x), j), x); }

GenHermiteBasis gen_hermite_basis(const LayeredMedium& medium, const EvolutionKernel& kernel, int max_index) {
  if (max_index < 0 || max_index > kMaxHermiteIndex) {
    fail(ErrorKind::out_of_range, "basis order must lie in [0, " + std::to_string(kMaxHermiteIndex) + "]");
  }
  EigenfunctionJet phi = eigenfunction_jet(medium, max_index, EigenKind::direct);
  GeneralizedMonomialTable table = generalized_monomials(phi);
  return GenHermiteBasis(kernel, std::move(phi), std::move(table));
}

double gen_hermite_eval(const GenHermiteBasis& basis, int j, double x) { return basis.evaluate(j, x); }

double generating_check(const GenHermiteBasis& basis, double mu, double x) {
  double series = 0.0;
  double pw = 1.0;  // mu^j / j!
  for (int j = 0; j <= basis.max_index(); ++j) {
    if (j > 0) pw *= mu / j;
    series += basis.evaluate(j, x) * pw;
  }
  const cplx closed = basis.kernel().generating_factor(mu) * basis.eigenfunction().evaluate(x, cplx(0.0, -mu));
  return std::abs(cplx(series) - closed);
}

Eigen::MatrixXd biorthogonality_matrix(int j_max) {
  if (j_max < 0 || j_max > kMaxHermiteIndex) fail(ErrorKind::out_of_range, "biorthogonality index out of range");
  const GaussHermiteRule rule = gauss_hermite(j_max + 2);
  const int n = static_cast<int>(rule.nodes.size());
  Eigen::MatrixXd values(j_max + 1, n);
  for (int j = 0; j <= j_max; ++j) {
    for (int q = 0; q < n; ++q) values(j, q) = hermite_fn(j, rule.nodes[static_cast<std::size_t>(q)]);
  }
  Eigen::VectorXd w(n);
  for (int q = 0; q < n; ++q) w(q) = rule.scaled_weights[static_cast<std::size_t>(q)];
  return values * w.asDiagonal() * values.transpose();
}

}  // namespace retro
