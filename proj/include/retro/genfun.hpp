#pragma once

#include <Eigen/Dense>
#include <vector>

#include "retro/media.hpp"
#include "retro/special.hpp"

namespace retro {

enum class KernelKind { classical, fractal, cos_kernel };

/// Time evolution acting on exp(i lambda x / a):
///   classical  exp(-lambda^2 tau)
///   fractal    E_alpha(-lambda^2 tau^alpha)
///   cos_kernel cos(lambda tau)
class EvolutionKernel {
 public:
  static EvolutionKernel classical(double tau);
  static EvolutionKernel fractal(double alpha, double tau);
  static EvolutionKernel cos_kernel(double tau);

  KernelKind kind() const noexcept { return kind_; }
  double tau() const noexcept { return tau_; }
  /// 1 for classical, the fractal order otherwise (2 for cos).
  double alpha() const noexcept { return alpha_; }

  /// c_{j,k}: H_jn = sum_k c_{j,k} x_n^{j-2k}.
  double coefficient(int j, int k) const;
  /// Multiplier at lambda = -i mu: exp(-mu^2 tau), E_alpha(-mu^2 tau^alpha), cosh(mu tau).
  double generating_factor(double mu) const;
  /// Forward multiplier at real lambda.
  double multiplier(double lambda) const;

 private:
  EvolutionKernel(KernelKind kind, double alpha, double tau);
  KernelKind kind_;
  double alpha_;
  double tau_;
};

/// Generalized Hermite functions H_jn(x), j <= J, stored per layer as
/// ordinary polynomials.
class GenHermiteBasis {
 public:
  GenHermiteBasis(EvolutionKernel kernel, EigenfunctionJet phi, GeneralizedMonomialTable monomials);

  const EvolutionKernel& kernel() const noexcept { return kernel_; }
  const LayeredMedium& medium() const noexcept { return phi_.medium; }
  const GeneralizedMonomialTable& monomials() const noexcept { return monomials_; }
  const EigenfunctionJet& eigenfunction() const noexcept { return phi_; }
  int max_index() const noexcept { return monomials_.max_degree(); }

  /// Coefficients of H_jn restricted to `layer`, multiplying x^r.
  const std::vector<double>& layer_poly(int layer, int j) const;
  double evaluate(int j, double x) const;

 private:
  EvolutionKernel kernel_;
  EigenfunctionJet phi_;
  GeneralizedMonomialTable monomials_;
  std::vector<std::vector<std::vector<double>>> polys_;
};

GenHermiteBasis gen_hermite_basis(const LayeredMedium& medium, const EvolutionKernel& kernel, int max_index);
double gen_hermite_eval(const GenHermiteBasis& basis, int j, double x);

/// |sum_{j<=J} H_jn(x) mu^j / j! - G(-i mu) phi(x, -i mu)| for real mu.
double generating_check(const GenHermiteBasis& basis, double mu, double x);

/// Gauss-Hermite quadrature of H_j(x) H_k(x) exp(-x^2), normalised by
/// sqrt(2^j j! 2^k k!) pi^(1/2).
Eigen::MatrixXd biorthogonality_matrix(int j_max);

}  // namespace retro
