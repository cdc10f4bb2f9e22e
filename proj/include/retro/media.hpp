#pragma once

#include <array>
#include <complex>
#include <memory>
#include <vector>

#include "retro/jets.hpp"

namespace retro {

/// Linear coupling at one interface x = l_k:
///
///   [alpha[m][0] d/dx + beta[m][0]] u_left = [alpha[m][1] d/dx + beta[m][1]] u_right,  m = 0, 1.
struct Coupling {
  std::array<std::array<double, 2>, 2> alpha{};
  std::array<std::array<double, 2>, 2> beta{};

  /// Continuity of u and of a^2 u_x between layers of speed a_left / a_right.
  static Coupling ideal_contact(double a_left, double a_right);

  /// Delta_side = alpha[0][side] beta[1][side] - alpha[1][side] beta[0][side].
  double delta(int side) const noexcept;
};

/// Real axis split at l_1 < ... < l_n into n + 1 layers of speed a_m. A
/// breakpoint belongs to the layer on its left.
class LayeredMedium {
 public:
  LayeredMedium(std::vector<double> breakpoints, std::vector<double> speeds, std::vector<Coupling> couplings);
  static LayeredMedium homogeneous(double speed = 1.0);
  /// Two layers joined by ideal contact at `breakpoint`.
  static LayeredMedium ideal_two_layer(double a_left, double a_right, double breakpoint = 0.0);

  int interface_count() const noexcept { return static_cast<int>(data_->breakpoints.size()); }
  int layer_count() const noexcept { return interface_count() + 1; }
  bool is_homogeneous() const noexcept { return interface_count() == 0; }

  const std::vector<double>& breakpoints() const noexcept { return data_->breakpoints; }
  const std::vector<double>& speeds() const noexcept { return data_->speeds; }
  const std::vector<Coupling>& couplings() const noexcept { return data_->couplings; }

  double speed(int layer) const { return data_->speeds.at(static_cast<std::size_t>(layer)); }
  double outer_speed() const noexcept { return data_->speeds.back(); }
  /// Cached Delta_{side,k}; side 0 = left, 1 = right.
  double delta(int side, int interface) const;

  int layer_of(double x) const noexcept;
  double speed_at(double x) const noexcept { return speed(layer_of(x)); }

 private:
  struct Data {
    std::vector<double> breakpoints;
    std::vector<double> speeds;
    std::vector<Coupling> couplings;
    std::vector<std::array<double, 2>> deltas;
  };
  std::shared_ptr<const Data> data_;
};

LayeredMedium build_medium(std::vector<double> breakpoints, std::vector<double> speeds,
                           std::vector<Coupling> couplings);

enum class EigenKind { direct, conjugate };

/// Per-layer plane-wave amplitudes at a fixed real lambda. In layer m
///
///   phi_m(x) = A_m exp(s i lambda x / a_m) + B_m exp(-s i lambda x / a_m)
///
/// with s = +1 for the direct and s = -1 for the conjugate kind, and
/// A_{n+1} = 1, B_{n+1} = 0.
struct Eigenfunction {
  LayeredMedium medium;
  EigenKind kind = EigenKind::direct;
  double lambda = 0.0;
  std::vector<cplx> a;
  std::vector<cplx> b;

  cplx operator()(double x) const;
  cplx derivative(double x) const;
  /// Limits from either side of interface k: {value, derivative}.
  std::array<cplx, 2> left_limit(int interface) const;
  std::array<cplx, 2> right_limit(int interface) const;
};

/// Amplitudes as lambda-jets about lambda = 0, same convention as above.
struct EigenfunctionJet {
  LayeredMedium medium;
  EigenKind kind = EigenKind::direct;
  std::vector<Jet> a;
  std::vector<Jet> b;

  int order() const { return a.front().order(); }
  /// Amplitudes summed as truncated Taylor series at a complex lambda.
  cplx evaluate(double x, cplx lambda) const;
};

Eigenfunction eigenfunction_at(const LayeredMedium& medium, double lambda, EigenKind kind);
EigenfunctionJet eigenfunction_jet(const LayeredMedium& medium, int order, EigenKind kind);

/// Largest interface coupling residual of a pointwise eigenfunction,
/// relative to the magnitude of the terms involved.
double coupling_residual(const Eigenfunction& phi);

/// x_n^k restricted to each layer as an ordinary polynomial,
/// coeffs(m, k)[r] multiplying x^r.
class GeneralizedMonomialTable {
 public:
  GeneralizedMonomialTable(LayeredMedium medium, std::vector<std::vector<std::vector<double>>> coeffs);

  const LayeredMedium& medium() const noexcept { return medium_; }
  int max_degree() const noexcept { return static_cast<int>(coeffs_.front().size()) - 1; }
  const std::vector<double>& coeffs(int layer, int k) const;

  double evaluate(int k, double x) const;
  double evaluate_in_layer(int layer, int k, double x) const;
  /// d^order/dx^order within a layer.
  double derivative_in_layer(int layer, int k, double x, int order) const;

 private:
  LayeredMedium medium_;
  std::vector<std::vector<std::vector<double>>> coeffs_;
};

/// Builds x_n^k = (-i)^k d^k phi / d lambda^k at lambda = 0 for k <= K.
GeneralizedMonomialTable generalized_monomials(const LayeredMedium& medium, int max_degree);
GeneralizedMonomialTable generalized_monomials(const EigenfunctionJet& phi);

/// Horner evaluation of sum c[r] x^r and of its derivatives.
double polyval(const std::vector<double>& c, double x);
std::vector<double> polyder(const std::vector<double>& c, int order = 1);

}  // namespace retro
