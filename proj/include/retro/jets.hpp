#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace retro {

using cplx = std::complex<double>;

/// Truncated power series in the spectral parameter lambda,
///
///   lambda^v * (c_0 + c_1 lambda + ... + c_J lambda^J),
///
/// where v is the valuation: a count of leading zero coefficients that have
/// been factored out. Public results are always plain (v == 0); non-zero
/// valuations only appear inside the interface solver.
class Jet {
 public:
  explicit Jet(int order = 0);
  Jet(int order, std::vector<cplx> coeffs, int valuation = 0);

  static Jet constant(int order, cplx value);
  /// slope * lambda
  static Jet linear(int order, cplx slope);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  int valuation() const noexcept { return valuation_; }

  cplx operator[](int j) const { return coeffs_[static_cast<std::size_t>(j)]; }
  cplx& operator[](int j) { return coeffs_[static_cast<std::size_t>(j)]; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Folds the valuation back into the coefficients, dropping anything that
  /// falls past the order.
  Jet normalized() const;
  Jet truncated(int order) const;

  /// Horner evaluation of the (normalized) truncated series.
  cplx evaluate(cplx lambda) const;

  double max_abs() const noexcept;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(cplx scale);

 private:
  std::vector<cplx> coeffs_;
  int valuation_ = 0;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator-(Jet a);
Jet operator*(Jet a, cplx scale);
Jet operator*(cplx scale, Jet a);
Jet operator*(const Jet& a, const Jet& b);

/// Cauchy product truncated at the common order; valuations add.
Jet jet_mul(const Jet& a, const Jet& b);

/// Series exponential exp(c_0) * exp(a - c_0).
Jet jet_exp(const Jet& a);

/// Plain series quotient num / den; den[0] must be non-zero.
Jet jet_div(const Jet& num, const Jet& den);

using JetMatrix2 = std::array<std::array<Jet, 2>, 2>;
using JetVector2 = std::array<Jet, 2>;

/// Solves M x = rhs over truncated Laurent series by Cramer's rule. The
/// determinant may vanish at lambda = 0 to finite order v_d; the numerators
/// must vanish to at least the same order, and the shifted quotients carry
/// order J - v_d. Coefficients below `rel_tol` times the natural scale of the
/// products are treated as zero.
JetVector2 laurent_solve_2x2(const JetMatrix2& m, const JetVector2& rhs, double rel_tol = 1e-11);

/// Index of the first coefficient exceeding `threshold` in magnitude, or -1.
int leading_index(const Jet& a, double threshold);

}  // namespace retro
