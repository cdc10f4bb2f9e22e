#include "retro/jets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "retro/errors.hpp"

namespace retro {

namespace {

void require_same_order(const Jet& a, const Jet& b, const char* op) {
  if (a.order() != b.order()) {
    fail(ErrorKind::invalid_argument, std::string(op) + ": jet order mismatch (" +
                                          std::to_string(a.order()) + " vs " +
                                          std::to_string(b.order()) + ")");
  }
}

Jet shifted_down(const Jet& a, int shift) {
  std::vector<cplx> c(static_cast<std::size_t>(a.order() - shift + 1));
  for (int j = shift; j <= a.order(); ++j) c[static_cast<std::size_t>(j - shift)] = a[j];
  return Jet(a.order() - shift, std::move(c));
}

}  // namespace

Jet::Jet(int order) {
  if (order < 0) fail(ErrorKind::invalid_argument, "jet order must be non-negative");
  coeffs_.assign(static_cast<std::size_t>(order) + 1, cplx{});
}

Jet::Jet(int order, std::vector<cplx> coeffs, int valuation)
    : coeffs_(std::move(coeffs)), valuation_(valuation) {
  if (order < 0 || valuation < 0) fail(ErrorKind::invalid_argument, "jet order/valuation must be non-negative");
  if (coeffs_.size() > static_cast<std::size_t>(order) + 1) {
    fail(ErrorKind::invalid_argument, "more coefficients than the jet order allows");
  }
  coeffs_.resize(static_cast<std::size_t>(order) + 1);
  for (const cplx& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      fail(ErrorKind::invalid_argument, "non-finite jet coefficient");
    }
  }
}

Jet Jet::constant(int order, cplx value) {
  Jet j(order);
  j[0] = value;
  return j;
}

Jet Jet::linear(int order, cplx slope) {
  Jet j(order);
  if (order >= 1) j[1] = slope;
  return j;
}

Jet Jet::normalized() const {
  if (valuation_ == 0) return *this;
  Jet out(order());
  for (int j = 0; j + valuation_ <= order(); ++j) out[j + valuation_] = (*this)[j];
  return out;
}

Jet Jet::truncated(int new_order) const {
  if (new_order > order()) fail(ErrorKind::invalid_argument, "cannot extend a jet by truncation");
  Jet plain = normalized();
  return Jet(new_order, std::vector<cplx>(plain.coeffs_.begin(), plain.coeffs_.begin() + new_order + 1));
}

cplx Jet::evaluate(cplx lambda) const {
  cplx acc{};
  for (int j = order(); j >= 0; --j) acc = acc * lambda + (*this)[j];
  if (valuation_ > 0) acc *= std::pow(lambda, valuation_);
  return acc;
}

double Jet::max_abs() const noexcept {
  double m = 0.0;
  for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Jet& Jet::operator+=(const Jet& other) {
  require_same_order(*this, other, "jet add");
  if (valuation_ != other.valuation_) {
    *this = normalized();
    const Jet rhs = other.normalized();
    for (int j = 0; j <= order(); ++j) (*this)[j] += rhs[j];
    return *this;
  }
  for (int j = 0; j <= order(); ++j) (*this)[j] += other[j];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) { return *this += -other; }

Jet& Jet::operator*=(cplx scale) {
  for (cplx& c : coeffs_) c *= scale;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator-(Jet a) { return a *= -1.0; }
Jet operator*(Jet a, cplx scale) { return a *= scale; }
Jet operator*(cplx scale, Jet a) { return a *= scale; }
Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }

Jet jet_mul(const Jet& a, const Jet& b) {
  require_same_order(a, b, "jet_mul");
  const int order = a.order();
  Jet out(order, {}, a.valuation() + b.valuation());
  for (int i = 0; i <= order; ++i) {
    if (a[i] == cplx{}) continue;
    for (int k = 0; i + k <= order; ++k) out[i + k] += a[i] * b[k];
  }
  return out;
}

Jet jet_exp(const Jet& a) {
  if (a.valuation() != 0) fail(ErrorKind::invalid_argument, "jet_exp needs a plain jet");
  const int order = a.order();
  Jet out(order);
  out[0] = std::exp(a[0]);
  // b_k = (1/k) sum_{m=1..k} m a_m b_{k-m}
  for (int k = 1; k <= order; ++k) {
    cplx acc{};
    for (int m = 1; m <= k; ++m) acc += static_cast<double>(m) * a[m] * out[k - m];
    out[k] = acc / static_cast<double>(k);
  }
  return out;
}

Jet jet_div(const Jet& num, const Jet& den) {
  require_same_order(num, den, "jet_div");
  const Jet n = num.normalized();
  const Jet d = den.normalized();
  if (d[0] == cplx{}) fail(ErrorKind::singular_system, "jet_div: zero leading coefficient");
  Jet q(n.order());
  for (int k = 0; k <= n.order(); ++k) {
    cplx acc = n[k];
    for (int m = 1; m <= k; ++m) acc -= d[m] * q[k - m];
    q[k] = acc / d[0];
  }
  return q;
}

int leading_index(const Jet& a, double threshold) {
  for (int j = 0; j <= a.order(); ++j) {
    if (std::abs(a[j]) > threshold) return j;
  }
  return -1;
}

JetVector2 laurent_solve_2x2(const JetMatrix2& m, const JetVector2& rhs, double rel_tol) {
  const Jet m00 = m[0][0].normalized(), m01 = m[0][1].normalized();
  const Jet m10 = m[1][0].normalized(), m11 = m[1][1].normalized();
  const Jet r0 = rhs[0].normalized(), r1 = rhs[1].normalized();
  const int order = m00.order();
  for (const Jet* j : {&m01, &m10, &m11, &r0, &r1}) require_same_order(m00, *j, "laurent_solve_2x2");

  const double m_scale = std::max({m00.max_abs(), m01.max_abs(), m10.max_abs(), m11.max_abs()});
  const double r_scale = std::max(r0.max_abs(), r1.max_abs());

  const Jet det = m00 * m11 - m01 * m10;
  const Jet num0 = r0 * m11 - m01 * r1;
  const Jet num1 = m00 * r1 - r0 * m10;

  const double det_tol = rel_tol * m_scale * m_scale;
  const double num_tol = rel_tol * m_scale * r_scale;
  const int vd = leading_index(det, det_tol);
  if (vd < 0) {
    // Rank deficient at every retained order: either no solution or infinitely many.
    if (leading_index(num0, num_tol) >= 0 || leading_index(num1, num_tol) >= 0) {
      fail(ErrorKind::incompatible_system, "right-hand side outside the range of a degenerate interface matrix");
    }
    fail(ErrorKind::singular_system, "interface determinant vanishes through order " + std::to_string(order));
  }
  for (const Jet* num : {&num0, &num1}) {
    const int vn = leading_index(*num, num_tol);
    if (vn >= 0 && vn < vd) {
      fail(ErrorKind::incompatible_system, "numerator valuation " + std::to_string(vn) +
                                               " below determinant valuation " + std::to_string(vd));
    }
  }
  const Jet det_s = shifted_down(det, vd);
  return {jet_div(shifted_down(num0, vd), det_s), jet_div(shifted_down(num1, vd), det_s)};
}

}  // namespace retro
