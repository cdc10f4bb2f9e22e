#include "retro/media.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "retro/errors.hpp"

namespace retro {

namespace {

constexpr cplx kI{0.0, 1.0};

double sign_of(EigenKind kind) { return kind == EigenKind::direct ? 1.0 : -1.0; }

// Ratio applied to the right-hand side of the interface conditions:
// the conjugate problem divides each side by its own Delta.
double side_weight(const LayeredMedium& medium, int k, EigenKind kind) {
  if (kind == EigenKind::direct) return 1.0;
  return medium.delta(0, k) / medium.delta(1, k);
}

}  // namespace

Coupling Coupling::ideal_contact(double a_left, double a_right) {
  Coupling c;
  c.beta[0] = {1.0, 1.0};
  c.alpha[1] = {a_left * a_left, a_right * a_right};
  return c;
}

double Coupling::delta(int side) const noexcept {
  const auto s = static_cast<std::size_t>(side);
  return alpha[0][s] * beta[1][s] - alpha[1][s] * beta[0][s];
}

LayeredMedium::LayeredMedium(std::vector<double> breakpoints, std::vector<double> speeds,
                             std::vector<Coupling> couplings) {
  const std::size_t n = breakpoints.size();
  if (speeds.size() != n + 1 || couplings.size() != n) {
    fail(ErrorKind::invalid_argument, "medium needs n breakpoints, n+1 speeds and n coupling blocks (n = " +
                                          std::to_string(n) + ")");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(breakpoints[k])) fail(ErrorKind::invalid_argument, "non-finite breakpoint");
    if (k > 0 && !(breakpoints[k] > breakpoints[k - 1])) {
      fail(ErrorKind::invalid_argument, "breakpoints not strictly increasing at index " + std::to_string(k + 1));
    }
  }
  for (std::size_t m = 0; m < speeds.size(); ++m) {
    if (!(speeds[m] > 0.0) || !std::isfinite(speeds[m])) {
      fail(ErrorKind::invalid_argument, "speed of layer " + std::to_string(m + 1) + " must be positive");
    }
  }
  auto data = std::make_shared<Data>();
  for (std::size_t k = 0; k < n; ++k) {
    const std::array<double, 2> d{couplings[k].delta(0), couplings[k].delta(1)};
    for (int side = 0; side < 2; ++side) {
      if (d[static_cast<std::size_t>(side)] == 0.0 || !std::isfinite(d[static_cast<std::size_t>(side)])) {
        fail(ErrorKind::invalid_argument, "coupling determinant Delta_{" + std::to_string(side + 1) + "," +
                                              std::to_string(k + 1) + "} vanishes at interface " +
                                              std::to_string(k + 1));
      }
    }
    data->deltas.push_back(d);
  }
  data->breakpoints = std::move(breakpoints);
  data->speeds = std::move(speeds);
  data->couplings = std::move(couplings);
  data_ = std::move(data);
}

LayeredMedium LayeredMedium::homogeneous(double speed) { return LayeredMedium({}, {speed}, {}); }

LayeredMedium LayeredMedium::ideal_two_layer(double a_left, double a_right, double breakpoint) {
  return LayeredMedium({breakpoint}, {a_left, a_right}, {Coupling::ideal_contact(a_left, a_right)});
}

double LayeredMedium::delta(int side, int interface) const {
  return data_->deltas.at(static_cast<std::size_t>(interface)).at(static_cast<std::size_t>(side));
}

int LayeredMedium::layer_of(double x) const noexcept {
  const auto& l = data_->breakpoints;
  return static_cast<int>(std::lower_bound(l.begin(), l.end(), x) - l.begin());
}

LayeredMedium build_medium(std::vector<double> breakpoints, std::vector<double> speeds,
                           std::vector<Coupling> couplings) {
  return LayeredMedium(std::move(breakpoints), std::move(speeds), std::move(couplings));
}

// ---------------------------------------------------------------------------
// Pointwise eigenfunctions

cplx Eigenfunction::operator()(double x) const {
  const int m = medium.layer_of(x);
  const cplx p = sign_of(kind) * kI * lambda / medium.speed(m);
  const auto mi = static_cast<std::size_t>(m);
  return a[mi] * std::exp(p * x) + b[mi] * std::exp(-p * x);
}

cplx Eigenfunction::derivative(double x) const {
  const int m = medium.layer_of(x);
  const cplx p = sign_of(kind) * kI * lambda / medium.speed(m);
  const auto mi = static_cast<std::size_t>(m);
  return p * (a[mi] * std::exp(p * x) - b[mi] * std::exp(-p * x));
}

namespace {

std::array<cplx, 2> limit_in_layer(const Eigenfunction& phi, int layer, double x) {
  const cplx p = sign_of(phi.kind) * kI * phi.lambda / phi.medium.speed(layer);
  const auto mi = static_cast<std::size_t>(layer);
  const cplx ep = std::exp(p * x), em = std::exp(-p * x);
  return {phi.a[mi] * ep + phi.b[mi] * em, p * (phi.a[mi] * ep - phi.b[mi] * em)};
}

}  // namespace

std::array<cplx, 2> Eigenfunction::left_limit(int k) const {
  return limit_in_layer(*this, k, medium.breakpoints().at(static_cast<std::size_t>(k)));
}

std::array<cplx, 2> Eigenfunction::right_limit(int k) const {
  return limit_in_layer(*this, k + 1, medium.breakpoints().at(static_cast<std::size_t>(k)));
}

cplx EigenfunctionJet::evaluate(double x, cplx lambda) const {
  const int m = medium.layer_of(x);
  const cplx p = sign_of(kind) * kI * lambda / medium.speed(m);
  const auto mi = static_cast<std::size_t>(m);
  return a[mi].evaluate(lambda) * std::exp(p * x) + b[mi].evaluate(lambda) * std::exp(-p * x);
}

Eigenfunction eigenfunction_at(const LayeredMedium& medium, double lambda, EigenKind kind) {
  if (!std::isfinite(lambda)) fail(ErrorKind::invalid_argument, "lambda must be finite");
  const int layers = medium.layer_count();
  Eigenfunction phi{medium, kind, lambda, std::vector<cplx>(static_cast<std::size_t>(layers)),
                    std::vector<cplx>(static_cast<std::size_t>(layers))};
  if (std::abs(lambda) < 1e-8 && !medium.is_homogeneous()) {
    // The interface systems degenerate at lambda = 0; sum the jets instead.
    const EigenfunctionJet jet = eigenfunction_jet(medium, 8, kind);
    for (int m = 0; m < layers; ++m) {
      phi.a[static_cast<std::size_t>(m)] = jet.a[static_cast<std::size_t>(m)].evaluate(lambda);
      phi.b[static_cast<std::size_t>(m)] = jet.b[static_cast<std::size_t>(m)].evaluate(lambda);
    }
    return phi;
  }
  const double s = sign_of(kind);
  phi.a.back() = 1.0;
  phi.b.back() = 0.0;
  for (int k = medium.interface_count() - 1; k >= 0; --k) {
    const auto& c = medium.couplings()[static_cast<std::size_t>(k)];
    const double l = medium.breakpoints()[static_cast<std::size_t>(k)];
    const cplx pl = s * kI * lambda / medium.speed(k);
    const cplx pr = s * kI * lambda / medium.speed(k + 1);
    const double w = side_weight(medium, k, kind);
    const cplx el = std::exp(pl * l), er = std::exp(pr * l);
    const cplx ar = phi.a[static_cast<std::size_t>(k + 1)], br = phi.b[static_cast<std::size_t>(k + 1)];

    std::array<std::array<cplx, 2>, 2> m{};
    std::array<cplx, 2> r{};
    for (std::size_t row = 0; row < 2; ++row) {
      m[row][0] = (c.alpha[row][0] * pl + c.beta[row][0]) * el;
      m[row][1] = (-c.alpha[row][0] * pl + c.beta[row][0]) / el;
      r[row] = w * ((c.alpha[row][1] * pr + c.beta[row][1]) * er * ar +
                    (-c.alpha[row][1] * pr + c.beta[row][1]) / er * br);
    }
    const cplx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const double scale = std::abs(m[0][0] * m[1][1]) + std::abs(m[0][1] * m[1][0]);
    if (std::abs(det) <= 1e-14 * scale || det == cplx{}) {
      fail(ErrorKind::singular_system, "interface " + std::to_string(k + 1) + " singular at lambda = " +
                                           std::to_string(lambda));
    }
    phi.a[static_cast<std::size_t>(k)] = (r[0] * m[1][1] - m[0][1] * r[1]) / det;
    phi.b[static_cast<std::size_t>(k)] = (m[0][0] * r[1] - r[0] * m[1][0]) / det;
  }
  return phi;
}

EigenfunctionJet eigenfunction_jet(const LayeredMedium& medium, int order, EigenKind kind) {
  if (order < 0 || order > 64) fail(ErrorKind::out_of_range, "eigenfunction jet order must lie in [0, 64]");
  const int layers = medium.layer_count();
  const int n = medium.interface_count();
  const double s = sign_of(kind);
  // Every interface solve gives up one order to the Laurent shift.
  int work = order + n;

  std::vector<Jet> a(static_cast<std::size_t>(layers)), b(static_cast<std::size_t>(layers));
  a.back() = Jet::constant(work, 1.0);
  b.back() = Jet(work);
  for (int k = n - 1; k >= 0; --k) {
    const auto& c = medium.couplings()[static_cast<std::size_t>(k)];
    const double l = medium.breakpoints()[static_cast<std::size_t>(k)];
    const double w = side_weight(medium, k, kind);
    const Jet pl = Jet::linear(work, s * kI / medium.speed(k));
    const Jet pr = Jet::linear(work, s * kI / medium.speed(k + 1));
    const Jet er = jet_exp(pr * cplx(l));
    const Jet er_inv = jet_exp(pr * cplx(-l));
    const Jet& ar = a[static_cast<std::size_t>(k + 1)];
    const Jet& br = b[static_cast<std::size_t>(k + 1)];

    // Unknowns are A_k exp(p_l l) and B_k exp(-p_l l), which keeps the matrix
    // polynomial in lambda with determinant 2 p_l Delta_{1,k}.
    JetMatrix2 m;
    JetVector2 r;
    for (std::size_t row = 0; row < 2; ++row) {
      const Jet one = Jet::constant(work, 1.0);
      m[row][0] = pl * cplx(c.alpha[row][0]) + one * cplx(c.beta[row][0]);
      m[row][1] = pl * cplx(-c.alpha[row][0]) + one * cplx(c.beta[row][0]);
      const Jet right_a = (pr * cplx(c.alpha[row][1]) + one * cplx(c.beta[row][1])) * er * ar;
      const Jet right_b = (pr * cplx(-c.alpha[row][1]) + one * cplx(c.beta[row][1])) * er_inv * br;
      r[row] = (right_a + right_b) * cplx(w);
    }
    JetVector2 x;
    try {
      x = laurent_solve_2x2(m, r);
    } catch (const Error& e) {
      fail(e.kind(), "interface " + std::to_string(k + 1) + ": " + e.what());
    }
    work = x[0].order();
    const Jet pl_w = Jet::linear(work, s * kI / medium.speed(k));
    a[static_cast<std::size_t>(k)] = x[0] * jet_exp(pl_w * cplx(-l));
    b[static_cast<std::size_t>(k)] = x[1] * jet_exp(pl_w * cplx(l));
  }
  if (work < order) {
    fail(ErrorKind::incompatible_system, "interface solves consumed more orders than available");
  }
  EigenfunctionJet out{medium, kind, {}, {}};
  for (int m = 0; m < layers; ++m) {
    out.a.push_back(a[static_cast<std::size_t>(m)].truncated(order));
    out.b.push_back(b[static_cast<std::size_t>(m)].truncated(order));
  }
  return out;
}

double coupling_residual(const Eigenfunction& phi) {
  double worst = 0.0;
  for (int k = 0; k < phi.medium.interface_count(); ++k) {
    const auto& c = phi.medium.couplings()[static_cast<std::size_t>(k)];
    const auto left = phi.left_limit(k);
    const auto right = phi.right_limit(k);
    const double dl = phi.kind == EigenKind::direct ? 1.0 : phi.medium.delta(0, k);
    const double dr = phi.kind == EigenKind::direct ? 1.0 : phi.medium.delta(1, k);
    for (std::size_t m = 0; m < 2; ++m) {
      const cplx lhs = (c.alpha[m][0] * left[1] + c.beta[m][0] * left[0]) / dl;
      const cplx rhs = (c.alpha[m][1] * right[1] + c.beta[m][1] * right[0]) / dr;
      const double scale =
          (std::abs(c.alpha[m][0] * left[1]) + std::abs(c.beta[m][0] * left[0])) / std::abs(dl) +
          (std::abs(c.alpha[m][1] * right[1]) + std::abs(c.beta[m][1] * right[0])) / std::abs(dr);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(scale, 1.0));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Generalized power functions

GeneralizedMonomialTable::GeneralizedMonomialTable(LayeredMedium medium,
                                                   std::vector<std::vector<std::vector<double>>> coeffs)
    : medium_(std::move(medium)), coeffs_(std::move(coeffs)) {}

const std::vector<double>& GeneralizedMonomialTable::coeffs(int layer, int k) const {
  if (k < 0 || k > max_degree()) fail(ErrorKind::out_of_range, "monomial degree " + std::to_string(k));
  return coeffs_.at(static_cast<std::size_t>(layer))[static_cast<std::size_t>(k)];
}

double GeneralizedMonomialTable::evaluate(int k, double x) const {
  return evaluate_in_layer(medium_.layer_of(x), k, x);
}

double GeneralizedMonomialTable::evaluate_in_layer(int layer, int k, double x) const {
  return polyval(coeffs(layer, k), x);
}

double GeneralizedMonomialTable::derivative_in_layer(int layer, int k, double x, int order) const {
  return polyval(polyder(coeffs(layer, k), order), x);
}

GeneralizedMonomialTable generalized_monomials(const LayeredMedium& medium, int max_degree) {
  if (max_degree < 0 || max_degree > 64) fail(ErrorKind::out_of_range, "monomial degree must lie in [0, 64]");
  return generalized_monomials(eigenfunction_jet(medium, max_degree, EigenKind::direct));
}

GeneralizedMonomialTable generalized_monomials(const EigenfunctionJet& phi) {
  if (phi.kind != EigenKind::direct) fail(ErrorKind::invalid_argument, "monomials come from the direct eigenfunction");
  const LayeredMedium& medium = phi.medium;
  const int max_degree = phi.order();
  std::vector<std::vector<std::vector<double>>> table(static_cast<std::size_t>(medium.layer_count()));

  for (int m = 0; m < medium.layer_count(); ++m) {
    const Jet& a = phi.a[static_cast<std::size_t>(m)];
    const Jet& b = phi.b[static_cast<std::size_t>(m)];
    const cplx ia = kI / medium.speed(m);
    auto& layer = table[static_cast<std::size_t>(m)];
    double kfact = 1.0;  // k!
    cplx neg_i_pow = 1.0;  // (-i)^k
    for (int k = 0; k <= max_degree; ++k) {
      if (k > 0) {
        kfact *= k;
        neg_i_pow *= -kI;
      }
      std::vector<double> poly(static_cast<std::size_t>(k) + 1);
      cplx ia_pow = 1.0;  // (i/a)^r
      double rfact = 1.0;
      for (int r = 0; r <= k; ++r) {
        if (r > 0) {
          ia_pow *= ia;
          rfact *= r;
        }
        const cplx ta = neg_i_pow * kfact * a[k - r] * ia_pow / rfact;
        const cplx tb = neg_i_pow * kfact * b[k - r] * std::conj(ia_pow) / rfact;
        const cplx value = ta + tb;
        const double scale = std::abs(ta) + std::abs(tb);
        if (std::abs(value.imag()) > 1e-12 * std::max(scale, 1.0)) {
          fail(ErrorKind::internal_consistency, "x_n^" + std::to_string(k) + " has imaginary coefficient " +
                                                    std::to_string(value.imag()) + " in layer " +
                                                    std::to_string(m + 1));
        }
        poly[static_cast<std::size_t>(r)] = value.real();
      }
      layer.push_back(std::move(poly));
    }
  }
  return GeneralizedMonomialTable(medium, std::move(table));
}

double polyval(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> polyder(const std::vector<double>& c, int order) {
  std::vector<double> d = c;
  for (int o = 0; o < order; ++o) {
    if (d.size() <= 1) return {0.0};
    std::vector<double> next(d.size() - 1);
    for (std::size_t r = 1; r < d.size(); ++r) next[r - 1] = d[r] * static_cast<double>(r);
    d = std::move(next);
  }
  return d;
}

}  // namespace retro
