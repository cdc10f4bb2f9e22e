#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "retro/errors.hpp"
#include "retro/jets.hpp"

using namespace retro;

namespace {

Jet random_jet(std::mt19937& rng, int order) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
  for (auto& v : c) v = cplx(d(rng), d(rng));
  return Jet(order, c);
}

double max_diff(const Jet& a, const Jet& b) {
  const Jet x = a.normalized(), y = b.normalized();
  double m = 0.0;
  for (int j = 0; j <= x.order(); ++j) m = std::max(m, std::abs(x[j] - y[j]));
  return m;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::internal_consistency;
}

}  // namespace

TEST_CASE("difference of squares") {
  const Jet a(2, {1.0, 1.0}), b(2, {1.0, -1.0});
  const Jet p = jet_mul(a, b);
  CHECK(p[0] == cplx(1.0));
  CHECK(p[1] == cplx(0.0));
  CHECK(p[2] == cplx(-1.0));
}

TEST_CASE("multiplicative identity") {
  std::mt19937 rng(1);
  const Jet b = random_jet(rng, 6);
  CHECK(max_diff(jet_mul(Jet::constant(6, 1.0), b), b) == 0.0);
}

TEST_CASE("valuation-tracked product") {
  // (lambda + lambda^2) * lambda stored with the leading zero factored out.
  const Jet a(3, {1.0, 1.0}, 1), b(3, {1.0}, 1);
  const Jet p = jet_mul(a, b);
  CHECK(p.valuation() == 2);
  const Jet n = p.normalized();
  CHECK(n[0] == cplx(0.0));
  CHECK(n[1] == cplx(0.0));
  CHECK(n[2] == cplx(1.0));
  CHECK(n[3] == cplx(1.0));
}

TEST_CASE("order mismatch is rejected") {
  CHECK(kind_of([] { (void)jet_mul(Jet(2), Jet(3)); }) == ErrorKind::invalid_argument);
}

TEST_CASE("exponential series") {
  const Jet e = jet_exp(Jet::linear(3, 1.0));
  CHECK(std::abs(e[0] - 1.0) < 1e-15);
  CHECK(std::abs(e[1] - 1.0) < 1e-15);
  CHECK(std::abs(e[2] - 0.5) < 1e-15);
  CHECK(std::abs(e[3] - 1.0 / 6.0) < 1e-15);

  const Jet one = jet_exp(Jet(5));
  CHECK(std::abs(one[0] - 1.0) == 0.0);
  for (int j = 1; j <= 5; ++j) CHECK(one[j] == cplx(0.0));

  const Jet q = jet_exp(Jet(4, {0.0, 0.0, 0.1}));
  CHECK(std::abs(q[2] - 0.1) < 1e-15);
  CHECK(std::abs(q[4] - 0.005) < 1e-15);
  CHECK(std::abs(q[1]) + std::abs(q[3]) == 0.0);
}

TEST_CASE("ring laws on random jets") {
  std::mt19937 rng(7);
  for (int order : {0, 3, 8, 16}) {
    const Jet a = random_jet(rng, order), b = random_jet(rng, order), c = random_jet(rng, order);
    CHECK(max_diff(jet_mul(a, b), jet_mul(b, a)) <= 1e-14);
    CHECK(max_diff(jet_mul(jet_mul(a, b), c), jet_mul(a, jet_mul(b, c))) <= 1e-14 * 20.0 * (order + 1));
  }
}

TEST_CASE("exp is a homomorphism") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Jet a = random_jet(rng, 12), b = random_jet(rng, 12);
    CHECK(max_diff(jet_exp(a + b), jet_mul(jet_exp(a), jet_exp(b))) <= 1e-12);
  }
}

TEST_CASE("coefficients of exp(c lambda)") {
  for (double c : {-2.0, -0.7, 0.3, 2.0}) {
    const Jet e = jet_exp(Jet::linear(12, c));
    double fact = 1.0;
    for (int j = 0; j <= 12; ++j) {
      if (j > 0) fact *= j;
      CHECK(std::abs(e[j] - std::pow(c, j) / fact) <= 1e-13);
    }
  }
}

TEST_CASE("Laurent solve with a simple zero of the determinant") {
  const int order = 6;
  JetMatrix2 m{{{Jet::constant(order, 1.0), Jet::constant(order, 1.0)},
                {Jet::linear(order, 1.0), Jet::linear(order, -1.0)}}};
  JetVector2 rhs{Jet::constant(order, 1.0), Jet::linear(order, 2.0)};
  const JetVector2 x = laurent_solve_2x2(m, rhs);
  CHECK(x[0].order() == order - 1);
  CHECK(std::abs(x[0].normalized()[0] - 1.5) < 1e-14);
  CHECK(std::abs(x[1].normalized()[0] + 0.5) < 1e-14);
  for (int j = 1; j < x[0].order(); ++j) {
    CHECK(std::abs(x[0].normalized()[j]) < 1e-14);
    CHECK(std::abs(x[1].normalized()[j]) < 1e-14);
  }
}

TEST_CASE("Laurent solve with the identity") {
  std::mt19937 rng(3);
  const JetVector2 rhs{random_jet(rng, 5), random_jet(rng, 5)};
  JetMatrix2 m{{{Jet::constant(5, 1.0), Jet(5)}, {Jet(5), Jet::constant(5, 1.0)}}};
  const JetVector2 x = laurent_solve_2x2(m, rhs);
  CHECK(max_diff(x[0], rhs[0]) < 1e-15);
  CHECK(max_diff(x[1], rhs[1]) < 1e-15);
}

TEST_CASE("Laurent solve rejects degenerate systems") {
  const Jet one = Jet::constant(4, 1.0);
  JetMatrix2 m{{{one, one}, {one, one}}};
  CHECK(kind_of([&] { (void)laurent_solve_2x2(m, {one, Jet(4)}); }) == ErrorKind::incompatible_system);
  CHECK(kind_of([&] { (void)laurent_solve_2x2(m, {Jet(4), Jet(4)}); }) == ErrorKind::singular_system);
}

TEST_CASE("Laurent residual on random systems") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int order = 10;
    JetMatrix2 m{{{random_jet(rng, order), random_jet(rng, order)}, {random_jet(rng, order), random_jet(rng, order)}}};
    const JetVector2 rhs{random_jet(rng, order), random_jet(rng, order)};
    const JetVector2 x = laurent_solve_2x2(m, rhs);
    for (std::size_t r = 0; r < 2; ++r) {
      const int o = x[0].order();
      const Jet lhs = jet_mul(m[r][0].truncated(o), x[0].normalized()) + jet_mul(m[r][1].truncated(o), x[1].normalized());
      CHECK(max_diff(lhs, rhs[r].truncated(o)) <= 1e-12 * std::max(1.0, x[0].max_abs() + x[1].max_abs()));
    }
  }
}

TEST_CASE("non-finite coefficients are rejected") {
  CHECK(kind_of([] { Jet(2, {1.0, std::nan("")}); }) == ErrorKind::invalid_argument);
}
