#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "retro/errors.hpp"
#include "retro/fields.hpp"
#include "retro/forward.hpp"
#include "retro/genfun.hpp"
#include "retro/inversion.hpp"
#include "retro/media.hpp"

using namespace retro;

namespace {

double gaussian(double x) { return std::exp(-x * x); }

// exp(-x^2) evolved for tau = 0.1: (1.4)^(-1/2) exp(-x^2 / 1.4).
double evolved(double x) { return std::exp(-x * x / 1.4) / std::sqrt(1.4); }

SampledField evolved_field() { return SampledField::from_function(-8.0, 8.0, 2048, evolved, 0.1); }

SampledField random_field(std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  const double a = d(rng), b = d(rng), c = d(rng);
  return SampledField::from_function(-8.0, 8.0, 1024, [&](double x) {
    return a * std::exp(-x * x) + b * x * std::exp(-x * x / 2.0) + c * std::exp(-(x - 1.0) * (x - 1.0));
  });
}

SampledField combine(const SampledField& u, double s, const SampledField& v, double t) {
  SampledField out = u;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = s * u.values[i] + t * v.values[i];
  return out;
}

double max_dev(const SampledField& a, const SampledField& b, double half_width = 1e9) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (std::abs(a.x(static_cast<int>(i))) <= half_width) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("Taylor coefficients of a monomial") {
  const SampledField u = SampledField::from_function(-4.0, 4.0, 256, [](double x) { return x * x; });
  TaylorOptions o;
  o.order = 4;
  const TaylorCoeffs c = taylor_coeffs(u, LayeredMedium::homogeneous(), o);
  CHECK(std::abs(c.u[0]) <= 1e-10);
  CHECK(std::abs(c.u[1]) <= 1e-10);
  CHECK(c.u[2] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("Taylor coefficients on a layered medium") {
  const LayeredMedium m = LayeredMedium::ideal_two_layer(1.0, 2.0);
  const GeneralizedMonomialTable t = generalized_monomials(m, 3);
  const double c[] = {1.0, 0.5, -0.3, 0.2};
  const SampledField u = SampledField::from_function(-4.0, 4.0, 512, [&](double x) {
    return c[0] * t.evaluate(0, x) + c[1] * t.evaluate(1, x) + c[2] * t.evaluate(2, x) / 2.0 +
           c[3] * t.evaluate(3, x) / 6.0;
  });
  TaylorOptions o;
  o.order = 3;
  const TaylorCoeffs r = taylor_coeffs(u, m, o);
  for (int j = 0; j <= 3; ++j) CHECK(std::abs(r.u[static_cast<std::size_t>(j)] - c[j]) <= 1e-8);
}

TEST_CASE("Taylor coefficients of the evolved Gaussian") {
  // u(0) = 1.4^(-1/2), u''(0) = -2 / 1.4 * 1.4^(-1/2).
  const double u0 = 1.0 / std::sqrt(1.4);
  const double u2 = -2.0 / 1.4 * u0;
  TaylorOptions o;
  o.order = 24;
  const TaylorCoeffs fit = taylor_coeffs(evolved_field(), LayeredMedium::homogeneous(), o);
  CHECK(fit.u[0] == doctest::Approx(u0).epsilon(1e-8));
  CHECK(fit.u[2] == doctest::Approx(u2).epsilon(1e-6));

  o.method = CoeffMethod::moments;
  o.order = 4;
  const TaylorCoeffs mom = taylor_coeffs(evolved_field(), LayeredMedium::homogeneous(), o);
  CHECK(mom.u[0] == doctest::Approx(u0).epsilon(1e-3));
  CHECK(mom.u[2] == doctest::Approx(u2).epsilon(1e-3));
  CHECK(std::abs(mom.u[1]) <= 1e-10);
}

TEST_CASE("moments need a decaying field") {
  TaylorOptions o;
  o.method = CoeffMethod::moments;
  o.order = 2;
  const SampledField flat = SampledField::from_function(-4.0, 4.0, 128, [](double) { return 1.0; });
  try {
    (void)taylor_coeffs(flat, LayeredMedium::homogeneous(), o);
    FAIL("expected quadrature failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::quadrature_failure);
  }
}

TEST_CASE("configuration bounds") {
  ReconstructionConfig rc;
  rc.order = 49;
  CHECK_THROWS_AS(rc.validate(), Error);
  rc.order = 24;
  rc.cutoff = 65.0;
  CHECK_THROWS_AS(rc.validate(), Error);
  rc.cutoff = 12.0;
  rc.fit_window = 0.0;
  CHECK_THROWS_AS(rc.validate(), Error);
}

TEST_CASE("series reconstruction") {
  ReconstructionConfig rc;
  rc.order = 4;
  const SampledField c = SampledField::from_function(-4.0, 4.0, 256, [](double) { return 2.5; });
  const auto flat = reconstruct_series(c, LayeredMedium::homogeneous(), rc);
  for (int i = 0; i < flat.field.size(); ++i) CHECK(flat.field.values[static_cast<std::size_t>(i)] == doctest::Approx(2.5));

  rc.order = 24;
  const auto rec = reconstruct_series(evolved_field(), LayeredMedium::homogeneous(), rc);
  CHECK(compare_fields(rec.field, gaussian, 1.0).rel_l2 <= 1e-4);
  CHECK_FALSE(rec.non_convergent);
}

TEST_CASE("layered coefficient passthrough") {
  const LayeredMedium m = LayeredMedium::ideal_two_layer(1.0, 2.0);
  const GenHermiteBasis b = gen_hermite_basis(m, EvolutionKernel::classical(0.1), 3);
  const double c[] = {1.0, 0.5, -0.3, 0.2};
  const double fact[] = {1.0, 1.0, 2.0, 6.0};
  const SampledField u = SampledField::from_function(-16.0, 16.0, 4096, [&](double x) {
    double s = 0.0;
    for (int j = 0; j <= 3; ++j) s += c[j] * b.monomials().evaluate(j, x) / fact[j];
    return s;
  });
  ReconstructionConfig rc;
  rc.order = 3;
  const auto rec = reconstruct_series(u, m, rc);
  double worst = 0.0;
  for (int i = 0; i < rec.field.size(); ++i) {
    const double x = rec.field.x(i);
    if (std::abs(x) > 4.0) continue;
    double ref = 0.0;
    for (int j = 0; j <= 3; ++j) ref += c[j] * b.evaluate(j, x) / fact[j];
    worst = std::max(worst, std::abs(rec.field.values[static_cast<std::size_t>(i)] - ref));
  }
  CHECK(worst <= 1e-7);

  const SampledField again = piecewise_heat_fd(m, rec.field, 0.1, 400);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < again.size(); ++i) {
    if (std::abs(again.x(i)) > 4.0) continue;
    num += std::pow(again.values[static_cast<std::size_t>(i)] - u.values[static_cast<std::size_t>(i)], 2);
    den += std::pow(u.values[static_cast<std::size_t>(i)], 2);
  }
  CHECK(std::sqrt(num / den) <= 1e-3);
}

TEST_CASE("spectral inversion") {
  const auto kernel = EvolutionKernel::classical(0.1);
  const LayeredMedium h = LayeredMedium::homogeneous();
  const SampledField f = spectral_invert(evolved_field(), h, kernel, 12.0);
  CHECK(compare_fields(f, gaussian, 8.0).rel_l2 <= 1e-8);

  const SampledField none = spectral_invert(evolved_field(), h, kernel, 1e-6);
  for (double v : none.values) CHECK(std::abs(v) <= 1e-12);

  CHECK_THROWS_AS(spectral_invert(evolved_field(), h, EvolutionKernel::cos_kernel(0.1), 8.0), Error);
}

TEST_CASE("spectral and series reconstructions agree") {
  const LayeredMedium h = LayeredMedium::homogeneous();
  const SampledField s = spectral_invert(evolved_field(), h, EvolutionKernel::classical(0.1), 12.0);
  ReconstructionConfig rc;
  const auto r = reconstruct_series(evolved_field(), h, rc);
  CHECK(compare_fields(r.field, s, 1.0).rel_l2 <= 1e-3);
}

TEST_CASE("amplification guard") {
  const LayeredMedium h = LayeredMedium::homogeneous();
  try {
    (void)spectral_invert(evolved_field(), h, EvolutionKernel::classical(1.0), 64.0);
    FAIL("expected amplification overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::amplification_overflow);
  }
}

TEST_CASE("regularization under noise") {
  const auto kernel = EvolutionKernel::classical(0.1);
  const LayeredMedium h = LayeredMedium::homogeneous();
  for (double sigma : {1e-4, 1e-3}) {
    const SampledField noisy = add_noise(evolved_field(), sigma, 7);
    double best = std::numeric_limits<double>::infinity(), last = 0.0;
    for (double cut : {2.0, 4.0, 6.0, 8.0, 10.0, 12.0}) {
      last = compare_fields(spectral_invert(noisy, h, kernel, cut), gaussian, 8.0).rel_l2;
      best = std::min(best, last);
    }
    CHECK(last >= 2.0 * best);
  }
}

TEST_CASE("noise is reproducible") {
  const SampledField u = evolved_field();
  CHECK(max_dev(add_noise(u, 1e-3, 5), add_noise(u, 1e-3, 5)) == 0.0);
  CHECK(max_dev(add_noise(u, 1e-3, 5), add_noise(u, 1e-3, 6)) > 0.0);
  CHECK(max_dev(add_noise(u, 0.0, 5), u) == 0.0);
}

TEST_CASE("d'Alembert inversion") {
  const double tau = 0.5;
  const SampledField u = SampledField::from_function(-8.0, 8.0, 1024, [](double x) { return 2.0 * gaussian(x); });
  const SampledField f = dalembert_invert(u, tau);
  const int i0 = f.index_of(0.0);
  REQUIRE(i0 >= 0);
  CHECK(f.values[static_cast<std::size_t>(i0)] == doctest::Approx(2.0 * std::exp(-tau * tau)).epsilon(1e-12));
  CHECK(f.values[static_cast<std::size_t>(i0)] == doctest::Approx(1.5576016).epsilon(1e-7));

  const SampledField c = SampledField::from_function(-4.0, 4.0, 128, [](double) { return 3.0; });
  for (double v : dalembert_invert(c, 1.0).values) CHECK(v == doctest::Approx(3.0));

  const SampledField tiny = SampledField::from_function(-1.0, 1.0, 16, gaussian);
  try {
    (void)dalembert_invert(tiny, 0.9);
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain_error);
  }
}

TEST_CASE("every inversion is linear") {
  std::mt19937_64 rng(99);
  const LayeredMedium h = LayeredMedium::homogeneous();
  ReconstructionConfig rc;
  rc.order = 12;
  for (int trial = 0; trial < 3; ++trial) {
    const SampledField u = random_field(rng), v = random_field(rng);
    const SampledField w = combine(u, 0.7, v, -1.3);
    const auto spec = [&](const SampledField& x) { return spectral_invert(x, h, EvolutionKernel::classical(0.05), 8.0); };
    const auto ser = [&](const SampledField& x) { return reconstruct_series(x, h, rc).field; };
    const auto dal = [&](const SampledField& x) { return dalembert_invert(x, 0.5); };
    CHECK(max_dev(spec(w), combine(spec(u), 0.7, spec(v), -1.3)) <= 1e-12);
    // Outside the fit window the series is a growing polynomial.
    CHECK(max_dev(ser(w), combine(ser(u), 0.7, ser(v), -1.3), rc.fit_window) <= 1e-12);
    CHECK(max_dev(dal(w), combine(dal(u), 0.7, dal(v), -1.3)) <= 1e-12);
  }
}
