#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "retro/errors.hpp"
#include "retro/fields.hpp"
#include "retro/forward.hpp"
#include "retro/genfun.hpp"
#include "retro/media.hpp"

using namespace retro;

namespace {

constexpr double kPi = std::numbers::pi;

double gaussian(double x) { return std::exp(-x * x); }

// Heat evolution of exp(-x^2) under u_t = a^2 u_xx.
double heat_gaussian(double x, double tau, double a) {
  const double s = 1.0 + 4.0 * a * a * tau;
  return std::exp(-x * x / s) / std::sqrt(s);
}

double max_abs_diff(const SampledField& f, const std::function<double(double)>& g, double half_width = 1e9) {
  double m = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    if (std::abs(f.x(i)) <= half_width) m = std::max(m, std::abs(f.values[static_cast<std::size_t>(i)] - g(f.x(i))));
  }
  return m;
}

double mass(const SampledField& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s * f.dx;
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

TEST_CASE("homogeneous multiplier evolution") {
  const SampledField f = SampledField::from_function(-8.0, 8.0, 1024, gaussian);
  const FieldResult u = heat_forward_homogeneous(f, 0.1, 1.0, 1.0);
  CHECK(u.warnings.empty());
  CHECK(max_abs_diff(u.field, [](double x) { return heat_gaussian(x, 0.1, 1.0); }) <= 1e-10);
  CHECK(u.field.values[512] == doctest::Approx(0.8451543).epsilon(1e-7));

  const FieldResult fast = heat_forward_homogeneous(f, 0.1, 2.0, 1.0);
  CHECK(max_abs_diff(fast.field, [](double x) { return heat_gaussian(x, 0.1, 2.0); }) <= 1e-10);

  CHECK(max_abs_diff(heat_forward_homogeneous(f, 0.0, 1.0, 1.0).field, gaussian) <= 1e-14);

  const SampledField zero = SampledField::zeros_like(f);
  for (double v : heat_forward_homogeneous(zero, 0.3, 1.0, 1.0).field.values) CHECK(v == 0.0);
}

TEST_CASE("hyperbolic multiplier splits the profile") {
  const SampledField f = SampledField::from_function(-16.0, 16.0, 2048, gaussian);
  const FieldResult u = heat_forward_homogeneous(f, 0.7, 1.5, 2.0);
  const double s = 1.5 * 0.7;
  CHECK(max_abs_diff(u.field, [s](double x) { return 0.5 * (gaussian(x + s) + gaussian(x - s)); }) <= 1e-10);
}

TEST_CASE("maximum principle") {
  const SampledField f = SampledField::from_function(
      -8.0, 8.0, 512, [](double x) { return std::exp(-4.0 * x * x) - 0.5 * std::exp(-(x - 2.0) * (x - 2.0)); });
  double fmax = 0.0;
  for (double v : f.values) fmax = std::max(fmax, std::abs(v));
  for (const SampledField& u : {heat_forward_homogeneous(f, 0.2, 1.0, 1.0).field,
                                piecewise_heat_fd(LayeredMedium::homogeneous(), f, 0.2, 200)}) {
    for (double v : u.values) CHECK(std::abs(v) <= fmax + 1e-12);
  }
}

TEST_CASE("finite volumes against the homogeneous closed form") {
  const SampledField f = SampledField::from_function(-16.0, 16.0, 4096, gaussian);
  const SampledField u = piecewise_heat_fd(LayeredMedium::homogeneous(), f, 0.1, 400);
  CHECK(max_abs_diff(u, [](double x) { return heat_gaussian(x, 0.1, 1.0); }) <= 1e-4);
  CHECK(std::abs(mass(u) - mass(f)) <= 1e-8);

  const LayeredMedium m = LayeredMedium::ideal_two_layer(1.0, 2.0);
  const SampledField v = piecewise_heat_fd(m, f, 0.1, 400);
  CHECK(std::abs(mass(v) - mass(f)) <= 1e-8);
}

TEST_CASE("second-order convergence") {
  const auto error = [](int n, int steps) {
    const SampledField f = SampledField::from_function(-8.0, 8.0, n, gaussian);
    const SampledField u = piecewise_heat_fd(LayeredMedium::homogeneous(), f, 0.1, steps);
    return max_abs_diff(u, [](double x) { return heat_gaussian(x, 0.1, 1.0); });
  };
  const double coarse = error(128, 10);
  const double fine = error(256, 20);
  CHECK(coarse / fine >= 3.0);
}

TEST_CASE("layered heat polynomials evolve into monomials") {
  const LayeredMedium m = LayeredMedium::ideal_two_layer(1.0, 2.0);
  const GenHermiteBasis b = gen_hermite_basis(m, EvolutionKernel::classical(0.1), 4);
  const GeneralizedMonomialTable& mono = b.monomials();
  for (int j = 0; j <= 4; ++j) {
    const SampledField h = SampledField::from_function(-16.0, 16.0, 4096, [&](double x) { return b.evaluate(j, x); });
    const SampledField u = piecewise_heat_fd(m, h, 0.1, 400);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < u.size(); ++i) {
      const double x = u.x(i);
      if (std::abs(x) > 4.0) continue;
      const double ref = mono.evaluate(j, x);
      num += std::pow(u.values[static_cast<std::size_t>(i)] - ref, 2);
      den += ref * ref;
    }
    CHECK(std::sqrt(num / den) <= 1e-3);
  }
}

TEST_CASE("finite volume preconditions") {
  const SampledField f = SampledField::from_function(-4.0, 4.0, 64, gaussian);
  const LayeredMedium off_grid = LayeredMedium::ideal_two_layer(1.0, 2.0, 0.01);
  CHECK(kind_of([&] { (void)piecewise_heat_fd(off_grid, f, 0.1, 10); }) == ErrorKind::invalid_argument);

  Coupling robin;
  robin.alpha = {{{0.0, 0.0}, {1.0, 4.0}}};
  robin.beta = {{{1.0, 2.0}, {0.0, 0.0}}};
  const LayeredMedium odd = build_medium({0.0}, {1.0, 2.0}, {robin});
  CHECK(kind_of([&] { (void)piecewise_heat_fd(odd, f, 0.1, 10); }) == ErrorKind::not_implemented);

  for (double v : piecewise_heat_fd(LayeredMedium::homogeneous(), SampledField::zeros_like(f), 0.1, 10).values) {
    CHECK(v == 0.0);
  }
}

TEST_CASE("influence kernel") {
  const LayeredMedium h = LayeredMedium::homogeneous();
  const double t = 0.1;
  for (double x : {-1.0, 0.0, 0.4}) {
    for (double xi : {-0.5, 0.0, 0.9}) {
      const double ref = std::exp(-(x - xi) * (x - xi) / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
      CHECK(std::abs(influence_kernel(h, t, x, xi, 40.0) - ref) <= 1e-8);
      CHECK(influence_kernel(h, t, x, xi, 40.0) == doctest::Approx(influence_kernel(h, t, xi, x, 40.0)));
    }
  }
}

TEST_CASE("wave family") {
  const double tau = 0.5;
  const SampledField end = wave_forward_family(gaussian, tau, tau, -4.0, 4.0, 64);
  CHECK(max_abs_diff(end, [](double x) { return 2.0 * gaussian(x); }) == 0.0);
  const SampledField start = wave_forward_family(gaussian, 0.0, tau, -4.0, 4.0, 64);
  CHECK(max_abs_diff(start, [tau](double x) { return gaussian(x - tau) + gaussian(x + tau); }) <= 1e-15);
  const SampledField mid = wave_forward_family(gaussian, 0.25, tau, -4.0, 4.0, 64);
  CHECK(max_abs_diff(mid, [](double x) { return gaussian(x + 0.25) + gaussian(x - 0.25); }) <= 1e-15);
}

TEST_CASE("series forward evolution") {
  const std::vector<double> one{1.0};
  const std::vector<double> square{0.0, 0.0, 2.0};
  const auto u1 = forward_series(one, 0.3, 1.0);
  const auto heat = forward_series(square, 0.3, 1.0);
  const auto wave = forward_series(square, 0.3, 2.0);
  for (double x : {-2.0, -0.5, 0.0, 1.3}) {
    CHECK(u1(x) == doctest::Approx(1.0));
    CHECK(heat(x) == doctest::Approx(x * x + 0.6));
    CHECK(wave(x) == doctest::Approx(x * x + 0.09));
  }
  CHECK_THROWS_AS(forward_series(square, 0.0, 1.0), Error);
}

TEST_CASE("half-plane evolution") {
  const SampledField f = SampledField::from_function(-8.0 * kPi, 8.0 * kPi, 512, [](double y) { return std::cos(y); });
  const FieldResult u = halfplane_forward(f, 1.0);
  CHECK(max_abs_diff(u.field, [](double y) { return std::exp(-1.0) * std::cos(y); }) <= 1e-8);
  CHECK(max_abs_diff(halfplane_forward(f, 0.0).field, [](double y) { return std::cos(y); }) <= 1e-10);
  for (double v : halfplane_forward(SampledField::zeros_like(f), 1.0).field.values) CHECK(v == 0.0);
}
