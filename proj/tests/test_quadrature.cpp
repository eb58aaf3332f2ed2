#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "deco/quadrature.hpp"

using deco::quad::integrate;
using deco::quad::integrate_complex;
using deco::quad::Options;

TEST_CASE("polynomials are integrated to machine precision") {
    const auto r = integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const auto s = integrate([](double x) { return 3.0 * x * x - 2.0 * x + 0.5; }, -1.0, 2.0);
    CHECK(s.value == doctest::Approx(9.0 - 3.0 + 1.5).epsilon(1e-14));
}

TEST_CASE("oscillatory integrands converge with seeded panels") {
    Options opts;
    opts.initial_panels = 64;
    const auto r = integrate([](double x) { return std::cos(x); }, 0.0, 10.0, opts);
    CHECK(r.value == doctest::Approx(std::sin(10.0)).epsilon(1e-12));

    const auto s = integrate([](double x) { return std::cos(40.0 * x); }, 0.0, 10.0, opts);
    CHECK(s.value == doctest::Approx(std::sin(400.0) / 40.0).epsilon(1e-10));
}

TEST_CASE("sharply peaked integrands are resolved adaptively") {
    const double width = 1e-4;
    const auto r = integrate(
        [&](double x) { return width / (x * x + width * width); }, -1.0, 1.0);
    CHECK(r.value == doctest::Approx(2.0 * std::atan(1.0 / width)).epsilon(1e-9));
}

TEST_CASE("complex integrands integrate both components") {
    const auto r = integrate_complex(
        [](double x) { return std::complex<double>(std::cos(x), std::sin(x)); }, 0.0, 1.0);
    CHECK(r.value.real() == doctest::Approx(std::sin(1.0)).epsilon(1e-13));
    CHECK(r.value.imag() == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-13));
}

TEST_CASE("exhausting the panel budget reports failure") {
    Options opts;
    opts.initial_panels = 1;
    opts.max_panels = 4;
    opts.rel_tol = 1e-14;
    opts.abs_tol = 1e-16;
    CHECK_THROWS_AS(integrate([](double x) { return std::cos(500.0 * x); }, 0.0, 10.0, opts),
                    deco::quad::ConvergenceError);
}
