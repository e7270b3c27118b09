#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpsect/quadrature.hpp"

#include <cmath>

using namespace lpsect;

TEST_CASE("polynomials integrate exactly") {
    auto f = [](double x) { return 3.0 * x * x - 2.0 * x + 1.0; };
    QuadResult q = integrate_adaptive(f, -1.0, 2.0, 1e-14);
    CHECK(q.value == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("oscillatory integrand converges with cell splitting") {
    auto f = [](double x) { return std::cos(40.0 * x) * std::exp(-x); };
    // exact: int_0^10 cos(40x) e^{-x} dx = [e^{-x}(40 sin40x - cos40x)/1601]_0^10
    const double exact = (std::exp(-10.0) * (40.0 * std::sin(400.0) - std::cos(400.0))
                          + 1.0) / 1601.0;
    std::vector<double> cuts;
    for (int k = 0; k <= 128; ++k) cuts.push_back(10.0 * k / 128.0);
    QuadResult q = integrate_cells(f, cuts, 1e-13);
    CHECK(std::fabs(q.value - exact) < 1e-12);
    CHECK(q.err < 1e-10);
}

TEST_CASE("sharp exponential cliff is resolved adaptively") {
    auto f = [](double x) { return std::exp(-std::pow(x, 100.0)); };
    QuadResult q = integrate_adaptive(f, 0.0, 1.4, 1e-13, 0, 2000);
    // Gamma(1 + 1/100) = 0.99432585...
    CHECK(q.value == doctest::Approx(0.9943258511915060).epsilon(1e-10));
}

TEST_CASE("find_root brackets and refines") {
    auto f = [](double x) { return std::cos(x); };
    const double r = find_root(f, 1.0, 2.0, 1e-13);
    CHECK(r == doctest::Approx(1.5707963267948966).epsilon(1e-12));
    CHECK_THROWS_AS(find_root(f, 0.1, 0.2), std::invalid_argument);
}

TEST_CASE("golden_max locates an interior maximum") {
    auto g = [](double x) { return std::fabs(std::sin(x) / x); };
    auto [xs, vs] = golden_max(g, 3.5, 6.0, 1e-11);
    CHECK(xs == doctest::Approx(4.493409457909064).epsilon(1e-8));
    CHECK(vs == doctest::Approx(0.21723362821122166).epsilon(1e-10));
}
