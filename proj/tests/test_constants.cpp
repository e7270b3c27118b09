#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpsect/constants.hpp"
#include "lpsect/special_fn.hpp"
#include "fixture_values.hpp"

#include <cmath>

using namespace lpsect;

TEST_CASE("closed forms at the endpoints") {
    const CriticalConstants c2 = constants_at(PExponent::make(2.0));
    CHECK(std::fabs(c2.c_p - 0.25) < 1e-12);
    CHECK(std::fabs(c2.d_p - 0.25) < 1e-12);

    const CriticalConstants cinf = constants_at(PExponent::make(1e6));
    CHECK(std::fabs(cinf.d_p - 1.0 / (2.0 * 3.14159265358979323846)) < 1e-5);
    CHECK(std::fabs(cinf.c_p - 1.0 / 6.0) < 1e-5);

    CHECK(constants_at(PExponent::make(15.0)).c_p == doctest::Approx(fixtures::c_at_15).epsilon(1e-12));
    CHECK(std::fabs(constants_at(PExponent::make(15.0)).c_p - 0.1584) < 5e-4);
}

TEST_CASE("critical exponents") {
    const double p0 = solve_p0();
    const double p1 = solve_p1();
    const double p2 = solve_p2();
    CHECK(std::fabs(p0 - fixtures::p0_ref) < 1e-8);
    CHECK(std::fabs(p1 - fixtures::p1_ref) < 1e-8);
    CHECK(std::fabs(p2 - fixtures::p2_ref) < 1e-8);
    CHECK(std::fabs(p0 - 26.265) < 5e-3);
    CHECK(std::fabs(p1 - 4.192) < 5e-3);
    CHECK(std::fabs(p2 - 9.1147) < 1e-3);

    CHECK(std::fabs(constants_at(PExponent::make(p2)).c_p - 0.15715) < 1e-4);
    const CriticalConstants cc0 = constants_at(PExponent::make(p0));
    CHECK(std::fabs(cc0.c_p - cc0.d_p) < 1e-9);
    CHECK(std::fabs(cc0.c_p - 0.1609) < 5e-4);

    CHECK(oleszkiewicz_phi(26.0) > 1.0);
    CHECK(oleszkiewicz_phi(27.0) < 1.0);
}

TEST_CASE("sign structure of c_p vs d_p") {
    const double p0 = solve_p0();
    for (double p = 2.5; p < p0 - 0.01; p += 1.1) {
        const CriticalConstants cc = constants_at(PExponent::make(p));
        CHECK(cc.c_p < cc.d_p);
        CHECK(cc.h2 < cc.h_inf);
    }
    for (double p = p0 + 0.01; p < 420.0; p *= 1.4) {
        const CriticalConstants cc = constants_at(PExponent::make(p));
        CHECK(cc.d_p < cc.c_p);
        CHECK(cc.h_inf < cc.h2);
    }
}

TEST_CASE("monotonicity of d_p and the dip of c_p") {
    const double p2 = solve_p2();
    double prev_d = constants_at(PExponent::make(2.0)).d_p;
    for (double p = 2.3; p < 500.0; p *= 1.2) {
        const double d = constants_at(PExponent::make(p)).d_p;
        CHECK(d < prev_d);
        prev_d = d;
    }
    double prev_c = constants_at(PExponent::make(2.0)).c_p;
    for (double p = 2.2; p < p2; p += 0.5) {
        const double c = constants_at(PExponent::make(p)).c_p;
        CHECK(c < prev_c);
        prev_c = c;
    }
    prev_c = constants_at(PExponent::make(p2 + 0.01)).c_p;
    for (double p = p2 + 0.5; p < 500.0; p *= 1.3) {
        const double c = constants_at(PExponent::make(p)).c_p;
        CHECK(c > prev_c);
        prev_c = c;
    }
}

TEST_CASE("section closed forms") {
    const SectionClosedForms f6 = section_closed_forms(PExponent::make(6.0));
    CHECK(f6.a2_value == doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-15));
    CHECK(section_closed_forms(PExponent::make(2.0)).diag_limit == doctest::Approx(1.0).epsilon(1e-14));

    // a1_threshold is the reciprocal of the diagonal limit
    for (double p : {3.0, 8.0, 20.0, 26.265}) {
        const CriticalConstants cc = constants_at(PExponent::make(p));
        CHECK(cc.a1_threshold * cc.diag_limit == doctest::Approx(1.0).epsilon(1e-13));
    }

    // a_1 >= 1/sqrt(2) + 1/(3p) + 1/150 suffices for the cylinder argument
    // precisely because the threshold sits BELOW that expression at p = 20
    // and p = p0 (and, by convexity, in between)
    for (double p : {20.0, solve_p0()}) {
        const CriticalConstants cc = constants_at(PExponent::make(p));
        CHECK(cc.a1_threshold < 1.0 / std::sqrt(2.0) + 1.0 / (3.0 * p) + 1.0 / 150.0);
    }
}

TEST_CASE("uncovered interval I_p") {
    for (double p : {26.265, 50.0, 400.0}) {
        const IpInterval ip = ip_interval(PExponent::make(p));
        CHECK(ip.lo == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(ip.hi - ip.lo > 0.0);
        CHECK(ip.hi - ip.lo < ip.length_bound);
        CHECK(ip.length_bound == doctest::Approx(0.5 / p));
    }
}

TEST_CASE("consistency of diag_limit with h_inf") {
    for (double p : {5.0, 15.0, 30.0}) {
        const CriticalConstants cc = constants_at(PExponent::make(p));
        const double via_hinf = lpsect::gamma(1.0 + 1.0 / p) * 2.0 / 3.14159265358979323846
                                * cc.h_inf;
        CHECK(cc.diag_limit == doctest::Approx(via_hinf).epsilon(1e-13));
    }
}
