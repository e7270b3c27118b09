#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpsect/ball_inequality.hpp"
#include "lpsect/special_fn.hpp"
#include "fixture_values.hpp"

#include <cmath>

using namespace lpsect;

namespace {
constexpr double pi = 3.14159265358979323846;

QuadratureSpec fast_spec() {
    QuadratureSpec s;
    s.rel_tol = 1e-8;
    s.abs_tol = 1e-9;
    return s;
}
} // namespace

TEST_CASE("h_p(2) matches the Plancherel closed form") {
    const QuadratureSpec spec = fast_spec();
    for (double p : {3.0, 30.0}) {
        const PExponent px = PExponent::make(p);
        const CriticalConstants cc = constants_at(px);
        const HpResult h = h_p(px, 2.0, spec);
        CHECK(std::fabs(h.value - cc.h2) / cc.h2 < 1e-6);
        CHECK_FALSE(h.degraded);
    }
}

TEST_CASE("h_p at large u approaches h_inf") {
    const PExponent p30 = PExponent::make(30.0);
    const CriticalConstants cc = constants_at(p30);
    const HpResult h = h_p(p30, 1e4, fast_spec());
    CHECK(std::fabs(h.value - cc.h_inf) < 1e-3);
}

TEST_CASE("h_p for the sinc proxy") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-3;
    spec.abs_tol = 1e-3;
    const HpResult h = h_p(PExponent::make(1e6), 2.0, spec);
    CHECK(std::fabs(h.value - pi / std::sqrt(2.0)) < 5e-3);
    CHECK(h.err_bound < 0.05);
}

TEST_CASE("h_p rejects u < 2") {
    CHECK_THROWS_AS(h_p(PExponent::make(3.0), 1.5, {}), std::domain_error);
}

TEST_CASE("derivative of h at u = 2") {
    const QuadratureSpec spec = fast_spec();
    const HpResult d4 = h_p_deriv_at_2(PExponent::make(4.0), spec);
    CHECK(std::fabs(d4.value - fixtures::hp_deriv2_4) < 2e-5);
    CHECK(d4.value > 0.009);
    const HpResult d43 = h_p_deriv_at_2(PExponent::make(4.3), spec);
    CHECK(std::fabs(d43.value - fixtures::hp_deriv2_4p3) < 2e-5);
    CHECK(d43.value > 0.002);
    const HpResult d45 = h_p_deriv_at_2(PExponent::make(4.5), spec);
    CHECK(std::fabs(d45.value - fixtures::hp_deriv2_4p5) < 2e-5);
    CHECK(d45.value < -0.002);
}

TEST_CASE("gaussian comparator distribution") {
    CHECK(distribution_G(0.999999, 0.16) < 1e-2);
    CHECK(distribution_G(std::exp(-0.17), 0.17) == doctest::Approx(1.0).epsilon(1e-13));
    for (double p : {15.0, 40.0}) {
        const CriticalConstants cc = constants_at(PExponent::make(p));
        CHECK(distribution_G(1.0 / 20.0, cc.d_p) <= 2.5122 * std::sqrt(std::log(20.0)));
        CHECK(2.5122 * std::sqrt(std::log(20.0)) < 4.35);
    }
    CHECK_THROWS_AS(distribution_G(0.0, 0.2), std::domain_error);
    CHECK_THROWS_AS(distribution_G(1.5, 0.2), std::domain_error);
}

TEST_CASE("distribution function of |gamma_p|") {
    const QuadratureSpec spec = fast_spec();
    const PExponent p30 = PExponent::make(30.0);
    DistributionCurve c = distribution_F(p30, {1.0 / 20.0, 0.1, 0.5, 1.2}, spec);
    REQUIRE(c.grid.size() == 4);
    // x >= 1 has empty super-level set
    CHECK(c.value_hi[3] == 0.0);
    // quoted lower bound at 1/20
    CHECK(c.value_lo[0] >= 7.15);
    // monotone envelopes
    for (size_t i = 0; i + 1 < c.grid.size(); ++i) {
        CHECK(c.value_lo[i] >= c.value_lo[i + 1] - 1e-12);
        CHECK(c.value_hi[i] >= c.value_hi[i + 1] - 1e-12);
    }
    CHECK(c.envelope_limited);  // p = 30 is an even integer
    CHECK(c.tail_model == "exp-envelope");
}

TEST_CASE("distribution against a brute super-level scan") {
    const QuadratureSpec spec = fast_spec();
    const PExponent p30 = PExponent::make(30.0);
    const BumpProfile bumps = bump_profile(p30, 6.0 * pi, spec);
    const double x_probe = bumps.x1 * 0.98;

    DistributionCurve c = distribution_F(p30, {x_probe}, spec);
    // brute-force measurement on a dense grid over the bump window
    double brute = 0;
    const double step = 1e-4;
    for (double s = step; s < 6.0 * pi; s += step)
        if (std::fabs(gamma_p_direct(p30, s, spec)) > x_probe) brute += step;
    CHECK(c.value_lo[0] <= brute + 2e-3);
    CHECK(c.value_hi[0] >= brute - 2e-3);

    // the bump contribution shrinks to zero as x approaches x1 from below
    DistributionCurve tight = distribution_F(p30, {bumps.x1 * 0.99999}, spec);
    DistributionCurve loose = distribution_F(p30, {bumps.x1 * 0.98}, spec);
    CHECK(tight.value_hi[0] < loose.value_hi[0]);
    const double first_descent = tight.value_hi[0];
    const double bump_width = loose.value_hi[0] - first_descent;
    CHECK(bump_width > 0.0);
    CHECK(bump_width < 1.0);
}

TEST_CASE("layer-cake consistency") {
    // int_0^inf f^2 = int_0^1 2x F(x) dx reconstructed from the curve
    const QuadratureSpec spec = fast_spec();
    const PExponent p30 = PExponent::make(30.0);
    std::vector<double> xs;
    for (int i = 0; i <= 400; ++i)
        xs.push_back(1e-4 * std::pow(0.9999 / 1e-4, i / 400.0));
    DistributionCurve c = distribution_F(p30, xs, spec);
    double lo = 0, hi = 0;
    for (size_t i = 0; i + 1 < c.grid.size(); ++i) {
        const double w = c.grid[i + 1] * c.grid[i + 1] - c.grid[i] * c.grid[i];
        lo += w * c.value_lo[i + 1];
        hi += w * c.value_hi[i];
    }
    hi += c.grid.front() * c.grid.front() * c.value_hi.front() * 2.0;  // edge cap
    const CriticalConstants cc = constants_at(p30);
    const double exact = 0.5 * std::sqrt(pi / cc.d_p) / std::sqrt(2.0);  // int f^2
    CHECK(lo <= exact + 1e-6);
    CHECK(hi >= exact - 1e-6);
    CHECK(hi - lo < 0.08);
}

TEST_CASE("sinc distribution function") {
    // only the first arch exceeds 0.9; |sin s|/s = 0.9 near s = 0.787
    FSincValue big = f_sinc_distribution(0.9);
    CHECK(big.numeric > 0.0);
    CHECK(big.numeric < 1.0);
    CHECK_FALSE(big.bound_applicable);

    FSincValue at = f_sinc_distribution(1.0 / (2.0 * pi) - 1e-12);
    CHECK(at.bound_applicable);
    CHECK(at.numeric >= 4.0 - 27.0 / 16.0);
    // per-period arcsin summation oracle: n + theta = 1/(pi x) = 2
    const double oracle = std::asin(0.5) + 2.0 * (std::acos(0.5) + std::acos(1.0));
    CHECK(at.numeric >= oracle);

    FSincValue small = f_sinc_distribution(0.01);
    CHECK(small.numeric >= 2.0 / pi * 100.0 - 27.0 / 16.0);

    // property grid (subset; the full 200-point grid runs in acceptance)
    for (int i = 0; i < 40; ++i) {
        const double x = 1e-4 * std::pow((1.0 / (2.0 * pi)) / 1e-4, i / 39.0);
        FSincValue v = f_sinc_distribution(x * 0.999);
        CHECK(v.numeric >= v.lower_bound);
    }
}

TEST_CASE("generic NP monotonicity check") {
    // f = g: h identically zero, trivially nondecreasing
    std::vector<double> xs;
    for (int i = 0; i <= 200; ++i)
        xs.push_back(1e-5 * std::pow(0.9999 / 1e-5, i / 200.0));
    DistributionCurve g = gaussian_curve(0.2, xs);
    CHECK(np_monotone_check(g, g, 0.2, {2, 3, 4, 8}) == CheckOutcome::ok);

    // f = |sinc| vs g = exp(-s^2/(2 pi)): Ball's original comparison
    DistributionCurve f;
    f.grid = xs;
    f.tail_model = "none";
    for (double x : xs) {
        FSincValue v = f_sinc_distribution(x);
        f.value_lo.push_back(v.numeric - 1e-9);
        f.value_hi.push_back(v.numeric + 1e-9);
    }
    const double d_inf = 1.0 / (2.0 * pi);
    DistributionCurve g2 = gaussian_curve(d_inf, xs);
    const CheckOutcome res = np_monotone_check(f, g2, 0.18, {2.0, 2.5, 3.0, 4.0, 6.0, 10.0});
    CHECK(res != CheckOutcome::fail);
}

TEST_CASE("psi_A margins") {
    CHECK(psi_A_margin(400.0, 400.0, PsiRegime::coarse) > 2.0);
    CHECK(psi_A_margin(265.0, 10.0, PsiRegime::coarse) > 1.0);
    CHECK(psi_A_margin(50.0, 50.0, PsiRegime::refined_175) > 2.0);
    CHECK(psi_A_margin(26.5, 2.0, PsiRegime::refined_26) > 0.0);
    CHECK(psi_A_margin(26.265, 1.5, PsiRegime::refined_26) > 0.0);
    CHECK(psi_A_margin(37.0, 10.0, PsiRegime::refined_26) > 0.0);
    CHECK(psi_A_margin(46.0, 46.0, PsiRegime::refined_26) > 0.0);
    CHECK(psi_A_margin(20.2, 15.0 / 14.0, PsiRegime::refined_20) > 0.0);
    CHECK_THROWS_AS(psi_A_margin(400.0, 0.5, PsiRegime::coarse), std::domain_error);
    CHECK_THROWS_AS(psi_A_margin(10.0, 2.0, PsiRegime::coarse), std::domain_error);

    // increasing in p across each regime's working range (the coarse margin
    // only turns monotone once the linear term dominates the sqrt)
    double prev = psi_A_margin(200.0, 10.0, PsiRegime::coarse);
    for (double p = 230.0; p < 2000.0; p *= 1.25) {
        const double cur = psi_A_margin(p, 10.0, PsiRegime::coarse);
        CHECK(cur > prev);
        prev = cur;
    }
    prev = psi_A_margin(25.0, 2.0, PsiRegime::refined_26);
    for (double p = 30.0; p < 400.0; p *= 1.3) {
        const double cur = psi_A_margin(p, 2.0, PsiRegime::refined_26);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("landmark ratio bounds") {
    CHECK(np_ratio_landmark_bound(1.0 / 8.0) > 1.06);
    CHECK(np_ratio_landmark_bound(1.0 / 10.0) > 1.03);
    CHECK(np_ratio_landmark_bound(1.0 / 20.0) > 1.1);
    CHECK_THROWS_AS(np_ratio_landmark_bound(1.0 / 30.0), std::domain_error);
}
