#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpsect/constants.hpp"
#include "lpsect/rng.hpp"
#include "lpsect/sections.hpp"
#include "fixture_values.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace lpsect;

namespace {

QuadratureSpec fast_spec() {
    QuadratureSpec s;
    s.rel_tol = 1e-8;
    s.abs_tol = 1e-8;
    return s;
}

// random direction with coordinates bounded away from zero
Direction random_direction(int n, uint64_t key) {
    const CounterRng rng{key};
    std::vector<double> c(n);
    for (;;) {
        double norm2 = 0;
        for (int i = 0; i < n; ++i) {
            c[i] = 0.12 + rng.uniform(key * 97 + i, 0);
            key += 11;
            norm2 += c[i] * c[i];
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : c) x *= inv;
        std::sort(c.begin(), c.end(), std::greater<>());
        if (c.back() > 0.12) return Direction::make(c);
    }
}

} // namespace

TEST_CASE("direction validation") {
    CHECK_THROWS_AS(Direction::make({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Direction::make({0.5, 0.5}), std::invalid_argument);        // not unit
    CHECK_THROWS_AS(Direction::make({0.6, -0.8}), std::invalid_argument);       // negative
    CHECK_THROWS_AS(Direction::make({0.6, 0.8}), std::invalid_argument);        // unsorted
    const Direction d = Direction::make({0.8, 0.6});
    CHECK(d.dim() == 2);
    const Direction diag = Direction::k_diagonal(3, 5);
    CHECK(diag.coords[2] == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(diag.coords[3] == 0.0);
}

TEST_CASE("brute oracle closed forms") {
    for (double p : {3.0, 6.0, 26.265}) {
        const PExponent px = PExponent::make(p);
        const SectionEstimate e = section_brute(px, Direction::k_diagonal(2, 2));
        CHECK(e.value == doctest::Approx(std::pow(2.0, 0.5 - 1.0 / p)).epsilon(1e-12));
    }
    // every section of the euclidean ball is a unit disc
    const SectionEstimate e2 = section_brute(PExponent::make(2.0), random_direction(3, 7));
    CHECK(e2.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(section_brute(PExponent::make(3.0), random_direction(4, 1)),
                    std::invalid_argument);
}

TEST_CASE("polya formula basics") {
    const QuadratureSpec spec = fast_spec();
    // p = 2: all sections congruent
    const SectionEstimate g = section_polya(PExponent::make(2.0), random_direction(3, 3), spec);
    CHECK(g.value == doctest::Approx(1.0).epsilon(1e-7));
    // coordinate hyperplane reduces to the definition
    const SectionEstimate one = section_polya(PExponent::make(7.0),
                                              Direction::k_diagonal(1, 3), spec);
    CHECK(one.value == 1.0);
    CHECK(one.err == 0.0);
}

TEST_CASE("polya reproduces the diagonal landmark values") {
    const QuadratureSpec spec = fast_spec();
    const SectionEstimate a36 = section_polya(PExponent::make(6.0),
                                              Direction::k_diagonal(3, 3), spec);
    CHECK(std::fabs(a36.value - fixtures::section_3_6_diag) < 1e-6);
    const SectionEstimate a48 = section_polya(PExponent::make(8.0),
                                              Direction::k_diagonal(4, 4), spec);
    CHECK(std::fabs(a48.value - fixtures::section_4_8_diag4) < 1e-6);
    const SectionEstimate a48_3 = section_polya(PExponent::make(8.0),
                                                Direction::k_diagonal(3, 4), spec);
    CHECK(std::fabs(a48_3.value - fixtures::section_4_8_diag3) < 1e-6);
}

TEST_CASE("polya agrees with the geometric oracle") {
    const QuadratureSpec spec = fast_spec();
    int key = 0;
    for (double p : {3.0, 6.0, 8.0}) {
        const PExponent px = PExponent::make(p);
        for (int n : {2, 3}) {
            const Direction a = random_direction(n, 1000 + 17 * key++);
            const SectionEstimate pe = section_polya(px, a, spec);
            const SectionEstimate be = section_brute(px, a);
            CHECK(std::fabs(pe.value - be.value) <= 1e-5);
        }
    }
}

TEST_CASE("monte carlo estimator") {
    const PExponent p6 = PExponent::make(6.0);
    const Direction diag = Direction::k_diagonal(3, 3);
    const SectionEstimate mc = section_mc(p6, diag, 200000, 42);
    CHECK(std::fabs(mc.value - fixtures::section_3_6_diag) <= 3.0 * mc.err);
    CHECK(mc.err < 5e-3);
    CHECK(mc.samples == 200000);
    CHECK(mc.seed == 42);
    CHECK_THROWS_AS(section_mc(p6, diag, 100, 1), std::domain_error);

    // euclidean case
    const SectionEstimate mc2 = section_mc(PExponent::make(2.0), Direction::make({1.0, 0.0}),
                                           100000, 9);
    CHECK(std::fabs(mc2.value - 1.0) <= 3.0 * mc2.err);
}

TEST_CASE("monte carlo is deterministic and thread-count independent") {
    const PExponent p6 = PExponent::make(6.0);
    const Direction diag = Direction::k_diagonal(3, 3);
    const SectionEstimate a = section_mc(p6, diag, 50000, 1234);
    const SectionEstimate b = section_mc(p6, diag, 50000, 1234);
    const SectionEstimate c = section_mc_serial(p6, diag, 50000, 1234);
    CHECK(a.value == b.value);
    CHECK(a.value == c.value);
    CHECK(a.err == c.err);
    const SectionEstimate d = section_mc(p6, diag, 50000, 4321);
    CHECK(a.value != d.value);
}

TEST_CASE("radial sampler matches its density") {
    const PExponent p6 = PExponent::make(6.0);
    const CounterRng rng{77};
    const int n = 100000;
    std::vector<double> sample(n);
    for (int i = 0; i < n; ++i) {
        uint64_t draw = 0;
        sample[i] = std::pow(gamma_variate(rng, i, &draw, (6.0 + 1.0) / 6.0), 1.0 / 6.0);
    }
    std::sort(sample.begin(), sample.end());
    double ks = 0;
    for (int i = 0; i < n; i += 37) {
        const double cdf = radial_cdf(p6, sample[i]);
        ks = std::max(ks, std::fabs(cdf - (i + 0.5) / n));
    }
    CHECK(ks < 0.006);
}

TEST_CASE("cylinder bound") {
    CHECK(cylinder_bound(Direction::k_diagonal(2, 2)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(cylinder_bound(Direction::k_diagonal(5, 5)) == doctest::Approx(std::sqrt(5.0)));
    // a_1 >= 2^{1/p - 1/2} makes the bound at most the a2 closed form
    const double p = 9.0;
    const double a1 = std::pow(2.0, 1.0 / p - 0.5) + 0.001;
    CHECK(1.0 / a1 <= std::pow(2.0, 0.5 - 1.0 / p));
}

TEST_CASE("candidate comparison") {
    const QuadratureSpec spec = fast_spec();
    const CandidateReport r6 = compare_candidates(PExponent::make(6.0), 3, spec);
    REQUIRE(r6.rows.size() == 3);
    CHECK(r6.rows[0].k == 2);
    CHECK(r6.rows[1].k == 3);
    CHECK(r6.rows[0].closed_form == doctest::Approx(std::pow(2.0, 1.0 / 3.0)));

    // p = 8, n = 4 ranks a2 above the full diagonal above a3
    const CandidateReport r8 = compare_candidates(PExponent::make(8.0), 4, spec);
    REQUIRE(r8.rows.size() == 4);
    CHECK(r8.rows[0].k == 2);
    CHECK(r8.rows[1].k == 4);
    CHECK(r8.rows[2].k == 3);
    CHECK(r8.rows[3].k == 1);

    const CandidateReport r2 = compare_candidates(PExponent::make(2.0), 4, spec);
    for (const CandidateRow& row : r2.rows)
        CHECK(row.value == doctest::Approx(1.0).epsilon(1e-6));

    CHECK_THROWS_AS(compare_candidates(PExponent::make(6.0), 20, spec), std::domain_error);
}

TEST_CASE("monotone in p on the diagonal") {
    const QuadratureSpec spec = fast_spec();
    double prev = 0;
    for (double p : {2.0, 3.0, 4.0, 6.0, 8.0}) {
        const SectionEstimate e = section_polya(PExponent::make(p),
                                                Direction::k_diagonal(3, 3), spec);
        CHECK(e.value >= prev - 1e-7);
        prev = e.value;
    }
}

TEST_CASE("diagonal values converge to the limit") {
    const QuadratureSpec spec = fast_spec();
    const PExponent px = PExponent::make(26.265);
    const double limit = constants_at(px).diag_limit;
    const double e4 = section_polya(px, Direction::k_diagonal(4, 4), spec).value;
    const double e12 = section_polya(px, Direction::k_diagonal(12, 12), spec).value;
    CHECK(std::fabs(e12 - limit) < std::fabs(e4 - limit));
}

TEST_CASE("sections with a_1 below 1/sqrt(2) respect the a2 bound at p = 30") {
    const QuadratureSpec spec = fast_spec();
    const PExponent p30 = PExponent::make(30.0);
    const double bound = std::pow(2.0, 0.5 - 1.0 / 30.0);
    int found = 0;
    for (uint64_t key = 0; found < 4 && key < 40; ++key) {
        for (int n : {3, 4, 6}) {
            const Direction a = random_direction(n, 555 + key * 31 + n);
            if (a.coords[0] > 1.0 / std::sqrt(2.0)) continue;
            const SectionEstimate e = section_polya(p30, a, spec);
            CHECK(e.value <= bound + 1e-6);
            ++found;
        }
    }
    CHECK(found >= 4);
}
