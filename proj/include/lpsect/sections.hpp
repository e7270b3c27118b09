#pragma once

#include "lpsect/gamma_p.hpp"
#include "lpsect/quadrature.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lpsect {

// Unit direction vector with coordinates sorted nonincreasing, all >= 0.
struct Direction {
    std::vector<double> coords;

    static Direction make(std::vector<double> coords);   // validates
    static Direction k_diagonal(int k, int n);            // a^(k) in R^n
    size_t dim() const { return coords.size(); }
};

enum class SectionMethod { polya, mc, brute };

struct SectionEstimate {
    double value = 0;
    SectionMethod method = SectionMethod::polya;
    double err = 0;          // absolute error bound, or MC standard error
    // provenance
    uint64_t samples = 0;
    uint64_t seed = 0;
    double trunc_radius = 0;
    bool degraded = false;
    std::string note;
};

// Fourier product formula: Gamma(1+1/p) (2/pi) int prod_j gamma_p(a_j s) ds.
SectionEstimate section_polya(const PExponent& p, const Direction& a,
                              const QuadratureSpec& spec = {});

// Monte Carlo over sphere-uniform xi_j and radial variables R_j with density
// p x^p exp(-x^p) / Gamma(1+1/p); deterministic given the seed.
SectionEstimate section_mc(const PExponent& p, const Direction& a,
                           uint64_t samples, uint64_t seed);

// Serial reference of the same estimator (identical results by construction;
// kept as the comparison baseline for the parallel path).
SectionEstimate section_mc_serial(const PExponent& p, const Direction& a,
                                  uint64_t samples, uint64_t seed);

// Geometric oracle for n in {2, 3}: exact segment length over the l_p disc
// for n = 2, polar-coordinate area integration for n = 3.
SectionEstimate section_brute(const PExponent& p, const Direction& a);

// A_{n,p}(a) <= 1/a_1.
double cylinder_bound(const Direction& a);

struct CandidateRow {
    int k = 0;               // candidate a^(k)
    double value = 0;
    double err = 0;
    double closed_form = 0;  // 0 when no closed form applies
};

struct CandidateReport {
    double p = 0;
    int n = 0;
    std::vector<CandidateRow> rows;   // sorted by value, descending
    double diag_limit = 0;
};

CandidateReport compare_candidates(const PExponent& p, int n,
                                   const QuadratureSpec& spec = {});

// CDF of the radial sampler, via numeric integration of the density (used by
// the sampler acceptance test and the CLI).
double radial_cdf(const PExponent& p, double x);

} // namespace lpsect
