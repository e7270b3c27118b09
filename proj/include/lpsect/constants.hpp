#pragma once

#include "lpsect/gamma_p.hpp"

namespace lpsect {

// Closed-form comparator rates and derived quantities at a fixed exponent.
//   c_p = Gamma(1+3/p) / (6 Gamma(1+1/p)): curvature of gamma_p at 0
//   d_p = (2^{1/p} Gamma(1+1/p))^2 / (2 pi): Plancherel normalization
//   h2 = h_p(2), h_inf = lim_u h_p(u), both closed forms
//   diag_limit = lim_n A_{n,p}(a^(n)), a1_threshold = 1 / diag_limit
struct CriticalConstants {
    double p = 0;
    double c_p = 0;
    double d_p = 0;
    double ratio_r = 0;       // d_p / c_p
    double h2 = 0;
    double h_inf = 0;
    double diag_limit = 0;
    double a1_threshold = 0;
};

CriticalConstants constants_at(const PExponent& p);

// Oleszkiewicz ratio phi(p) = (3/pi) 2^{2/p} Gamma(1+1/p)^3 / Gamma(1+3/p);
// p0 solves phi = 1.
double oleszkiewicz_phi(double p);

// Critical exponents: the crossing of c_p and d_p (p0), the mode of phi (p1)
// and the minimum of c_p (p2).  All bracketed root solves to 1e-10.
double solve_p0();
double solve_p1();
double solve_p2();

struct SectionClosedForms {
    double a2_value = 0;      // A_{n,p}(a^(2)) = 2^{1/2 - 1/p}
    double diag_limit = 0;
};

SectionClosedForms section_closed_forms(const PExponent& p);

// Directions with a_1 in this interval are not covered by either bound
// technique; its length is below 1/(2p).
struct IpInterval {
    double lo = 0;            // 1/sqrt(2)
    double hi = 0;            // 2^{1/p}/sqrt(2)
    double length_bound = 0;  // 1/(2p)
};

IpInterval ip_interval(const PExponent& p);

} // namespace lpsect
