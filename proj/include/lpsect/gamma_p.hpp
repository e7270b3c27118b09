#pragma once

#include "lpsect/quadrature.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace lpsect {

// Validated exponent p with parity metadata.  dist_even is the distance from
// p to the even integers {2, 4, 6, ...}; it selects the tail regime (negative
// power decay off the even integers, quasi-exponential decay on them).
struct PExponent {
    double p = 2;
    double dist_even = 0;
    bool is_even_integer = false;

    static PExponent make(double p);
};

// Thrown when an evaluator is asked for a parity regime it does not serve
// (e.g. the rotated-contour tail at an even integer p).
class RegimeError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Thrown when a sign-change scan was too coarse to bracket every feature.
class ResolutionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Zeros and extrema of gamma_p on a window, plus the bump maxima
// x1 = max_{s>=3} |gamma_p| and x2 = max_{2pi<=s<=3pi} |gamma_p|.
struct BumpProfile {
    double p = 0;
    double s_max = 0;
    std::vector<double> zeros;
    std::vector<std::pair<double, double>> extrema;  // (s, |gamma_p(s)|)
    double x1 = 0;
    double x2 = 0;
};

// gamma_p(s) = Gamma(1+1/p)^{-1} int_0^inf cos(s r) exp(-r^p) dr.
// Period-split adaptive quadrature up to the contour switch; the rotated
// contour beyond it (p not an even integer).
double gamma_p(const PExponent& p, double s, const QuadratureSpec& spec = {});

// Same integral, never delegating to the tail evaluator.  The absolute error
// stays near machine noise for any s; the relative error degrades once the
// value sinks to the cancellation floor of the oscillatory sum.
double gamma_p_direct(const PExponent& p, double s, const QuadratureSpec& spec = {});

// d/ds (order 1) and d^2/ds^2 (order 2) via the sine/cosine kernels with
// weights r and r^2.
double gamma_p_deriv(const PExponent& p, double s, int order,
                     const QuadratureSpec& spec = {});

// Rotated-contour evaluation of gamma_p(s) for large s, p not even.
double gamma_p_tail(const PExponent& p, double s, const QuadratureSpec& spec = {});

// Leading tail term Gamma(p+1) sin(pi p/2) / (Gamma(1+1/p) s^{p+1}).
double tail_asymptote(const PExponent& p, double s);

// s beyond which the asymptote is within a factor 1/2: (2/3) p^3 /
// |sin(pi p/2)|^{1/p}, with 2/3 -> 5/8 for p >= 10.
double tail_threshold(const PExponent& p);

// Damped-cosine stretched-exponential expansion for even integer p >= 4.
// Diagnostic quality; no error bound.
double boyd_asymptotic(const PExponent& p, double s);

// Positive envelope of the same expansion (the cosine factor dropped).
// Defined for any p >= 4 as a mid-range decay model.
double boyd_envelope(const PExponent& p, double s);

// sinc approximation of Gamma(1+1/p) gamma_p(s): returns (sin(s)/s, 1.016/p).
std::pair<double, double> spline_sinc_bound(const PExponent& p, double s);

// Three-term spline transform Phi_p and its phase alpha_p (p >= 15).
double phi_p(const PExponent& p, double s);
double phi_p_phase_form(const PExponent& p, double s);
double alpha_p(const PExponent& p, double s);

// 1/N bound constant of the spline approximation, by p-range.
double spline_n_constant(double p);

// L1 distance between exp(-r^p) and the piecewise-linear spline k_p,
// numerically integrated; < 1/(N p) for p >= 15.
double spline_l1_error(const PExponent& p);

// Components of the same distance used to track it across p-ranges:
// psi1 = p * (outer pieces), psi2 = p * (inner pieces), psi3(p, q) =
// 10 * int_J (l_q - l_p).  p may be +infinity.
double spline_psi1(double p);
double spline_psi2(double p);
double spline_psi3(double p_hi, double p_lo);

// Certified lower bound Psi_p(s) for Gamma(1+1/p) |gamma_p(s)|, valid on
// [3.255, 2pi] and [6.501, 3pi], increasing in p.
double psi_p_lower(const PExponent& p, double s);

// Zero/extremum structure by sign-change scan (default step pi/8) with
// bisection refinement and golden-section extrema.
BumpProfile bump_profile(const PExponent& p, double s_max,
                         const QuadratureSpec& spec = {},
                         double scan_step = 0.39269908169872414);

// Switch point between the direct and the rotated-contour evaluators.
double default_contour_switch(const PExponent& p);

} // namespace lpsect
