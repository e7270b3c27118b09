#pragma once

namespace lpsect {

// Euler-Mascheroni constant, 20 digits.
inline constexpr double euler_gamma = 0.57721566490153286061;

// log Gamma(x) for x > 0.  Argument-shift recurrence into x >= 12 followed by
// the Stirling series; coefficients documented in the source.
double lgamma_pos(double x);

// Gamma(x) for x > 0; relative error <= 1e-14 on [0.5, 200] as far as the
// result is representable in double (overflows above x ~ 171.6).
double gamma(double x);

// Digamma and trigamma on x > 0.
double digamma(double x);
double trigamma(double x);

// Exponential integral E1(x) = int_x^inf exp(-t)/t dt, x > 0.
double exp_integral_e1(double x);

} // namespace lpsect
