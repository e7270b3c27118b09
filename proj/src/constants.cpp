#include "lpsect/constants.hpp"
#include "lpsect/special_fn.hpp"

#include <cmath>

namespace lpsect {

namespace {

constexpr double pi = 3.14159265358979323846;

// bisection-secant hybrid on a fixed bracket, 1e-10 bracket width
template <class F>
double solve_bracketed(F&& f, double a, double b) {
    return find_root(f, a, b, 1e-10);
}

} // namespace

CriticalConstants constants_at(const PExponent& px) {
    const double p = px.p;
    CriticalConstants out;
    out.p = p;
    const double g1 = gamma(1.0 + 1.0 / p);
    const double g3 = gamma(1.0 + 3.0 / p);
    out.c_p = g3 / (6.0 * g1);
    const double t = std::pow(2.0, 1.0 / p) * g1;
    out.d_p = t * t / (2.0 * pi);
    out.ratio_r = out.d_p / out.c_p;
    out.h2 = 0.5 * std::sqrt(pi / out.d_p);
    out.h_inf = 0.5 * std::sqrt(pi / out.c_p);
    out.diag_limit = std::sqrt(6.0 / pi * g1 * g1 * g1 / g3);
    out.a1_threshold = 1.0 / out.diag_limit;
    return out;
}

double oleszkiewicz_phi(double p) {
    const double g1 = gamma(1.0 + 1.0 / p);
    return 3.0 / pi * std::pow(2.0, 2.0 / p) * g1 * g1 * g1 / gamma(1.0 + 3.0 / p);
}

double solve_p0() {
    return solve_bracketed([](double p) { return oleszkiewicz_phi(p) - 1.0; }, 26.0, 27.0);
}

double solve_p1() {
    auto f = [](double p) {
        return 2.0 * std::log(2.0) + 3.0 * (digamma(1.0 + 1.0 / p) - digamma(1.0 + 3.0 / p));
    };
    return solve_bracketed(f, 2.0, 5.0);
}

double solve_p2() {
    auto f = [](double p) {
        return digamma(1.0 + 1.0 / p) - 3.0 * digamma(1.0 + 3.0 / p);
    };
    return solve_bracketed(f, 9.0, 10.0);
}

SectionClosedForms section_closed_forms(const PExponent& px) {
    SectionClosedForms out;
    out.a2_value = std::pow(2.0, 0.5 - 1.0 / px.p);
    out.diag_limit = constants_at(px).diag_limit;
    return out;
}

IpInterval ip_interval(const PExponent& px) {
    IpInterval out;
    out.lo = 1.0 / std::sqrt(2.0);
    out.hi = std::pow(2.0, 1.0 / px.p) / std::sqrt(2.0);
    out.length_bound = 0.5 / px.p;
    return out;
}

} // namespace lpsect
