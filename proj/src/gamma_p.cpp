#include "lpsect/gamma_p.hpp"
#include "lpsect/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lpsect {

namespace {

constexpr double pi = 3.14159265358979323846;

double sinc(double s) { return s == 0 ? 1.0 : std::sin(s) / s; }

// truncation radius: exp(-R^p) == envelope_cut
double trunc_radius(double p, double cut) {
    return std::pow(-std::log(cut), 1.0 / p);
}

// Cell boundaries for the oscillatory integral over r in [0, R]: multiples
// of the half-period pi/s plus the cliff of exp(-r^p) near r = 1.
std::vector<double> r_cells(double p, double s, double R) {
    std::vector<double> cuts{0.0};
    if (s > 0) {
        const double half = pi / s;
        const size_t n = (size_t)(R / half);
        for (size_t k = 1; k <= n; ++k) cuts.push_back(k * half);
    }
    if (p >= 10) {
        for (double c : {1.0 - 6.0 / p, 1.0 - 3.0 / p, 1.0 - 1.0 / p, 1.0, 1.0 + 1.0 / p})
            if (c > 0 && c < R) cuts.push_back(c);
    }
    cuts.push_back(R);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

enum class Kernel { cos0, sin1, cos2 };

double transform_raw(const PExponent& px, double s, Kernel k, const QuadratureSpec& spec) {
    const double p = px.p;
    const double cut = std::min(spec.envelope_cut, 1e-18);
    const double R = trunc_radius(p, k == Kernel::cos0 ? cut : cut * 1e-3);
    const std::vector<double> cuts = r_cells(p, s, R);
    auto f = [&](double r) {
        const double damp = std::exp(-std::pow(r, p));
        switch (k) {
            case Kernel::cos0: return std::cos(s * r) * damp;
            case Kernel::sin1: return std::sin(s * r) * r * damp;
            default:           return std::cos(s * r) * r * r * damp;
        }
    };
    QuadResult q = integrate_cells(f, cuts, spec.abs_tol, 200);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(q.value));
    if (q.err > std::max(tol, 64 * (double)cuts.size() * 1e-17))
        throw QuadratureError("gamma_p quadrature did not converge", q.err);
    return q.value;
}

} // namespace

PExponent PExponent::make(double p) {
    if (!std::isfinite(p) || p < 1)
        throw std::domain_error("PExponent: p must be finite and >= 1");
    PExponent out;
    out.p = p;
    const double k = std::max(1.0, std::round(p / 2.0));
    out.dist_even = std::min(std::fabs(p - 2.0 * k),
                             std::min(std::fabs(p - 2.0 * (k - 1)), std::fabs(p - 2.0 * (k + 1))));
    out.dist_even = std::max(out.dist_even, 0.0);
    out.is_even_integer = out.dist_even == 0.0;
    return out;
}

double default_contour_switch(const PExponent& px) {
    const double p = px.p;
    if (p <= 10) return std::min(3.0 * p, 60.0);
    // the contour phase budget scales like (p^2 / s)^p; see gamma_p_tail
    return std::max(60.0, 2.6 * p * p * std::exp(-10.5 / p));
}

double gamma_p_direct(const PExponent& px, double s, const QuadratureSpec& spec) {
    if (s < 0) throw std::domain_error("gamma_p: s must be >= 0");
    if (s == 0) return 1.0;
    return transform_raw(px, s, Kernel::cos0, spec) / gamma(1.0 + 1.0 / px.p);
}

double gamma_p(const PExponent& px, double s, const QuadratureSpec& spec) {
    if (s < 0) throw std::domain_error("gamma_p: s must be >= 0");
    const double sw = spec.contour_switch_s > 0 ? spec.contour_switch_s
                                                : default_contour_switch(px);
    if (s > sw && !px.is_even_integer) return gamma_p_tail(px, s, spec);
    return gamma_p_direct(px, s, spec);
}

double gamma_p_deriv(const PExponent& px, double s, int order, const QuadratureSpec& spec) {
    if (s < 0) throw std::domain_error("gamma_p_deriv: s must be >= 0");
    if (order != 1 && order != 2) throw std::domain_error("gamma_p_deriv: order must be 1 or 2");
    const Kernel k = order == 1 ? Kernel::sin1 : Kernel::cos2;
    return -transform_raw(px, s, k, spec) / gamma(1.0 + 1.0 / px.p);
}

double tail_asymptote(const PExponent& px, double s) {
    if (px.is_even_integer)
        throw RegimeError("tail_asymptote: p is an even integer; use boyd_asymptotic");
    const double p = px.p;
    const double lg = lgamma_pos(p + 1.0) - lgamma_pos(1.0 + 1.0 / p) - (p + 1.0) * std::log(s);
    return std::sin(pi * p / 2.0) * std::exp(lg);
}

double tail_threshold(const PExponent& px) {
    if (px.is_even_integer)
        throw RegimeError("tail_threshold: p is an even integer");
    const double p = px.p;
    const double c = p >= 10 ? 5.0 / 8.0 : 2.0 / 3.0;
    return c * p * p * p / std::pow(std::fabs(std::sin(pi * p / 2.0)), 1.0 / p);
}

double gamma_p_tail(const PExponent& px, double s, const QuadratureSpec& spec) {
    if (px.is_even_integer)
        throw RegimeError("gamma_p_tail: p is an even integer; use boyd_asymptotic");
    const double p = px.p;
    if (s <= 0) throw std::domain_error("gamma_p_tail: s must be positive");

    // Gamma(1+1/p) s^{p+1} gamma_p(s)
    //   = Re int_0^inf p u^{p-1} exp(-u sin a) cos(u cos a - u^p / s^p) du,
    // a = pi/(2p): the r = u^p substituted rotated-contour integral.  The
    // envelope peaks at u_pk = (p-1)/sin a; everything is evaluated on the
    // log scale relative to that peak to avoid overflow.
    const double a = pi / (2.0 * p);
    const double sn = std::sin(a), cs = std::cos(a);
    const double u_pk = std::max((p - 1.0) / sn, 1.0);
    const double log_peak = std::log(p) + (p - 1.0) * std::log(u_pk) - u_pk * sn;

    // envelope drops 'drop' e-folds below the peak at the endpoints
    const double drop = std::log(1e22);
    auto log_env = [&](double u) { return std::log(p) + (p - 1.0) * std::log(u) - u * sn; };
    double u_hi = u_pk;
    while (log_env(u_hi) > log_peak - drop) u_hi *= 1.25;

    // phase phi(u) = u cos a - (u/s)^p s^0 * delta scaling; delta = s^{-p}
    auto dphase = [&](double u) {
        return cs - p * std::exp((p - 1.0) * std::log(u) - p * std::log(s));
    };
    const double cells_est = (u_hi * cs + std::exp(p * (std::log(u_hi) - std::log(s)))) / pi;
    if (!(cells_est < 40.0 * spec.max_subdivisions))
        throw QuadratureError("gamma_p_tail: oscillation budget exceeded at this (p, s)",
                              std::numeric_limits<double>::infinity());

    std::vector<double> cuts{0.0};
    double u = 0;
    const double max_step = u_hi / 64.0;
    while (u < u_hi) {
        const double step = std::min(max_step, pi / std::max(std::fabs(dphase(u)), 1e-3));
        u += step;
        cuts.push_back(std::min(u, u_hi));
    }

    auto f = [&](double uu) {
        if (uu <= 0) return 0.0;
        const double le = log_env(uu) - log_peak;
        if (le < -drop) return 0.0;
        const double phase = uu * cs - std::exp(p * (std::log(uu) - std::log(s)));
        return std::exp(le) * std::cos(phase);
    };
    QuadResult q = integrate_cells(f, cuts, 1e-13 * std::max(1.0, cells_est), 200);

    // gamma_p(s) = e^{log_peak} * integral / (Gamma(1+1/p) s^{p+1})
    const double log_scale = log_peak - lgamma_pos(1.0 + 1.0 / p) - (p + 1.0) * std::log(s);
    return q.value * std::exp(log_scale);
}

double boyd_asymptotic(const PExponent& px, double s) {
    if (!px.is_even_integer || px.p < 4)
        throw RegimeError("boyd_asymptotic: requires even integer p >= 4");
    const double p = px.p;
    const double w = std::pow(s / p, p / (p - 1.0));
    const double arg = (p - 1.0) * std::cos(pi / (2.0 * (p - 1.0))) * w
                       - pi / 4.0 * (p - 2.0) / (p - 1.0);
    return boyd_envelope(px, s) * std::cos(arg);
}

double boyd_envelope(const PExponent& px, double s) {
    const double p = px.p;
    if (p < 4 || s <= 0) throw std::domain_error("boyd_envelope: requires p >= 4, s > 0");
    const double w = std::pow(s / p, p / (p - 1.0));
    const double pref = std::sqrt(2.0 * pi / (p - 1.0))
                        * std::pow(p, -0.5 / (p - 1.0))
                        * std::pow(s, -(p / 2.0 - 1.0) / (p - 1.0));
    return pref * std::exp(-(p - 1.0) * std::sin(pi / (2.0 * (p - 1.0))) * w)
           / gamma(1.0 + 1.0 / p);
}

std::pair<double, double> spline_sinc_bound(const PExponent& px, double s) {
    if (px.p < 2 || s <= 0) throw std::domain_error("spline_sinc_bound: p >= 2, s > 0");
    return {sinc(s), 1.016 / px.p};
}

double spline_n_constant(double p) {
    if (p < 15) throw std::domain_error("spline_n_constant: p must be >= 15");
    if (p <= 26) return 8.62;
    if (p <= 175) return 8.003;
    return 7.857;
}

double alpha_p(const PExponent& px, double s) {
    const double y = 2.0 * s / px.p;
    return std::atan(5.0 * std::sin(y) / (14.0 + 5.0 * std::cos(y)));
}

double phi_p(const PExponent& px, double s) {
    if (px.p < 15) throw std::domain_error("phi_p: p must be >= 15");
    if (s <= 0) throw std::domain_error("phi_p: s must be positive");
    const double p = px.p;
    return (14.0 / 19.0 * std::sin(s) / s + 5.0 / 19.0 * std::sin((1.0 - 2.0 / p) * s) / s)
           * sinc(s / p);
}

double phi_p_phase_form(const PExponent& px, double s) {
    if (px.p < 15) throw std::domain_error("phi_p: p must be >= 15");
    if (s <= 0) throw std::domain_error("phi_p: s must be positive");
    const double p = px.p;
    const double y = 2.0 * s / p;
    const double amp = std::sqrt(221.0 + 140.0 * std::cos(y)) / 19.0;
    return amp * std::sin(s - alpha_p(px, s)) / s * sinc(s / p);
}

namespace {

// piecewise-linear spline k_p approximating exp(-r^p)
double k_spline(double p, double r) {
    if (r <= 1.0 - 3.0 / p) return 1.0;
    if (r < 1.0 - 1.0 / p) return 5.0 / 38.0 * p * (1.0 - r) + 23.0 / 38.0;
    if (r <= 1.0 + 1.0 / p) return 7.0 / 19.0 * p * (1.0 - r) + 7.0 / 19.0;
    return 0.0;
}

// integral of |f| on [a,b], splitting at scanned sign changes
template <class F>
double abs_integral(F&& f, double a, double b) {
    const int n = 200;
    std::vector<double> cuts{a};
    double prev = f(a);
    for (int i = 1; i <= n; ++i) {
        const double x = a + (b - a) * i / n;
        const double cur = f(x);
        if (prev * cur < 0)
            cuts.push_back(find_root(f, a + (b - a) * (i - 1) / n, x, 1e-14));
        prev = cur;
    }
    cuts.push_back(b);
    double total = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        QuadResult q = integrate_adaptive(f, cuts[i], cuts[i + 1], 1e-14, 0, 200);
        total += std::fabs(q.value);
    }
    return total;
}

double l_sub(double p, double x) {
    if (std::isinf(p)) return std::exp(-std::exp(-10.0 * (1.0 - x)));
    return std::exp(-std::pow(1.0 - 10.0 / p * (1.0 - x), p));
}

} // namespace

double spline_psi1(double p) {
    if (std::isinf(p))
        return euler_gamma - 3.0 + exp_integral_e1(std::exp(-3.0)) + exp_integral_e1(std::exp(1.0));
    auto one_minus = [&](double r) { return 1.0 - std::exp(-std::pow(r, p)); };
    auto damped = [&](double r) { return std::exp(-std::pow(r, p)); };
    QuadResult i1 = integrate_adaptive(one_minus, 0.0, 1.0 - 3.0 / p, 1e-14, 0, 400);
    QuadResult i4 = integrate_adaptive(damped, 1.0 + 1.0 / p, 1.0 + 60.0 / p, 1e-14, 0, 400);
    return p * (i1.value + i4.value);
}

double spline_psi2(double p) {
    auto f = [&](double r) { return std::exp(-std::pow(r, p)) - k_spline(p, r); };
    return p * (abs_integral(f, 1.0 - 3.0 / p, 1.0 - 1.0 / p)
                + abs_integral(f, 1.0 - 1.0 / p, 1.0 + 1.0 / p));
}

double spline_psi3(double p_hi, double p_lo) {
    auto f = [&](double x) { return l_sub(p_lo, x) - l_sub(p_hi, x); };
    QuadResult q = integrate_adaptive(f, 0.7, 1.1, 1e-14, 0, 400);
    return 10.0 * q.value;
}

double spline_l1_error(const PExponent& px) {
    const double p = px.p;
    if (p < 15) throw std::domain_error("spline_l1_error: p must be >= 15");
    return (spline_psi1(p) + spline_psi2(p)) / p;
}

double psi_p_lower(const PExponent& px, double s) {
    const double p = px.p;
    if (p < 15) throw std::domain_error("psi_p_lower: p must be >= 15");
    const bool win1 = s >= 3.255 && s <= 2.0 * pi;
    const bool win2 = s >= 6.501 && s <= 3.0 * pi;
    if (!win1 && !win2)
        throw std::domain_error("psi_p_lower: s outside validity windows");
    const double y = 2.0 * s / p;
    const double amp = std::sqrt(221.0 + 140.0 * std::cos(y)) / 19.0;
    const double m = std::min(std::fabs(std::sin(s - alpha_p(px, s))), std::fabs(std::sin(s)));
    return amp * m / s * sinc(s / p) - 1.0 / (spline_n_constant(p) * p);
}

BumpProfile bump_profile(const PExponent& px, double s_max, const QuadratureSpec& spec,
                         double scan_step) {
    if (px.p < 15) throw std::domain_error("bump_profile: p must be >= 15");
    if (s_max < 3.0 * pi) throw std::domain_error("bump_profile: s_max must be >= 3 pi");

    BumpProfile out;
    out.p = px.p;
    out.s_max = s_max;
    auto g = [&](double s) { return gamma_p_direct(px, s, spec); };

    const double xtol = std::max(spec.abs_tol, 1e-12);
    double s_prev = 0.5, f_prev = g(s_prev);
    for (double s = s_prev + scan_step; s <= s_max + 1e-9; s += scan_step) {
        const double f = g(s);
        if (f_prev * f < 0) out.zeros.push_back(find_root(g, s_prev, s, xtol));
        s_prev = s;
        f_prev = f;
    }
    // a gap of more than ~1.5 oscillation periods inside the sinc-like zone
    // means the scan stepped over a sign-change pair
    for (size_t i = 0; i + 1 < out.zeros.size(); ++i) {
        if (out.zeros[i + 1] < 0.9 * px.p && out.zeros[i + 1] - out.zeros[i] > 1.55 * pi)
            throw ResolutionError("bump_profile: zero scan too coarse near s = "
                                  + std::to_string(out.zeros[i]));
    }

    auto abs_g = [&](double s) { return std::fabs(g(s)); };
    for (size_t i = 0; i + 1 < out.zeros.size(); ++i) {
        auto [s_star, v] = golden_max(abs_g, out.zeros[i], out.zeros[i + 1], 1e-10);
        out.extrema.emplace_back(s_star, v);
    }

    for (const auto& [s_star, v] : out.extrema) {
        if (s_star >= 3.0) out.x1 = std::max(out.x1, v);
        if (s_star >= 2.0 * pi && s_star <= 3.0 * pi) out.x2 = std::max(out.x2, v);
    }
    return out;
}

} // namespace lpsect
