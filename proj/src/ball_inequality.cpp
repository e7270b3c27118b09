#include "lpsect/ball_inequality.hpp"
#include "lpsect/detail/decay_envelope.hpp"
#include "lpsect/special_fn.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <limits>

namespace lpsect {

namespace {

using detail::DecayEnvelope;

constexpr double pi = 3.14159265358979323846;
constexpr double inf = std::numeric_limits<double>::infinity();

QuadratureSpec inner_spec(const QuadratureSpec& spec) {
    QuadratureSpec s = spec;
    s.abs_tol = std::min(spec.abs_tol, 1e-12);
    s.rel_tol = std::min(spec.rel_tol, 1e-9);
    return s;
}

// zeros of gamma_p on (0.5, s_hi] by sign scan, for integration cell splits
std::vector<double> scan_zeros(const PExponent& px, double s_hi, const QuadratureSpec& spec) {
    std::vector<double> zs;
    auto g = [&](double s) { return gamma_p_direct(px, s, spec); };
    const double step = pi / 8.0;
    double s_prev = 0.5, f_prev = g(s_prev);
    for (double s = s_prev + step; s <= s_hi + 1e-9; s += step) {
        const double f = g(s);
        if (f_prev * f < 0) zs.push_back(find_root(g, s_prev, s, 1e-11));
        s_prev = s;
        f_prev = f;
    }
    return zs;
}

std::vector<double> integration_cuts(const std::vector<double>& zeros, double s_max) {
    std::vector<double> cuts{0.0};
    for (int k = 1; k * pi < s_max; ++k) cuts.push_back(k * pi);
    for (double z : zeros)
        if (z < s_max) cuts.push_back(z);
    cuts.push_back(s_max);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

// sum cells independently (parallel-safe), accumulate in index order
template <class F>
QuadResult sum_cells(F&& f, const std::vector<double>& cuts, double abs_tol) {
    const int n = (int)cuts.size() - 1;
    std::vector<QuadResult> part(n);
    const double cell_tol = abs_tol / std::max(1, n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < n; ++i)
        part[i] = integrate_adaptive(f, cuts[i], cuts[i + 1], cell_tol, 0.0, 200);
    QuadResult out;
    for (const QuadResult& q : part) {
        out.value += q.value;
        out.err += q.err;
    }
    return out;
}

} // namespace

HpResult h_p(const PExponent& px, double u, const QuadratureSpec& spec) {
    if (!(u >= 2.0)) throw std::domain_error("h_p: u must be >= 2");
    const double p = px.p;
    const QuadratureSpec ispec = inner_spec(spec);
    const CriticalConstants cc = constants_at(px);
    const double scale = std::max(cc.h2, cc.h_inf);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * scale);

    HpResult out;

    if (u > 100.0) {
        // mass concentrates at the origin: integrate |gamma_p(t/sqrt(u))|^u
        const double su = std::sqrt(u);
        auto f = [&](double t) {
            return std::pow(std::fabs(gamma_p_direct(px, t / su, ispec)), u);
        };
        const double t_hi = std::min(3.3 * su, std::sqrt(46.0 / cc.c_p) + 3.0);
        QuadResult q = integrate_adaptive(f, 0.0, t_hi, 0.1 * tol, 0, 4000);
        // remaining bumps are below x1^u <= 0.234^u: negligible for u > 100
        const double bump_tail = std::pow(0.234, u) * std::max(1.0, 40.0 * p);
        out.value = q.value + 0.0;
        out.err_bound = q.err + bump_tail;
        out.degraded = out.err_bound > tol;
        return out;
    }

    const DecayEnvelope env(px);
    const double tail_tol = 0.45 * tol / std::sqrt(u);
    const double s_cap = 2500.0;
    double s_max = 4.0 * pi;
    double tail_hi = env.integral_bound(u, s_max);
    while (tail_hi > tail_tol && s_max < s_cap) {
        s_max = std::min(s_max * 1.3, s_cap);
        tail_hi = env.integral_bound(u, s_max);
    }
    if (!px.is_even_integer && tail_hi > tail_tol && env.s_star < s_cap
        && s_max < env.s_star) {
        // the envelope alone cannot certify the tolerance: push into the
        // bracketed power regime
        s_max = env.s_star;
        tail_hi = env.integral_bound(u, s_max);
    }

    const std::vector<double> zeros = scan_zeros(px, s_max, ispec);
    const std::vector<double> cuts = integration_cuts(zeros, s_max);
    auto f = [&](double s) {
        return std::pow(std::fabs(gamma_p_direct(px, s, ispec)), u);
    };
    QuadResult q = sum_cells(f, cuts, 0.4 * tol / std::sqrt(u));

    double tail_mid = 0, tail_half = tail_hi;
    if (!px.is_even_integer && s_max >= env.s_star) {
        // bracket tail_asymptote * [1/2, 3/2]
        const double e = u * (px.p + 1.0) - 1.0;
        const double base = std::exp(u * (std::log(env.power_c) - std::log(1.5))
                                     - e * std::log(s_max)) / e;
        const double lo = std::pow(0.5, u) * base, hi = std::pow(1.5, u) * base;
        tail_mid = 0.5 * (lo + hi);
        tail_half = 0.5 * (hi - lo);
    }

    out.value = std::sqrt(u) * (q.value + tail_mid);
    out.err_bound = std::sqrt(u) * (q.err + tail_half);
    out.degraded = out.err_bound > tol;
    return out;
}

HpResult h_p_deriv_at_2(const PExponent& px, const QuadratureSpec& spec) {
    if (!(px.p > 2.0)) throw std::domain_error("h_p_deriv_at_2: p must be > 2");
    const QuadratureSpec ispec = inner_spec(spec);
    const CriticalConstants cc = constants_at(px);
    const double tol = std::max(spec.abs_tol, 1e-7);

    const DecayEnvelope env(px);
    const double s_cap = 1500.0;
    double s_max = 4.0 * pi;
    auto log_tail = [&](double S) {
        // int B^2 (1 + |log B|) as a bound for |int gamma^2 log|gamma||
        const double b = env(S);
        return env.integral_bound(2.0, S) * (1.0 + std::fabs(std::log(std::max(b, 1e-300))));
    };
    while (log_tail(s_max) > 0.2 * tol && s_max < s_cap) s_max = std::min(s_max * 1.3, s_cap);
    if (!px.is_even_integer && log_tail(s_max) > 0.2 * tol && env.s_star < s_cap)
        s_max = std::max(s_max, env.s_star);

    const std::vector<double> zeros = scan_zeros(px, s_max, ispec);
    const std::vector<double> cuts = integration_cuts(zeros, s_max);
    auto f = [&](double s) {
        const double g = std::fabs(gamma_p_direct(px, s, ispec));
        return g > 0 ? g * g * std::log(g) : 0.0;
    };
    QuadResult q = sum_cells(f, cuts, 0.2 * tol);

    HpResult out;
    out.value = std::sqrt(pi / cc.d_p) / 8.0 + std::sqrt(2.0) * q.value;
    out.err_bound = std::sqrt(2.0) * (q.err + log_tail(s_max));
    out.degraded = out.err_bound > tol;
    return out;
}

double distribution_G(double x, double coeff) {
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("distribution_G: x must lie in (0,1)");
    if (!(coeff > 0.0)) throw std::domain_error("distribution_G: coeff must be positive");
    return std::sqrt(std::log(1.0 / x) / coeff);
}

DistributionCurve gaussian_curve(double coeff, const std::vector<double>& xs) {
    DistributionCurve out;
    out.grid = xs;
    std::sort(out.grid.begin(), out.grid.end());
    out.tail_model = "none";
    for (double x : out.grid) {
        const double g = distribution_G(x, coeff);
        out.value_lo.push_back(g);
        out.value_hi.push_back(g);
    }
    return out;
}

namespace {

struct Crossing {
    double s;
    double slope;  // |d gamma/ds| estimate near the crossing
};

// all solutions of |gamma_p(s)| = x on (0, bumps.s_max], using the monotone
// arcs between zeros/extrema
std::vector<Crossing> level_crossings(const PExponent& px, const BumpProfile& bumps,
                                      double x, const QuadratureSpec& spec) {
    std::vector<Crossing> out;
    auto g = [&](double s) { return gamma_p_direct(px, s, spec); };
    auto bisect = [&](double a, double b, double fa_sign) {
        // root of |g| - x on a monotone arc; fa_sign = sign of |g(a)| - x
        auto f = [&](double s) { return std::fabs(g(s)) - x; };
        double lo = a, hi = b;
        for (int it = 0; it < 60 && hi - lo > 1e-11; ++it) {
            const double m = 0.5 * (lo + hi);
            if ((f(m) > 0) == (fa_sign > 0))
                lo = m;
            else
                hi = m;
        }
        const double s = 0.5 * (lo + hi);
        const double h = std::max(1e-5, 4.0 * (hi - lo));
        const double slope = std::fabs(std::fabs(g(s + h)) - std::fabs(g(s - h))) / (2.0 * h);
        return Crossing{s, std::max(slope, 1e-12)};
    };

    if (x >= 1.0 || bumps.zeros.empty()) return out;
    // initial monotone descent from gamma_p(0) = 1 to the first zero
    out.push_back(bisect(1e-9, bumps.zeros.front(), +1.0));
    // bump arcs
    for (size_t i = 0; i < bumps.extrema.size(); ++i) {
        const auto& [s_star, v] = bumps.extrema[i];
        if (v <= x + 1e-12) continue;
        out.push_back(bisect(bumps.zeros[i], s_star, -1.0));
        out.push_back(bisect(s_star, bumps.zeros[i + 1], +1.0));
    }
    return out;
}

// shared bump profile tailored to a lowest level x_min
struct FContext {
    PExponent px;
    BumpProfile bumps;
    DecayEnvelope env;
    double s_max;
    bool envelope_limited;
};

FContext make_f_context(const PExponent& px, double x_min, const QuadratureSpec& spec) {
    DecayEnvelope env(px);
    const double s_cap = 2500.0;
    double s_max = 4.0 * pi;
    while (env(s_max) > 0.5 * x_min && s_max < s_cap) s_max = std::min(s_max * 1.25, s_cap);
    s_max = std::ceil(s_max / pi) * pi;
    const QuadratureSpec ispec = inner_spec(spec);
    BumpProfile bumps = bump_profile(px, std::max(s_max, 4.0 * pi), ispec);
    const bool env_limited = px.is_even_integer || env.s_star > s_max;
    return {px, std::move(bumps), env, s_max, env_limited};
}

} // namespace

DistributionCurve distribution_F(const PExponent& px, const std::vector<double>& xs,
                                 const QuadratureSpec& spec) {
    if (px.p < 15) throw std::domain_error("distribution_F: p must be >= 15");
    for (double x : xs)
        if (!(x > 0)) throw std::domain_error("distribution_F: levels must be positive");

    DistributionCurve out;
    out.grid = xs;
    std::sort(out.grid.begin(), out.grid.end());
    out.value_lo.assign(out.grid.size(), 0.0);
    out.value_hi.assign(out.grid.size(), 0.0);

    double x_min = 1.0;
    for (double x : out.grid) x_min = std::min(x_min, x);
    FContext ctx = make_f_context(px, x_min, spec);
    out.s_max = ctx.s_max;
    out.envelope_limited = ctx.envelope_limited;
    out.tail_model = px.is_even_integer ? "exp-envelope" : "power-bracket";

    const QuadratureSpec ispec = inner_spec(spec);
    const double g_tol = std::max(spec.abs_tol, 1e-12) + 1e-13;

    const int n = (int)out.grid.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < n; ++i) {
        const double x = out.grid[i];
        if (x >= 1.0) {
            out.value_lo[i] = out.value_hi[i] = 0.0;
            continue;
        }
        const std::vector<Crossing> cs = level_crossings(px, ctx.bumps, x, ispec);
        double measure = 0, width = 0;
        // crossings alternate enter/exit of the super-level set starting at 0
        // (gamma_p(0) = 1 > x): [0, s_1), then (s_2k, s_2k+1) pairs
        std::vector<double> ss;
        for (const Crossing& c : cs) ss.push_back(c.s);
        std::sort(ss.begin(), ss.end());
        if (!ss.empty()) {
            measure += ss[0];
            for (size_t k = 1; k + 1 < ss.size(); k += 2) measure += ss[k + 1] - ss[k];
        }
        for (const Crossing& c : cs) width += g_tol / c.slope + 1e-11;

        double tail_lo = 0, tail_hi = 0;
        if (px.is_even_integer) {
            // conservative doubled envelope; nothing certified below
            double s = ctx.s_max;
            if (ctx.env(s) > x) {
                double hi = s;
                while (ctx.env(hi) > x && hi < 1e7) hi *= 1.3;
                tail_hi = find_root([&](double t) { return ctx.env(t) - x; }, s, hi, 1e-6) - s;
            }
        } else {
            const double c_hi = ctx.env.power_c;            // 1.5 * asymptote coeff
            const double c_lo = ctx.env.power_c / 3.0;      // 0.5 * asymptote coeff
            const double reach_hi = std::exp(std::log(c_hi / x) / (px.p + 1.0));
            const double reach_lo = std::exp(std::log(c_lo / x) / (px.p + 1.0));
            const double start = std::max(ctx.s_max, ctx.env.s_star);
            tail_hi = std::max(0.0, reach_hi - start);
            tail_lo = std::max(0.0, reach_lo - start);
        }
        out.value_lo[i] = std::max(0.0, measure - width + tail_lo);
        out.value_hi[i] = measure + width + tail_hi;
    }
    return out;
}

FSincValue f_sinc_distribution(double x) {
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("f_sinc_distribution: x in (0,1)");
    FSincValue out;
    out.lower_bound = 2.0 / (pi * x) - 27.0 / 16.0;
    out.bound_applicable = x < 1.0 / (2.0 * pi);

    auto f = [&](double s) { return std::fabs(std::sin(s)) / s - x; };
    // first arch: |sin s|/s decreases from 1
    out.numeric = find_root(f, 1e-12, pi - 1e-12, 1e-11);
    // later arches contribute while the arch maximum ~1/((j+1/2) pi) clears x
    for (int j = 1; j * pi * x <= 1.0; ++j) {
        const double a = j * pi, b = (j + 1) * pi;
        double s_pk = (j + 0.5) * pi - 1.0 / ((j + 0.5) * pi);
        if (f(s_pk) <= 0) {
            auto [s_g, v] = golden_max([&](double s) { return std::fabs(std::sin(s)) / s; },
                                       a, b, 1e-9);
            if (v <= x) continue;
            s_pk = s_g;
        }
        const double s_lo = find_root(f, a + 1e-12, s_pk, 1e-11);
        const double s_hi = find_root(f, s_pk, b - 1e-12, 1e-11);
        out.numeric += s_hi - s_lo;
    }
    return out;
}

namespace {

// monotone nonincreasing interpolation bounds on a sampled curve
double curve_hi_at(const DistributionCurve& c, double x) {
    if (c.grid.empty()) return inf;
    if (x < c.grid.front()) return c.value_hi.front() * (c.grid.front() / x);
    auto it = std::upper_bound(c.grid.begin(), c.grid.end(), x);
    if (it == c.grid.begin()) return c.value_hi.front();
    return c.value_hi[(size_t)(it - c.grid.begin()) - 1];
}

double curve_lo_at(const DistributionCurve& c, double x) {
    if (c.grid.empty()) return 0.0;
    auto it = std::lower_bound(c.grid.begin(), c.grid.end(), x);
    if (it == c.grid.end()) return 0.0;
    return c.value_lo[(size_t)(it - c.grid.begin())];
}

} // namespace

namespace {

// knot value when x is a sample point with a zero-width envelope; curves are
// trusted and linearly interpolated between such knots, otherwise enclosed
// by monotone step bounds
bool exact_knot(const DistributionCurve& c, double x, double* value) {
    auto it = std::lower_bound(c.grid.begin(), c.grid.end(), x);
    if (it == c.grid.end() || *it != x) return false;
    const size_t i = (size_t)(it - c.grid.begin());
    if (c.value_lo[i] != c.value_hi[i]) return false;
    *value = c.value_lo[i];
    return true;
}

// bounds for int_l^r u x^{u-1} C(x) dx for one curve
std::pair<double, double> segment_integral(const DistributionCurve& c, double l, double r,
                                           double u) {
    double vl = 0, vr = 0;
    const double w = std::pow(r, u) - std::pow(l, u);
    if (exact_knot(c, l, &vl) && exact_knot(c, r, &vr)) {
        const double b = (vr - vl) / (r - l);
        const double a = vl - b * l;
        const double i = a * w
                         + b * u / (u + 1.0) * (std::pow(r, u + 1.0) - std::pow(l, u + 1.0));
        return {i, i};
    }
    return {curve_lo_at(c, r) * w, curve_hi_at(c, l) * w};
}

} // namespace

CheckOutcome np_monotone_check(const DistributionCurve& f_dist,
                               const DistributionCurve& g_dist, double x0,
                               const std::vector<double>& u_grid) {
    if (!(x0 > 0 && x0 < 1)) throw std::domain_error("np_monotone_check: x0 in (0,1)");
    // identical samples: g^u - f^u vanishes identically
    if (f_dist.grid == g_dist.grid && f_dist.value_lo == g_dist.value_lo
        && f_dist.value_hi == g_dist.value_hi)
        return CheckOutcome::ok;
    std::vector<double> grid = f_dist.grid;
    grid.insert(grid.end(), g_dist.grid.begin(), g_dist.grid.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.empty()) throw std::domain_error("np_monotone_check: empty curves");

    auto h_bounds = [&](double u) {
        double lo = 0, hi = 0;
        // interior segments
        for (size_t i = 0; i + 1 < grid.size(); ++i) {
            const auto gi = segment_integral(g_dist, grid[i], grid[i + 1], u);
            const auto fi = segment_integral(f_dist, grid[i], grid[i + 1], u);
            lo += gi.first - fi.second;
            hi += gi.second - fi.first;
        }
        // below the grid: 1/x growth cap on both curves
        const double x_lo = grid.front();
        const double edge = u / (u - 1.0) * std::pow(x_lo, u)
                            * (curve_hi_at(f_dist, x_lo) + curve_hi_at(g_dist, x_lo));
        lo -= edge;
        hi += edge;
        // above the grid
        const double x_hi = grid.back();
        const double top = (1.0 - std::pow(x_hi, u))
                           * std::max(curve_hi_at(g_dist, x_hi), curve_hi_at(f_dist, x_hi));
        lo -= top;
        hi += top;
        const double denom = u * std::pow(x0, u);
        return std::pair<double, double>{lo / denom, hi / denom};
    };

    CheckOutcome out = CheckOutcome::ok;
    std::pair<double, double> prev{-inf, -inf};
    for (double u : u_grid) {
        if (!(u >= 2.0)) throw std::domain_error("np_monotone_check: u must be >= 2");
        const auto cur = h_bounds(u);
        if (cur.second < prev.first) return CheckOutcome::fail;
        if (cur.first < prev.second) out = CheckOutcome::indeterminate;
        prev = cur;
    }
    return out;
}

double np_crossing_ratio(const PExponent& px, const BumpProfile& bumps, double x,
                         const QuadratureSpec& spec) {
    const CriticalConstants cc = constants_at(px);
    const double weight = 2.0 * std::sqrt(std::min(cc.c_p, cc.d_p));
    const QuadratureSpec ispec = inner_spec(spec);
    const std::vector<Crossing> cs = level_crossings(px, bumps, x, ispec);
    double sum = 0;
    for (const Crossing& c : cs) {
        const double d = std::fabs(gamma_p_deriv(px, c.s, 1, ispec));
        sum += x / std::max(d, 1e-14);
    }
    return weight * sum * std::sqrt(std::log(1.0 / x));
}

double np_ratio_landmark_bound(double x) {
    // derivative bounds l1 (s < pi) and l2 (s >= pi) at p = 15, the worst case
    const double g15 = gamma(1.0 + 1.0 / 15.0);
    auto l1 = [&](double s) { return 1.064 / g15 * (1.0 / s + 1.0 / 15.0); };
    auto l2 = [&](double s) { return 1.016 / g15 * (1.0 / s + 1.0 / 15.0); };
    const double v = x * std::sqrt(std::log(1.0 / x));
    if (x >= 1.0 / 8.0) return 0.796 * (1.0 / l1(2.48) + 2.0 / l2(3.55)) * v;
    if (x >= 1.0 / 10.0)
        return 0.796 * (1.0 / l1(2.75) + 1.0 / l2(3.45) + 1.0 / l2(5.39)) * v;
    if (x >= 1.0 / 20.0)
        return 0.796 * (1.0 / l1(2.966) + 1.0 / l2(3.27) + 3.0 / l2(5.57)) * v;
    throw std::domain_error("np_ratio_landmark_bound: x below 1/20");
}

double psi_A_margin(double p, double A, PsiRegime regime) {
    if (!(A >= 1.0)) throw std::domain_error("psi_A_margin: A must be >= 1");
    if (!(p >= 15.0)) throw std::domain_error("psi_A_margin: p must be >= 15");
    double base;
    switch (regime) {
        case PsiRegime::coarse:      base = 5.0 / 8.0 * p - 27.0 / 16.0; break;
        case PsiRegime::refined_175: base = 1.5384 * p - 2.13; break;
        case PsiRegime::refined_26:  base = 1.5568 * p - 2.40; break;
        case PsiRegime::refined_20:  base = 1.6265 * p - 2.478; break;
        default: throw std::domain_error("psi_A_margin: unknown regime");
    }
    return base - 3.5528 * std::sqrt((p + 1.0) * std::log(A * p) + 0.365);
}

NpReport np_full_check(const PExponent& px, const QuadratureSpec& spec,
                       const std::vector<double>& u_grid) {
    const double p = px.p;
    if (p < 20) throw std::domain_error("np_full_check: p must be >= 20");

    NpReport rep;
    rep.p = p;
    const CriticalConstants cc = constants_at(px);
    rep.comparison = cc.d_p <= cc.c_p ? 'a' : 'b';
    const double coeff = std::min(cc.c_p, cc.d_p);
    rep.x_min = 1.0 / (210.0 * p);

    const QuadratureSpec ispec = inner_spec(spec);
    FContext ctx = make_f_context(px, rep.x_min, spec);
    rep.envelope_limited = ctx.envelope_limited;
    rep.x1 = ctx.bumps.x1;
    rep.x2 = ctx.bumps.x2;

    bool ok = true;
    bool indeterminate = false;

    // (a) F < G on [x1, 1): the Gaussian majorant on [0, 3] plus the
    // [3, 3.3] window bound, then |gamma_p| <= x1 beyond.
    {
        bool major_ok = true;
        for (int k = 1; k <= 300; ++k) {
            const double s = 0.01 * k;
            const double g = gamma_p_direct(px, s, ispec);
            if (g > std::exp(-cc.c_p * s * s) + 1e-10 || g < -1e-10) {
                major_ok = false;
                break;
            }
        }
        auto abs_g = [&](double s) { return std::fabs(gamma_p_direct(px, s, ispec)); };
        const double win_max = golden_max(abs_g, 3.0, 3.3, 1e-8).second;
        const double g33 = std::exp(-coeff * 3.3 * 3.3);
        if (!(major_ok && win_max < g33 && g33 < rep.x1)) {
            ok = false;
            rep.notes.push_back("high-x window check failed");
        }
    }

    // (b) crossing-sum ratio > 1 on [1/20, x1)
    {
        const int n = 400;
        const double x_lo = 1.0 / 20.0, x_hi = rep.x1 * 0.995;
        double rmin = inf;
        std::vector<double> grid;
        for (int i = 0; i < n; ++i)
            grid.push_back(x_lo * std::pow(x_hi / x_lo, i / (double)(n - 1)));
        grid.push_back(1.0 / 10.0);
        grid.push_back(1.0 / 8.0);
        std::vector<double> ratios(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int i = 0; i < (int)grid.size(); ++i)
            ratios[i] = grid[i] < rep.x1 ? np_crossing_ratio(px, ctx.bumps, grid[i], spec) : inf;
        for (double r : ratios) rmin = std::min(rmin, r);
        rep.ratio_min = rmin;
        if (!(rmin > 1.0)) {
            ok = false;
            rep.notes.push_back("ratio test failed");
        }
    }

    // (c) F > G on (x_min, 1/20] via a descending staircase of certified
    // bounds: F_lo at the previous (larger) level against G at the current.
    std::vector<double> xs;
    {
        const int n = 400;
        for (int i = 0; i <= n; ++i)
            xs.push_back(0.05 * std::pow(rep.x_min / 0.05, i / (double)n));
        DistributionCurve f_curve = distribution_F(px, xs, spec);
        std::sort(xs.begin(), xs.end(), std::greater<>());
        for (size_t k = 1; k < xs.size(); ++k) {
            const double f_lo = curve_lo_at(f_curve, xs[k - 1]);
            const double g_hi = distribution_G(xs[k], coeff);
            if (!(f_lo > g_hi)) {
                indeterminate = true;
                rep.notes.push_back("F-G staircase indeterminate near x = "
                                    + std::to_string(xs[k]));
                break;
            }
        }
    }

    // crossing x0 of G - F inside (1/20, x1)
    {
        auto diff = [&](double x) {
            DistributionCurve c = distribution_F(px, {x}, spec);
            const double f_mid = 0.5 * (c.value_lo[0] + c.value_hi[0]);
            return distribution_G(x, coeff) - f_mid;
        };
        double a = 1.0 / 20.0, b = rep.x1 * 0.995;
        if (diff(a) < 0 && diff(b) > 0) {
            rep.crossing_x0 = find_root(diff, a, b, 1e-6);
        } else {
            ok = false;
            rep.notes.push_back("no sign change of G-F located in (1/20, x1)");
        }
    }

    rep.sign_pattern_ok = ok;

    // analytic regime below x_min, reported rather than computed
    if (px.is_even_integer) {
        rep.small_x_regime = "inapplicable: p is an even integer (envelope-limited tail)";
    } else {
        const PsiRegime reg = p > 175 ? PsiRegime::refined_175
                              : p > 26.5 ? PsiRegime::refined_26
                                         : PsiRegime::refined_20;
        const double A = std::max(1.0, std::min(2.0, 1.0 / std::max(px.dist_even, 1e-12)));
        const double margin = psi_A_margin(p, A, reg);
        rep.small_x_regime = "psi_A margin " + std::to_string(margin) + " at A = "
                             + std::to_string(A);
    }

    // h_p conclusion on the u grid
    const double bound = rep.comparison == 'a' ? cc.h2 : cc.h_inf;
    bool hp_ok = true;
    for (double u : u_grid) {
        HpResult h = h_p(px, u, spec);
        rep.hp_curve.emplace_back(u, h.value);
        if (!(h.value <= bound + 1e-6)) hp_ok = false;
    }
    if (!hp_ok) {
        ok = false;
        rep.notes.push_back("h_p(u) exceeded the comparison bound");
    }

    rep.conclusion_ok = ok && hp_ok && rep.crossing_x0.has_value() && !indeterminate;
    rep.outcome = !ok ? CheckOutcome::fail
                      : (indeterminate ? CheckOutcome::indeterminate : CheckOutcome::ok);
    return rep;
}

} // namespace lpsect
