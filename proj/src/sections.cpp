#include "lpsect/sections.hpp"
#include "lpsect/constants.hpp"
#include "lpsect/detail/decay_envelope.hpp"
#include "lpsect/rng.hpp"
#include "lpsect/special_fn.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lpsect {

namespace {

constexpr double pi = 3.14159265358979323846;

QuadratureSpec inner_spec(const QuadratureSpec& spec) {
    QuadratureSpec s = spec;
    s.abs_tol = std::min(spec.abs_tol, 1e-12);
    s.rel_tol = std::min(spec.rel_tol, 1e-9);
    return s;
}

// upper bound for int_S^inf prod_j env(a_j s) ds for the envelope of one
// shared exponent; left-endpoint sums on a log-spaced walk plus an analytic
// remainder, exactly as the single-factor case
double product_tail_bound(const detail::DecayEnvelope& env,
                          const std::vector<double>& a, double S) {
    const double p = env.px.p;
    const double a_min = a.back();
    double total = 0;
    double s = S;
    const double t_stop = std::max({40.0 * p / a_min, 10.0 * S,
                                    std::min(env.s_star, 1e9) * 1.2 / a_min});
    auto B = [&](double t) {
        double b = 1.0;
        for (double aj : a) b *= env(aj * t);
        return b;
    };
    double b = B(s);
    for (int k = 0; k < 4000 && s < t_stop; ++k) {
        const double s2 = s * 1.06;
        total += b * (s2 - s);
        s = s2;
        b = B(s);
        if (b * s < 1e-320) break;
    }
    const size_t m = a.size();
    if (!env.px.is_even_integer && a_min * s >= env.s_star) {
        // all factors inside the power bracket
        double log_c = 0;
        for (double aj : a) log_c += std::log(env.power_c) - (p + 1.0) * std::log(aj);
        const double e = (double)m * (p + 1.0) - 1.0;
        total += std::exp(log_c - e * std::log(s)) / e;
    } else if (p >= 3.5) {
        double rate = 0;
        for (double aj : a) rate += aj * env.env_rate(aj * s);
        total += b / std::max(rate, 1e-300);
    } else if (p == 2.0) {
        total += b / (0.5 * s);  // product of gaussians: rate >= s/2
    } else {
        total += b * s;  // plateau guard
    }
    return total;
}

// recursive adaptive Simpson, depth-limited
template <class F>
double adaptive_simpson(F&& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
         + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double simpson(F&& f, double a, double b, double tol, int max_depth = 16) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double norm_p(const std::vector<double>& v, double p) {
    double s = 0;
    for (double x : v) s += std::pow(std::fabs(x), p);
    return std::pow(s, 1.0 / p);
}

SectionEstimate mc_impl(const PExponent& px, const Direction& a, uint64_t samples,
                        uint64_t seed, bool parallel) {
    if (samples < 10000)
        throw std::domain_error("section_mc: need at least 1e4 samples");
    const double p = px.p;
    const size_t n = a.dim();
    const CounterRng rng{seed};
    const double shape = (p + 1.0) / p;

    constexpr uint64_t block = 4096;
    const uint64_t nblocks = (samples + block - 1) / block;
    std::vector<double> bsum(nblocks, 0.0), bsum2(nblocks, 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int64_t bi = 0; bi < (int64_t)nblocks; ++bi) {
        double s1 = 0, s2 = 0;
        const uint64_t lo = (uint64_t)bi * block;
        const uint64_t hi = std::min(lo + block, samples);
        for (uint64_t i = lo; i < hi; ++i) {
            uint64_t draw = 0;
            double vx = 0, vy = 0, vz = 0;
            for (size_t j = 0; j < n; ++j) {
                // xi_j: normalized 3-d gaussian; R_j = T^{1/p}, T ~ Gamma(shape)
                NormalPair g1 = normal_pair(rng, i, draw);
                draw += 2;
                NormalPair g2 = normal_pair(rng, i, draw);
                draw += 2;
                double norm = std::sqrt(g1.a * g1.a + g1.b * g1.b + g2.a * g2.a);
                while (norm < 1e-8) {
                    g1 = normal_pair(rng, i, draw);
                    draw += 2;
                    g2 = normal_pair(rng, i, draw);
                    draw += 2;
                    norm = std::sqrt(g1.a * g1.a + g1.b * g1.b + g2.a * g2.a);
                }
                const double t = gamma_variate(rng, i, &draw, shape);
                const double r = std::pow(t, 1.0 / p);
                const double w = a.coords[j] * r / norm;
                vx += w * g1.a;
                vy += w * g1.b;
                vz += w * g2.a;
            }
            const double inv = 1.0 / std::sqrt(vx * vx + vy * vy + vz * vz);
            s1 += inv;
            s2 += inv * inv;
        }
        bsum[bi] = s1;
        bsum2[bi] = s2;
    }

    double s1 = 0, s2 = 0;
    for (uint64_t bi = 0; bi < nblocks; ++bi) {
        s1 += bsum[bi];
        s2 += bsum2[bi];
    }
    const double nn = (double)samples;
    const double mean = s1 / nn;
    const double var = std::max(0.0, (s2 - nn * mean * mean) / (nn - 1.0));
    const double g = gamma(1.0 + 1.0 / p);

    SectionEstimate out;
    out.method = SectionMethod::mc;
    out.value = g * mean;
    out.err = g * std::sqrt(var / nn);
    out.samples = samples;
    out.seed = seed;
    return out;
}

} // namespace

Direction Direction::make(std::vector<double> coords) {
    if (coords.size() < 2)
        throw std::invalid_argument("Direction: need at least 2 coordinates");
    double norm2 = 0;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (!(coords[i] >= 0))
            throw std::invalid_argument("Direction: coordinates must be >= 0");
        if (i > 0 && coords[i] > coords[i - 1] + 1e-14)
            throw std::invalid_argument("Direction: coordinates must be nonincreasing");
        norm2 += coords[i] * coords[i];
    }
    if (std::fabs(norm2 - 1.0) > 1e-12)
        throw std::invalid_argument("Direction: coordinates must have unit norm");
    Direction d;
    d.coords = std::move(coords);
    return d;
}

Direction Direction::k_diagonal(int k, int n) {
    if (k < 1 || n < 2 || k > n)
        throw std::invalid_argument("Direction: need 1 <= k <= n, n >= 2");
    std::vector<double> c(n, 0.0);
    for (int i = 0; i < k; ++i) c[i] = 1.0 / std::sqrt((double)k);
    return make(std::move(c));
}

SectionEstimate section_polya(const PExponent& px, const Direction& a,
                              const QuadratureSpec& spec) {
    std::vector<double> coords;
    for (double c : a.coords)
        if (c > 0) coords.push_back(c);
    if (coords.empty()) throw std::invalid_argument("section_polya: zero direction");

    SectionEstimate out;
    out.method = SectionMethod::polya;

    const double p = px.p;
    const double g1 = gamma(1.0 + 1.0 / p);
    if (coords.size() == 1) {
        // coordinate hyperplane: the section is B_p^{n-1} itself
        out.value = 1.0;
        out.err = 0.0;
        out.note = "coordinate hyperplane, analytic";
        return out;
    }

    const detail::DecayEnvelope env(px);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * 1.0);
    const double freq = std::accumulate(coords.begin(), coords.end(), 0.0);
    const double s_cap = 6.0e4 / freq;

    double s_max = 8.0 * pi / freq;
    double tail = product_tail_bound(env, coords, s_max);
    while (tail > 0.2 * tol && s_max < s_cap) {
        s_max *= 1.3;
        tail = product_tail_bound(env, coords, s_max);
    }
    out.degraded = tail > 0.2 * tol;
    if (out.degraded) out.note = "tail envelope limited by subdivision cap";
    out.trunc_radius = s_max;

    const QuadratureSpec ispec = inner_spec(spec);
    auto f = [&](double s) {
        double prod = 1.0;
        for (double c : coords) prod *= gamma_p_direct(px, c * s, ispec);
        return prod;
    };
    std::vector<double> cuts{0.0};
    const double half = pi / freq;
    for (double s = half; s < s_max; s += half) cuts.push_back(s);
    cuts.push_back(s_max);

    const int ncell = (int)cuts.size() - 1;
    std::vector<QuadResult> part(ncell);
    const double cell_tol = 0.4 * tol / std::max(1, ncell);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < ncell; ++i)
        part[i] = integrate_adaptive(f, cuts[i], cuts[i + 1], cell_tol, 0.0, 200);
    QuadResult q;
    for (const QuadResult& r : part) {
        q.value += r.value;
        q.err += r.err;
    }

    out.value = g1 * 2.0 / pi * q.value;
    out.err = g1 * 2.0 / pi * (q.err + tail) + 1e-14 * ncell;
    return out;
}

SectionEstimate section_mc(const PExponent& px, const Direction& a, uint64_t samples,
                           uint64_t seed) {
    return mc_impl(px, a, samples, seed, true);
}

SectionEstimate section_mc_serial(const PExponent& px, const Direction& a,
                                  uint64_t samples, uint64_t seed) {
    return mc_impl(px, a, samples, seed, false);
}

SectionEstimate section_brute(const PExponent& px, const Direction& a) {
    const double p = px.p;
    SectionEstimate out;
    out.method = SectionMethod::brute;

    if (a.dim() == 2) {
        const std::vector<double> b{a.coords[1], a.coords[0]};  // |perp| components
        out.value = 1.0 / norm_p(b, p);
        out.err = 1e-15;
        return out;
    }
    if (a.dim() != 3)
        throw std::invalid_argument("section_brute: only n in {2, 3} supported");

    // orthonormal basis of a^perp
    const std::vector<double>& n = a.coords;
    size_t least = 0;
    for (size_t i = 1; i < 3; ++i)
        if (std::fabs(n[i]) < std::fabs(n[least])) least = i;
    std::vector<double> e(3, 0.0);
    e[least] = 1.0;
    const double dot = e[0] * n[0] + e[1] * n[1] + e[2] * n[2];
    std::vector<double> u(3), v(3);
    for (int i = 0; i < 3; ++i) u[i] = e[i] - dot * n[i];
    const double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    for (int i = 0; i < 3; ++i) u[i] /= un;
    v[0] = n[1] * u[2] - n[2] * u[1];
    v[1] = n[2] * u[0] - n[0] * u[2];
    v[2] = n[0] * u[1] - n[1] * u[0];

    auto r2 = [&](double th) {
        const double ct = std::cos(th), st = std::sin(th);
        std::vector<double> w{ct * u[0] + st * v[0], ct * u[1] + st * v[1],
                              ct * u[2] + st * v[2]};
        const double r = 1.0 / norm_p(w, p);
        return r * r;
    };
    // area = 1/2 int_0^{2pi} r^2 = int_0^pi r^2 by central symmetry
    const double area = simpson(r2, 0.0, pi, 1e-10, 16);
    const double g1 = gamma(1.0 + 1.0 / p);
    const double vol2 = 4.0 * g1 * g1 / gamma(1.0 + 2.0 / p);
    out.value = area / vol2;
    out.err = 1e-8;
    return out;
}

double cylinder_bound(const Direction& a) {
    if (!(a.coords[0] > 0)) throw std::invalid_argument("cylinder_bound: a_1 must be > 0");
    return 1.0 / a.coords[0];
}

CandidateReport compare_candidates(const PExponent& px, int n, const QuadratureSpec& spec) {
    if (n < 2 || n > 12)
        throw std::domain_error("compare_candidates: need 2 <= n <= 12");
    CandidateReport rep;
    rep.p = px.p;
    rep.n = n;
    const SectionClosedForms cf = section_closed_forms(px);
    rep.diag_limit = cf.diag_limit;
    for (int k = 1; k <= n; ++k) {
        CandidateRow row;
        row.k = k;
        if (k == 1) {
            row.value = 1.0;
            row.err = 0.0;
        } else {
            SectionEstimate est = section_polya(px, Direction::k_diagonal(k, std::max(k, 2)), spec);
            row.value = est.value;
            row.err = est.err;
        }
        if (k == 2) row.closed_form = cf.a2_value;
        rep.rows.push_back(row);
    }
    std::sort(rep.rows.begin(), rep.rows.end(),
              [](const CandidateRow& a, const CandidateRow& b) { return a.value > b.value; });
    return rep;
}

double radial_cdf(const PExponent& px, double x) {
    if (x <= 0) return 0.0;
    const double p = px.p;
    auto dens = [&](double t) { return std::pow(t, p) * std::exp(-std::pow(t, p)); };
    std::vector<double> cuts{0.0};
    for (double c : {1.0 - 3.0 / p, 1.0 - 1.0 / p, 1.0, 1.0 + 1.0 / p, 1.0 + 3.0 / p})
        if (c > 0 && c < x) cuts.push_back(c);
    cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    QuadResult q = integrate_cells(dens, cuts, 1e-13, 200);
    return q.value * p / gamma(1.0 + 1.0 / p);
}

} // namespace lpsect
