#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lpsect {

// Tolerances and truncation policy shared by all integral evaluators.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double envelope_cut = 1e-18;   // integrand-envelope level treated as zero
    double contour_switch_s = 0;   // 0: pick per exponent, see default_contour_switch
    int max_subdivisions = 20000;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& msg, double achieved)
        : std::runtime_error(msg + " (achieved error bound " + std::to_string(achieved) + ")"),
          achieved_bound(achieved) {}
    double achieved_bound;
};

struct QuadResult {
    double value = 0;
    double err = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1]; column 0 node, 1 Gauss weight,
// 2 Kronrod weight.
inline constexpr double gk15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

template <class F>
QuadResult gk15_panel(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = gk15[0][1] * f0;
    double k15 = gk15[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * gk15[i][0];
        const double s = f(mid + dx) + f(mid - dx);
        g7 += gk15[i][1] * s;
        k15 += gk15[i][2] * s;
    }
    g7 *= h;
    k15 *= h;
    const double diff = std::fabs(g7 - k15);
    // standard QUADPACK-style error model, clipped to the raw difference
    double err = diff * std::sqrt(diff) * 200.0;
    if (err > diff) err = diff;
    return {k15, err};
}

} // namespace detail

// Adaptive Gauss-Kronrod on [a,b].  Splits the worst panel until the summed
// error estimate drops below max(abs_tol, rel_tol*|value|) or the panel
// budget is exhausted; in the latter case the partial result is still
// returned (callers decide whether the achieved bound is acceptable).
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                              double rel_tol = 0.0, int max_panels = 2000) {
    struct Panel {
        double a, b, value, err;
    };
    QuadResult first = detail::gk15_panel(f, a, b);
    std::vector<Panel> heap{{a, b, first.value, first.err}};
    heap.reserve(64);
    double total = first.value, toterr = first.err;
    while ((int)heap.size() < max_panels) {
        if (toterr <= abs_tol || toterr <= rel_tol * std::fabs(total)) break;
        size_t worst = 0;
        for (size_t i = 1; i < heap.size(); ++i)
            if (heap[i].err > heap[worst].err) worst = i;
        Panel p = heap[worst];
        if (p.err <= 0 || p.b - p.a < 1e-15 * (std::fabs(p.a) + 1.0)) break;
        const double m = 0.5 * (p.a + p.b);
        QuadResult left = detail::gk15_panel(f, p.a, m);
        QuadResult right = detail::gk15_panel(f, m, p.b);
        total += left.value + right.value - p.value;
        toterr += left.err + right.err - p.err;
        heap[worst] = {p.a, m, left.value, left.err};
        heap.push_back({m, p.b, right.value, right.err});
    }
    // recompute sums pairwise to shed accumulated cancellation
    double v = 0, e = 0;
    for (const Panel& p : heap) {
        v += p.value;
        e += p.err;
    }
    return {v, e};
}

// Integrate over a strictly increasing list of cell boundaries.
template <class F>
QuadResult integrate_cells(F&& f, const std::vector<double>& cuts, double abs_tol,
                           int max_panels_per_cell = 60) {
    QuadResult out;
    if (cuts.size() < 2) return out;
    const double cell_tol = abs_tol / (double)(cuts.size() - 1);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        QuadResult q = integrate_adaptive(f, cuts[i], cuts[i + 1], cell_tol, 0.0,
                                          max_panels_per_cell);
        out.value += q.value;
        out.err += q.err;
    }
    return out;
}

// Bracketing bisection/secant hybrid.  f(a) and f(b) must have opposite sign.
template <class F>
double find_root(F&& f, double a, double b, double xtol = 1e-12) {
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0))
        throw std::invalid_argument("find_root: endpoints do not bracket");
    for (int it = 0; it < 200 && b - a > xtol; ++it) {
        double m;
        // secant proposal, fall back to bisection when it leaves the bracket
        if (fb != fa) {
            m = b - fb * (b - a) / (fb - fa);
            if (!(m > a + 0.1 * xtol && m < b - 0.1 * xtol)) m = 0.5 * (a + b);
        } else {
            m = 0.5 * (a + b);
        }
        // alternate with plain bisection so the bracket provably shrinks
        if (it % 2) m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0) return m;
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    return 0.5 * (a + b);
}

// Golden-section maximum of f on [a,b]; returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double xtol = 1e-10) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

} // namespace lpsect
