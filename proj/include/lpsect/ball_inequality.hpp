#pragma once

#include "lpsect/constants.hpp"
#include "lpsect/gamma_p.hpp"
#include "lpsect/quadrature.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lpsect {

enum class CheckOutcome { ok, indeterminate, fail };

// Monotone sampled distribution function with certified lower/upper
// envelopes at each grid point.  The tail model describes the s > s_max
// contribution: a power-law bracket off the even integers, a conservative
// exponential envelope on them.
struct DistributionCurve {
    std::vector<double> grid;      // ascending x in (0,1)
    std::vector<double> value_lo;
    std::vector<double> value_hi;
    std::string tail_model;        // "none" | "power-bracket" | "exp-envelope"
    bool envelope_limited = false;
    double s_max = 0;
};

// Result of h_p evaluation: value plus the certified error bound actually
// achieved.  degraded is set when the requested tolerance was not reachable
// (even integer p, envelope-limited tail).
struct HpResult {
    double value = 0;
    double err_bound = 0;
    bool degraded = false;
};

// Full Nazarov-Podkorytov verification record for one exponent.
struct NpReport {
    double p = 0;
    char comparison = 'a';                   // 'a': vs h_p(2); 'b': vs h_p(inf)
    bool sign_pattern_ok = false;
    std::optional<double> crossing_x0;
    double ratio_min = 0;                    // min over [1/20, x1] of the crossing-sum ratio
    std::vector<std::pair<double, double>> hp_curve;  // (u, h_p(u))
    bool conclusion_ok = false;
    bool envelope_limited = false;
    double x1 = 0, x2 = 0;
    double x_min = 0;                        // 1/(210 p)
    std::string small_x_regime;              // reported analytic regime below x_min
    CheckOutcome outcome = CheckOutcome::fail;
    std::vector<std::string> notes;
};

// h_p(u) = sqrt(u) int_0^inf |gamma_p(s)|^u ds, u >= 2.
HpResult h_p(const PExponent& p, double u, const QuadratureSpec& spec = {});

// h_p'(2) = (1/8) sqrt(pi/d_p) + sqrt(2) int gamma_p^2 log|gamma_p|.
HpResult h_p_deriv_at_2(const PExponent& p, const QuadratureSpec& spec = {});

// Gaussian comparator distribution function sqrt(log(1/x)/coeff).
double distribution_G(double x, double coeff);

// Distribution function of |gamma_p| at the requested x values.
DistributionCurve distribution_F(const PExponent& p, const std::vector<double>& xs,
                                 const QuadratureSpec& spec = {});

// Exact-envelope Gaussian comparator as a DistributionCurve on a grid.
DistributionCurve gaussian_curve(double coeff, const std::vector<double>& xs);

struct FSincValue {
    double numeric = 0;       // super-level measure of |sin s / s|
    double lower_bound = 0;   // (2/pi)/x - 27/16, applicable for x < 1/(2 pi)
    bool bound_applicable = false;
};

FSincValue f_sinc_distribution(double x);

// Generic NP monotonicity verifier: checks that
//   h(u) = (1/(u x0^u)) int (g^u - f^u) = (1/(u x0^u)) int u x^{u-1} (G-F) dx
// is nondecreasing along u_grid within the certified envelopes.
CheckOutcome np_monotone_check(const DistributionCurve& f_dist,
                               const DistributionCurve& g_dist, double x0,
                               const std::vector<double>& u_grid);

// The full pipeline for one exponent (p >= 20): majorant window checks,
// crossing-sum ratio on [1/20, x1], F > G below 1/20 down to 1/(210 p),
// crossing location, and the h_p conclusion on a u grid.
NpReport np_full_check(const PExponent& p, const QuadratureSpec& spec = {},
                       const std::vector<double>& u_grid = {2, 3, 4, 8, 16, 64});

// Closed-form margin whose positivity certifies F > G in the intermediate
// range; regime selects the coefficient pair.
enum class PsiRegime { coarse, refined_175, refined_26, refined_20 };

double psi_A_margin(double p, double A, PsiRegime regime);

// The crossing-sum ratio of the NP argument at one level x:
//   weight * sum_{|gamma_p(s)|=x} |gamma_p| / |gamma_p'| * sqrt(log(1/|gamma_p|))
// with weight 2 sqrt(d_p) (p >= p0) or 2 sqrt(c_p) (p < p0).
double np_crossing_ratio(const PExponent& p, const BumpProfile& bumps, double x,
                         const QuadratureSpec& spec = {});

// Closed-form lower bounds for the same ratio at the landmark levels,
// x = 1/8, 1/10, 1/20 built from the derivative bounds alone.
double np_ratio_landmark_bound(double x);

} // namespace lpsect
