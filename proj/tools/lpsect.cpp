#include "lpsect/ball_inequality.hpp"
#include "lpsect/constants.hpp"
#include "lpsect/io.hpp"
#include "lpsect/sections.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace lpsect;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_indeterminate = 3;

void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

struct Output {
    std::string format = "csv";  // csv | json
    std::string path;            // empty: stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        f << text;
    }
    bool json_mode() const { return format == "json"; }
};

// "lo:hi:count", a single number, or a comma list
std::vector<double> parse_range(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double lo, hi;
        int count;
        char c1, c2;
        std::istringstream is(s);
        if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1)
            throw CLI::ValidationError("range", "expected lo:hi:count");
        for (int i = 0; i < count; ++i)
            out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        return out;
    }
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw CLI::ValidationError("range", "empty range");
    return out;
}

Direction parse_direction(const std::string& spec, int n) {
    if (spec == "diag") return Direction::k_diagonal(n, n);
    if (spec.rfind("k=", 0) == 0) {
        const int k = std::stoi(spec.substr(2));
        return Direction::k_diagonal(k, n);
    }
    std::vector<double> coords;
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) coords.push_back(std::stod(tok));
    return Direction::make(std::move(coords));
}

std::string fmt_table(const Output& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    if (out.json_mode()) {
        json arr = json::array();
        for (const auto& r : rows) {
            json obj;
            for (size_t i = 0; i < header.size() && i < r.size(); ++i) {
                bool numeric = false;
                try {
                    size_t pos = 0;
                    const double v = std::stod(r[i], &pos);
                    if (pos == r[i].size()) {
                        obj[header[i]] = v;
                        numeric = true;
                    }
                } catch (...) {
                }
                if (!numeric) obj[header[i]] = r[i];
            }
            arr.push_back(obj);
        }
        return arr.dump(2) + "\n";
    }
    std::string text = csv_row(header);
    for (const auto& r : rows) text += csv_row(r);
    return text;
}

struct ReproRow {
    std::string quantity;
    double expected;
    double computed;
    double tol;        // for near: |computed - expected| <= tol; ignored for above
    bool above = false;  // computed > expected
};

std::string fmt_repro(const Output& out, const std::vector<ReproRow>& rows, bool* all_pass) {
    std::vector<std::vector<std::string>> cells;
    *all_pass = true;
    for (const ReproRow& r : rows) {
        const bool pass = r.above ? r.computed > r.expected
                                  : std::fabs(r.computed - r.expected) <= r.tol;
        *all_pass = *all_pass && pass;
        cells.push_back({r.quantity, csv_num(r.expected), csv_num(r.computed),
                         r.above ? "exceeds" : csv_num(r.tol), pass ? "pass" : "fail"});
    }
    return fmt_table(out, {"quantity", "reference_value", "computed_value", "tolerance", "status"},
                     cells);
}

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("LPSECT_THREADS")) set_threads(std::atoi(env));

    CLI::App app{"hyperplane sections of l_p^n balls: gamma_p, h_p, NP checks, sections"};
    app.set_config("--config");

    Output out;
    QuadratureSpec spec;
    spec.rel_tol = 1e-8;
    spec.abs_tol = 1e-9;
    bool strict = false;

    app.add_option("--format", out.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", out.path, "output path (default: stdout)");
    app.add_option("--rel-tol", spec.rel_tol, "relative quadrature tolerance")
        ->capture_default_str();
    app.add_option("--abs-tol", spec.abs_tol, "absolute quadrature tolerance")
        ->capture_default_str();
    app.add_flag("--strict", strict, "exit 3 on degraded or indeterminate results");
    app.add_option("--threads", "worker threads (default: LPSECT_THREADS or all)")
        ->each([](const std::string& v) { set_threads(std::stoi(v)); });

    bool degraded_seen = false;
    bool indeterminate_seen = false;

    // ---- constants -------------------------------------------------------
    double c_p = 26.265;
    CLI::App* cmd_constants =
        app.add_subcommand("constants", "closed-form constants and critical exponents");
    cmd_constants->add_option("--p", c_p, "exponent p")->capture_default_str();
    cmd_constants->callback([&] {
        const CriticalConstants cc = constants_at(PExponent::make(c_p));
        json j = cc;
        j["p0"] = solve_p0();
        j["p1"] = solve_p1();
        j["p2"] = solve_p2();
        if (out.json_mode()) {
            out.write(j.dump(2) + "\n");
        } else {
            std::vector<std::string> keys, vals;
            for (auto& [k, v] : j.items()) {
                keys.push_back(k);
                vals.push_back(csv_num(v.get<double>()));
            }
            out.write(csv_row(keys) + csv_row(vals));
        }
    });

    // ---- gamma -----------------------------------------------------------
    CLI::App* cmd_gamma = app.add_subcommand("gamma", "evaluate gamma_p and its structure");
    double g_p = 15.0;
    std::string g_range = "0:10:41";
    int g_order = 0;
    double g_smax = 12.566370614359172;
    CLI::App* g_eval = cmd_gamma->add_subcommand("eval", "gamma_p on an s-range");
    g_eval->add_option("--p", g_p, "exponent")->required();
    g_eval->add_option("--s", g_range, "s value, list, or lo:hi:count")->capture_default_str();
    g_eval->add_option("--order", g_order, "derivative order 0, 1 or 2")->check(CLI::Range(0, 2));
    g_eval->callback([&] {
        const PExponent px = PExponent::make(g_p);
        std::vector<std::vector<std::string>> rows;
        for (double s : parse_range(g_range)) {
            const double v =
                g_order == 0 ? gamma_p(px, s, spec) : gamma_p_deriv(px, s, g_order, spec);
            rows.push_back({csv_num(s), csv_num(v)});
        }
        out.write(fmt_table(out, {"s", g_order == 0 ? "gamma_p" : "gamma_p_deriv"}, rows));
    });
    CLI::App* g_zeros = cmd_gamma->add_subcommand("zeros", "real zeros up to --s-max");
    g_zeros->add_option("--p", g_p, "exponent")->required();
    g_zeros->add_option("--s-max", g_smax, "scan limit")->capture_default_str();
    g_zeros->callback([&] {
        const BumpProfile b = bump_profile(PExponent::make(g_p), g_smax, spec);
        std::vector<std::vector<std::string>> rows;
        for (double z : b.zeros) rows.push_back({csv_num(z)});
        out.write(fmt_table(out, {"zero"}, rows));
    });
    CLI::App* g_bumps = cmd_gamma->add_subcommand("bumps", "zero/extremum profile");
    g_bumps->add_option("--p", g_p, "exponent")->required();
    g_bumps->add_option("--s-max", g_smax, "scan limit")->capture_default_str();
    g_bumps->callback([&] {
        const BumpProfile b = bump_profile(PExponent::make(g_p), g_smax, spec);
        if (out.json_mode()) {
            json j = b;
            out.write(j.dump(2) + "\n");
            return;
        }
        std::vector<std::vector<std::string>> rows;
        for (const auto& [s, v] : b.extrema)
            rows.push_back({csv_num(s), csv_num(v), csv_num(b.x1), csv_num(b.x2)});
        out.write(fmt_table(out, {"extremum_s", "abs_value", "x1", "x2"}, rows));
    });

    // ---- hp ---------------------------------------------------------------
    CLI::App* cmd_hp = app.add_subcommand("hp", "Ball-type integral function h_p");
    double hp_p = 30.0;
    std::string hp_range = "2";
    CLI::App* hp_eval = cmd_hp->add_subcommand("eval", "h_p at one or more u");
    hp_eval->add_option("--p", hp_p, "exponent")->required();
    hp_eval->add_option("--u", hp_range, "u value, list, or lo:hi:count")->capture_default_str();
    auto run_hp = [&] {
        const PExponent px = PExponent::make(hp_p);
        const CriticalConstants cc = constants_at(px);
        std::vector<std::vector<std::string>> rows;
        for (double u : parse_range(hp_range)) {
            const HpResult h = h_p(px, u, spec);
            degraded_seen = degraded_seen || h.degraded;
            rows.push_back({csv_num(u), csv_num(h.value), csv_num(h.err_bound),
                            h.degraded ? "degraded" : "full", csv_num(cc.h2),
                            csv_num(cc.h_inf)});
        }
        out.write(fmt_table(out, {"u", "h_p", "err_bound", "precision", "h2", "h_inf"}, rows));
    };
    hp_eval->callback(run_hp);
    CLI::App* hp_sweep = cmd_hp->add_subcommand("sweep", "h_p over a u-grid");
    hp_sweep->add_option("--p", hp_p, "exponent")->required();
    hp_sweep->add_option("--u", hp_range, "u range lo:hi:count")->required();
    hp_sweep->callback(run_hp);
    CLI::App* hp_d2 = cmd_hp->add_subcommand("deriv2", "h_p'(2)");
    hp_d2->add_option("--p", hp_p, "exponent")->required();
    hp_d2->callback([&] {
        const HpResult d = h_p_deriv_at_2(PExponent::make(hp_p), spec);
        degraded_seen = degraded_seen || d.degraded;
        out.write(fmt_table(out, {"p", "hp_deriv_at_2", "err_bound"},
                            {{csv_num(hp_p), csv_num(d.value), csv_num(d.err_bound)}}));
    });

    // ---- np ---------------------------------------------------------------
    CLI::App* cmd_np = app.add_subcommand("np", "distribution-comparison pipeline");
    double np_p = 30.0;
    CLI::App* np_check = cmd_np->add_subcommand("check", "run the full verification");
    np_check->add_option("--p", np_p, "exponent (>= 20)")->required();
    np_check->callback([&] {
        const NpReport rep = np_full_check(PExponent::make(np_p), spec);
        indeterminate_seen = indeterminate_seen || rep.outcome != CheckOutcome::ok;
        if (out.json_mode()) {
            json j = rep;
            out.write(j.dump(2) + "\n");
            return;
        }
        std::vector<std::vector<std::string>> rows;
        for (const auto& [u, h] : rep.hp_curve)
            rows.push_back({csv_num(rep.p), std::string(1, rep.comparison),
                            rep.conclusion_ok ? "ok" : "not-ok",
                            rep.crossing_x0 ? csv_num(*rep.crossing_x0) : "none",
                            csv_num(rep.ratio_min), csv_num(u), csv_num(h)});
        out.write(fmt_table(
            out, {"p", "case", "conclusion", "crossing_x0", "ratio_min", "u", "h_p"}, rows));
    });

    // ---- fsinc -------------------------------------------------------------
    CLI::App* cmd_fsinc = app.add_subcommand("fsinc", "distribution function of |sin s / s|");
    std::string fs_range = "0.01,0.05,0.1";
    cmd_fsinc->add_option("--x", fs_range, "levels: value, list, or lo:hi:count")
        ->capture_default_str();
    cmd_fsinc->callback([&] {
        std::vector<std::vector<std::string>> rows;
        for (double x : parse_range(fs_range)) {
            const FSincValue v = f_sinc_distribution(x);
            rows.push_back({csv_num(x), csv_num(v.numeric), csv_num(v.lower_bound),
                            v.bound_applicable ? "yes" : "no"});
        }
        out.write(fmt_table(out, {"x", "numeric", "lower_bound", "bound_applicable"}, rows));
    });

    // ---- section ------------------------------------------------------------
    CLI::App* cmd_section = app.add_subcommand("section", "normalized section function");
    double sec_p = 6.0;
    int sec_n = 3;
    std::string sec_a = "diag";
    std::string sec_method = "polya";
    uint64_t sec_samples = 1000000;
    uint64_t sec_seed = 1;
    CLI::App* sec_eval = cmd_section->add_subcommand("eval", "A_{n,p}(a) by one method");
    sec_eval->add_option("--p", sec_p, "exponent")->required();
    sec_eval->add_option("--n", sec_n, "dimension")->capture_default_str();
    sec_eval->add_option("--a", sec_a, "direction: diag, k=K, or a comma list")
        ->capture_default_str();
    sec_eval->add_option("--method", sec_method, "polya, mc or brute")
        ->check(CLI::IsMember({"polya", "mc", "brute"}));
    sec_eval->add_option("--samples", sec_samples, "MC sample count")->capture_default_str();
    sec_eval->add_option("--seed", sec_seed, "MC seed")->capture_default_str();
    auto emit_estimate = [&](const SectionEstimate& e) {
        degraded_seen = degraded_seen || e.degraded;
        if (out.json_mode()) {
            json j = e;
            out.write(j.dump(2) + "\n");
            return;
        }
        const char* m = e.method == SectionMethod::polya ? "polya"
                        : e.method == SectionMethod::mc  ? "mc"
                                                         : "brute";
        out.write(fmt_table(out, {"value", "method", "err", "samples", "seed", "degraded"},
                            {{csv_num(e.value), m, csv_num(e.err), std::to_string(e.samples),
                              std::to_string(e.seed), e.degraded ? "yes" : "no"}}));
    };
    sec_eval->callback([&] {
        const PExponent px = PExponent::make(sec_p);
        const Direction a = parse_direction(sec_a, sec_n);
        SectionEstimate e;
        if (sec_method == "polya")
            e = section_polya(px, a, spec);
        else if (sec_method == "brute")
            e = section_brute(px, a);
        else
            e = section_mc(px, a, sec_samples, sec_seed);
        emit_estimate(e);
    });
    CLI::App* sec_mc = cmd_section->add_subcommand("mc", "Monte Carlo estimate");
    sec_mc->add_option("--p", sec_p, "exponent")->required();
    sec_mc->add_option("--n", sec_n, "dimension")->capture_default_str();
    sec_mc->add_option("--a", sec_a, "direction")->capture_default_str();
    sec_mc->add_option("--samples", sec_samples, "sample count")->capture_default_str();
    sec_mc->add_option("--seed", sec_seed, "seed")->capture_default_str();
    sec_mc->callback([&] {
        emit_estimate(section_mc(PExponent::make(sec_p), parse_direction(sec_a, sec_n),
                                 sec_samples, sec_seed));
    });
    CLI::App* sec_cmp = cmd_section->add_subcommand("compare", "rank the a^(k) candidates");
    sec_cmp->add_option("--p", sec_p, "exponent")->required();
    sec_cmp->add_option("--n", sec_n, "dimension")->capture_default_str();
    sec_cmp->callback([&] {
        const CandidateReport rep = compare_candidates(PExponent::make(sec_p), sec_n, spec);
        std::vector<std::vector<std::string>> rows;
        for (const CandidateRow& r : rep.rows)
            rows.push_back({std::to_string(r.k), csv_num(r.value), csv_num(r.err),
                            r.closed_form != 0 ? csv_num(r.closed_form) : "",
                            csv_num(rep.diag_limit)});
        out.write(fmt_table(out, {"k", "value", "err", "closed_form", "diag_limit"}, rows));
    });

    // ---- reproduce ------------------------------------------------------------
    CLI::App* cmd_repro =
        app.add_subcommand("reproduce", "tables of quoted values vs computed");
    std::string repro_id;
    double repro_p = 30.0;
    const std::vector<std::string> repro_ids{"critical-exponents", "conjecture-sections",
                                             "np-margins",        "psi-a-margins",
                                             "spline-psi",        "sinc-landmarks"};
    cmd_repro->add_option("id", repro_id, "report id")->required();
    cmd_repro->add_option("--p", repro_p, "exponent for np-margins")->capture_default_str();
    cmd_repro->callback([&] {
        std::vector<ReproRow> rows;
        if (repro_id == "critical-exponents") {
            rows = {{"p0", 26.265, solve_p0(), 5e-3},
                    {"p1", 4.192, solve_p1(), 5e-3},
                    {"p2", 9.1147, solve_p2(), 1e-3},
                    {"c_at_p2", 0.15715, constants_at(PExponent::make(solve_p2())).c_p, 1e-4},
                    {"c_at_p0", 0.1609, constants_at(PExponent::make(solve_p0())).c_p, 5e-4},
                    {"c_at_15", 0.1584, constants_at(PExponent::make(15.0)).c_p, 5e-4}};
        } else if (repro_id == "conjecture-sections") {
            const auto v36 =
                section_polya(PExponent::make(6.0), Direction::k_diagonal(3, 3), spec);
            const auto v48 =
                section_polya(PExponent::make(8.0), Direction::k_diagonal(4, 4), spec);
            const auto v48_3 =
                section_polya(PExponent::make(8.0), Direction::k_diagonal(3, 4), spec);
            rows = {{"A_{3,6}(a2) = 2^(1/3)", 1.260, std::pow(2.0, 1.0 / 3.0), 5e-4},
                    {"A_{3,6}(a3)", 1.250, v36.value, 5e-3},
                    {"A_{4,8}(a2) = 2^(3/8)", 1.297, std::pow(2.0, 3.0 / 8.0), 5e-4},
                    {"A_{4,8}(a4)", 1.295, v48.value, 5e-3},
                    {"A_{4,8}(a3)", 1.270, v48_3.value, 5e-3}};
        } else if (repro_id == "np-margins") {
            const PExponent px = PExponent::make(repro_p);
            const BumpProfile bumps = bump_profile(px, 37.7, spec);
            rows = {{"bound_at_1/8", 1.06, np_ratio_landmark_bound(1.0 / 8.0), 0, true},
                    {"bound_at_1/10", 1.03, np_ratio_landmark_bound(1.0 / 10.0), 0, true},
                    {"bound_at_1/20", 1.1, np_ratio_landmark_bound(1.0 / 20.0), 0, true},
                    {"ratio_at_1/8", 1.06, np_crossing_ratio(px, bumps, 1.0 / 8.0, spec), 0, true},
                    {"ratio_at_1/10", 1.03, np_crossing_ratio(px, bumps, 1.0 / 10.0, spec), 0, true},
                    {"ratio_at_1/20", 1.1, np_crossing_ratio(px, bumps, 1.0 / 20.0, spec), 0, true}};
        } else if (repro_id == "psi-a-margins") {
            rows = {{"coarse_A=p_at_400", 2.0,
                     psi_A_margin(400.0, 400.0, PsiRegime::coarse), 0, true},
                    {"coarse_A=10_at_265", 1.0,
                     psi_A_margin(265.0, 10.0, PsiRegime::coarse), 0, true},
                    {"refined175_A=p_at_50", 2.0,
                     psi_A_margin(50.0, 50.0, PsiRegime::refined_175), 0, true},
                    {"refined26_A=2_at_26.5", 0.0,
                     psi_A_margin(26.5, 2.0, PsiRegime::refined_26), 0, true},
                    {"refined26_A=3/2_at_p0", 0.0,
                     psi_A_margin(26.265, 1.5, PsiRegime::refined_26), 0, true},
                    {"refined20_A=15/14_at_20.2", 0.0,
                     psi_A_margin(20.2, 15.0 / 14.0, PsiRegime::refined_20), 0, true}};
        } else if (repro_id == "spline-psi") {
            const double inf = std::numeric_limits<double>::infinity();
            rows = {{"psi1_inf", 0.06791, spline_psi1(inf), 1e-4},
                    {"psi2_26", 0.05675, spline_psi2(26.0), 1e-4},
                    {"psi3_inf_26", 0.01993, spline_psi3(inf, 26.0), 1e-4}};
        } else if (repro_id == "sinc-landmarks") {
            auto [s1, y1] =
                golden_max([](double s) { return std::fabs(std::sin(s) / s); }, 3.2, 6.2, 1e-12);
            auto [s2, y2] =
                golden_max([](double s) { return std::fabs(std::sin(s) / s); }, 6.3, 9.4, 1e-12);
            rows = {{"y1", 0.21723, y1, 1e-4},
                    {"s1", 4.493, s1, 1e-3},
                    {"y2", 0.12827, y2, 1e-4},
                    {"s2", 7.725, s2, 1e-3}};
        } else {
            std::ostringstream msg;
            msg << "unknown report id '" << repro_id << "'; available:";
            for (const auto& id : repro_ids) msg << ' ' << id;
            throw CLI::ValidationError("reproduce", msg.str());
        }
        bool all_pass = false;
        out.write(fmt_repro(out, rows, &all_pass));
        indeterminate_seen = indeterminate_seen || !all_pass;
    });

    app.require_subcommand(1);
    // global flags may appear after the subcommand
    for (CLI::App* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        for (CLI::App* sub2 : sub->get_subcommands(nullptr)) sub2->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return exit_validation;
    }

    if (degraded_seen)
        std::cerr << "warning: requested tolerance not reachable; results carry the "
                     "achieved error bound\n";
    return strict && (degraded_seen || indeterminate_seen) ? exit_indeterminate : exit_ok;
}
