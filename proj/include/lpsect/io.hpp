#pragma once

#include "lpsect/ball_inequality.hpp"
#include "lpsect/constants.hpp"
#include "lpsect/sections.hpp"

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace lpsect {

// CSV cells carry 17 significant digits so parsing them back is lossless.
inline std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    out += '\n';
    return out;
}

// ---- json round-trip for the record types ------------------------------

inline void to_json(nlohmann::json& j, const CriticalConstants& c) {
    j = {{"p", c.p},           {"c_p", c.c_p},
         {"d_p", c.d_p},       {"ratio_r", c.ratio_r},
         {"h2", c.h2},         {"h_inf", c.h_inf},
         {"diag_limit", c.diag_limit}, {"a1_threshold", c.a1_threshold}};
}

inline void from_json(const nlohmann::json& j, CriticalConstants& c) {
    j.at("p").get_to(c.p);
    j.at("c_p").get_to(c.c_p);
    j.at("d_p").get_to(c.d_p);
    j.at("ratio_r").get_to(c.ratio_r);
    j.at("h2").get_to(c.h2);
    j.at("h_inf").get_to(c.h_inf);
    j.at("diag_limit").get_to(c.diag_limit);
    j.at("a1_threshold").get_to(c.a1_threshold);
}

inline void to_json(nlohmann::json& j, const DistributionCurve& c) {
    j = {{"grid", c.grid},
         {"value_lo", c.value_lo},
         {"value_hi", c.value_hi},
         {"tail_model", c.tail_model},
         {"envelope_limited", c.envelope_limited},
         {"s_max", c.s_max}};
}

inline void from_json(const nlohmann::json& j, DistributionCurve& c) {
    j.at("grid").get_to(c.grid);
    j.at("value_lo").get_to(c.value_lo);
    j.at("value_hi").get_to(c.value_hi);
    j.at("tail_model").get_to(c.tail_model);
    j.at("envelope_limited").get_to(c.envelope_limited);
    j.at("s_max").get_to(c.s_max);
}

inline void to_json(nlohmann::json& j, const BumpProfile& b) {
    j = {{"p", b.p}, {"s_max", b.s_max}, {"zeros", b.zeros},
         {"x1", b.x1}, {"x2", b.x2}};
    nlohmann::json ex = nlohmann::json::array();
    for (const auto& [s, v] : b.extrema) ex.push_back({{"s", s}, {"value", v}});
    j["extrema"] = ex;
}

inline void from_json(const nlohmann::json& j, BumpProfile& b) {
    j.at("p").get_to(b.p);
    j.at("s_max").get_to(b.s_max);
    j.at("zeros").get_to(b.zeros);
    j.at("x1").get_to(b.x1);
    j.at("x2").get_to(b.x2);
    b.extrema.clear();
    for (const auto& e : j.at("extrema"))
        b.extrema.emplace_back(e.at("s").get<double>(), e.at("value").get<double>());
}

inline void to_json(nlohmann::json& j, const NpReport& r) {
    j = {{"p", r.p},
         {"comparison", std::string(1, r.comparison)},
         {"sign_pattern_ok", r.sign_pattern_ok},
         {"ratio_min", r.ratio_min},
         {"conclusion_ok", r.conclusion_ok},
         {"envelope_limited", r.envelope_limited},
         {"x1", r.x1},
         {"x2", r.x2},
         {"x_min", r.x_min},
         {"small_x_regime", r.small_x_regime},
         {"outcome", r.outcome == CheckOutcome::ok ? "ok"
                     : r.outcome == CheckOutcome::indeterminate ? "indeterminate"
                                                                : "fail"},
         {"notes", r.notes}};
    if (r.crossing_x0)
        j["crossing_x0"] = *r.crossing_x0;
    else
        j["crossing_x0"] = nullptr;
    nlohmann::json curve = nlohmann::json::array();
    for (const auto& [u, h] : r.hp_curve) curve.push_back({{"u", u}, {"h", h}});
    j["hp_curve"] = curve;
}

inline void from_json(const nlohmann::json& j, NpReport& r) {
    j.at("p").get_to(r.p);
    r.comparison = j.at("comparison").get<std::string>().at(0);
    j.at("sign_pattern_ok").get_to(r.sign_pattern_ok);
    j.at("ratio_min").get_to(r.ratio_min);
    j.at("conclusion_ok").get_to(r.conclusion_ok);
    j.at("envelope_limited").get_to(r.envelope_limited);
    j.at("x1").get_to(r.x1);
    j.at("x2").get_to(r.x2);
    j.at("x_min").get_to(r.x_min);
    j.at("small_x_regime").get_to(r.small_x_regime);
    j.at("notes").get_to(r.notes);
    const std::string out = j.at("outcome").get<std::string>();
    r.outcome = out == "ok" ? CheckOutcome::ok
                : out == "indeterminate" ? CheckOutcome::indeterminate
                                         : CheckOutcome::fail;
    if (j.at("crossing_x0").is_null())
        r.crossing_x0.reset();
    else
        r.crossing_x0 = j.at("crossing_x0").get<double>();
    r.hp_curve.clear();
    for (const auto& e : j.at("hp_curve"))
        r.hp_curve.emplace_back(e.at("u").get<double>(), e.at("h").get<double>());
}

inline void to_json(nlohmann::json& j, const SectionEstimate& e) {
    j = {{"value", e.value},
         {"method", e.method == SectionMethod::polya ? "polya"
                    : e.method == SectionMethod::mc  ? "mc"
                                                     : "brute"},
         {"err", e.err},
         {"samples", e.samples},
         {"seed", e.seed},
         {"trunc_radius", e.trunc_radius},
         {"degraded", e.degraded},
         {"note", e.note}};
}

inline void from_json(const nlohmann::json& j, SectionEstimate& e) {
    j.at("value").get_to(e.value);
    const std::string m = j.at("method").get<std::string>();
    e.method = m == "polya" ? SectionMethod::polya
               : m == "mc" ? SectionMethod::mc
                           : SectionMethod::brute;
    j.at("err").get_to(e.err);
    j.at("samples").get_to(e.samples);
    j.at("seed").get_to(e.seed);
    j.at("trunc_radius").get_to(e.trunc_radius);
    j.at("degraded").get_to(e.degraded);
    j.at("note").get_to(e.note);
}

} // namespace lpsect
