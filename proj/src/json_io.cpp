// SPDX-License-Identifier: Apache-2.0
#include "ldm/json_io.hpp"

#include <string>

#include "ldm/errors.hpp"

namespace ldm::io {

namespace {

double number_field(const Json& doc, const char* key) {
    if (!doc.contains(key) || !doc.at(key).is_number()) {
        throw ParseError(std::string("field '") + key + "' must be a number");
    }
    return doc.at(key).get<double>();
}

Json endpoints_json(const std::vector<Endpoints>& ends) {
    Json arr = Json::array();
    for (const auto& [l, r] : ends) arr.push_back({l, r});
    return arr;
}

Json range_json(const exact::TranslationRange& r) {
    if (r.full_circle) return Json{{"all_mod_L", true}};
    return Json{{"lo", r.lo}, {"hi", r.hi}};
}

}  // namespace

IntervalSet interval_set_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("interval set must be a JSON object");
    if (!doc.contains("domain") || !doc.at("domain").is_string()) {
        throw ParseError("field 'domain' must be \"segment\" or \"torus\"");
    }
    const auto kind = doc.at("domain").get<std::string>();
    if (kind != "segment" && kind != "torus") {
        throw ParseError("unknown domain '" + kind + "'");
    }
    const double L = number_field(doc, "L");
    if (!(L > 0.0)) throw ParseError("field 'L' must be positive");
    if (!doc.contains("intervals") || !doc.at("intervals").is_array()) {
        throw ParseError("field 'intervals' must be an array of [left, right] pairs");
    }
    std::vector<Endpoints> ends;
    for (const auto& item : doc.at("intervals")) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
            throw ParseError("each interval must be a [left, right] pair of numbers");
        }
        ends.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    const Domain domain = kind == "segment" ? Domain::segment(L) : Domain::torus(L);
    return make_interval_set(ends, domain);
}

IntervalSet parse_interval_set(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return interval_set_from_json(doc);
}

Json to_json(const IntervalSet& set) {
    return Json{{"domain", std::string(to_string(set.domain().kind))},
                {"L", set.box_length()},
                {"intervals", endpoints_json(set.component_endpoints())}};
}

Json to_json(const ModelParams& p) {
    return Json{{"gamma", p.gamma}, {"rho", p.rho}, {"L", p.L}};
}

Json to_json(const EnergyBreakdown& e) {
    return Json{{"perimeter", e.perimeter},
                {"self_term", e.self_term},
                {"background_term", e.background_term},
                {"moment_correction", e.moment_correction},
                {"total", e.total}};
}

Json to_json(const exact::GroundState& gs) {
    Json families = Json::array();
    for (const auto& f : gs.families) {
        Json item{{"N", f.N},
                  {"endpoints", endpoints_json(f.base.endpoints())},
                  {"translation_range", range_json(f.range)},
                  {"minimal_period", f.minimal_period}};
        if (f.claimed_range) item["claimed_translation_range"] = range_json(*f.claimed_range);
        families.push_back(std::move(item));
    }
    return Json{{"bc", std::string(to_string(gs.bc))},
                {"energy", gs.energy},
                {"optimal_Ns", gs.optimal_Ns},
                {"families", std::move(families)}};
}

Json to_json(const exact::ExcessResult& r) {
    Json out{{"Q", r.Q},
             {"ell", r.ell},
             {"lower_bound", r.lower_bound},
             {"N", r.N},
             {"fit_condition_holds", r.fit_condition_holds},
             {"exact", r.exact},
             {"bracket", {r.bracket_lo, r.bracket_hi}}};
    out["minimizer"] = r.minimizer ? endpoints_json(r.minimizer->endpoints()) : Json(nullptr);
    return out;
}

Json to_json(const exact::AsymptoticData& a) {
    return Json{{"e_inf", a.e_inf},
                {"beta", a.beta},
                {"c_remainder", a.c_remainder},
                {"remainder_sup", a.remainder_sup}};
}

Json to_json(const oracle::VerificationRecord& rec) {
    return Json{{"params", to_json(rec.params)},
                {"bc", std::string(to_string(rec.bc))},
                {"exact_energy", rec.exact_energy},
                {"oracle_energy", rec.oracle_energy},
                {"gap", rec.gap},
                {"endpoint_error", rec.endpoint_error},
                {"oracle_N", rec.oracle_N},
                {"passed", rec.passed}};
}

}  // namespace ldm::io
