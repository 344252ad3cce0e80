#include "seucal/io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace seucal::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
    throw Error(ErrorCode::ParseError, what);
}

void require_object(const json& j, std::string_view where) {
    if (!j.is_object()) parse_fail(std::string(where) + " must be an object");
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) parse_fail("unknown key '" + key + "' in " + std::string(where));
    }
}

double number(const json& j, const char* key, std::string_view where) {
    auto it = j.find(key);
    if (it == j.end()) parse_fail("missing key '" + std::string(key) + "' in " + std::string(where));
    if (!it->is_number()) {
        parse_fail("key '" + std::string(key) + "' in " + std::string(where) + " must be a number");
    }
    return it->get<double>();
}

Gamble parse_gamble(const json& j, std::string_view where) {
    require_object(j, where);
    reject_unknown(j, {"alpha", "beta"}, where);
    return Gamble{number(j, "alpha", where), number(j, "beta", where)};
}

WealthSet parse_wealth(const json& j) {
    if (j.is_array()) {
        WealthSet::List values;
        for (const auto& v : j) {
            if (!v.is_number()) parse_fail("wealth list entries must be numbers");
            values.push_back(v.get<double>());
        }
        return WealthSet::list(std::move(values));
    }
    require_object(j, "wealth");
    reject_unknown(j, {"lo", "hi", "step"}, "wealth");
    return WealthSet::interval(number(j, "lo", "wealth"), number(j, "hi", "wealth"),
                               number(j, "step", "wealth"));
}

json gamble_json(const Gamble& g) { return json{{"alpha", g.alpha}, {"beta", g.beta}}; }

}  // namespace

Scenario parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(std::string("malformed scenario document: ") + e.what());
    }
    require_object(doc, "scenario");
    reject_unknown(doc, {"r", "r_hat", "wealth", "tolerance", "belief_grid_step", "k_max"},
                   "scenario");
    for (const char* key : {"r", "r_hat", "wealth"}) {
        if (!doc.contains(key)) parse_fail(std::string("missing key '") + key + "' in scenario");
    }
    Scenario s;
    s.r = parse_gamble(doc["r"], "r");
    s.r_hat = parse_gamble(doc["r_hat"], "r_hat");
    s.wealth = parse_wealth(doc["wealth"]);
    if (doc.contains("tolerance")) s.tolerance = number(doc, "tolerance", "scenario");
    if (doc.contains("belief_grid_step")) {
        s.belief_grid_step = number(doc, "belief_grid_step", "scenario");
    }
    if (doc.contains("k_max")) s.k_max = number(doc, "k_max", "scenario");
    return validate_scenario(s);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open scenario file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str());
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["r"] = gamble_json(s.r);
    j["r_hat"] = gamble_json(s.r_hat);
    if (const auto* iv = s.wealth.as_interval()) {
        j["wealth"] = json{{"lo", iv->lo}, {"hi", iv->hi}, {"step", iv->step}};
    } else {
        j["wealth"] = *s.wealth.as_list();
    }
    j["tolerance"] = s.tolerance;
    j["belief_grid_step"] = s.belief_grid_step;
    j["k_max"] = s.k_max;
    return j;
}

std::string dump_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

json utility_to_json(const PiecewiseUtility& u) {
    json segs = json::array();
    for (const auto& seg : u.segments()) {
        if (const auto* lin = std::get_if<LinearSegment>(&seg)) {
            segs.push_back({{"type", "linear"}, {"slope", lin->slope}, {"intercept", lin->intercept}});
        } else {
            const auto& e = std::get<NegExpSegment>(seg);
            segs.push_back({{"type", "neg_exp"},
                            {"offset", e.offset},
                            {"anchor", e.anchor},
                            {"rate", e.rate},
                            {"log_amplitude", e.log_amplitude}});
        }
    }
    return json{{"breakpoints", u.breakpoints()}, {"segments", segs}};
}

PiecewiseUtility utility_from_json(const json& j) {
    require_object(j, "utility");
    reject_unknown(j, {"breakpoints", "segments"}, "utility");
    if (!j.contains("breakpoints") || !j["breakpoints"].is_array() || !j.contains("segments") ||
        !j["segments"].is_array()) {
        parse_fail("utility needs 'breakpoints' and 'segments' arrays");
    }
    std::vector<double> bps;
    for (const auto& b : j["breakpoints"]) {
        if (!b.is_number()) parse_fail("breakpoints must be numbers");
        bps.push_back(b.get<double>());
    }
    std::vector<Segment> segs;
    for (const auto& s : j["segments"]) {
        require_object(s, "segment");
        const auto type = s.value("type", std::string{});
        if (type == "linear") {
            reject_unknown(s, {"type", "slope", "intercept"}, "linear segment");
            segs.push_back(LinearSegment{number(s, "slope", "segment"),
                                         number(s, "intercept", "segment")});
        } else if (type == "neg_exp") {
            reject_unknown(s, {"type", "offset", "anchor", "rate", "log_amplitude"},
                           "neg_exp segment");
            segs.push_back(NegExpSegment{number(s, "offset", "segment"),
                                         number(s, "anchor", "segment"),
                                         number(s, "rate", "segment"),
                                         number(s, "log_amplitude", "segment")});
        } else {
            parse_fail("segment type must be 'linear' or 'neg_exp'");
        }
    }
    return PiecewiseUtility(std::move(bps), std::move(segs));
}

json certificate_to_json(const WitnessCertificate& cert, const Scenario& scenario) {
    json w;
    std::visit(
        [&](const auto& kind) {
            using K = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<K, RiskNeutralWitness>) {
                w["kind"] = "risk_neutral";
            } else if constexpr (std::is_same_v<K, LargeKWitness>) {
                w["kind"] = "large_k";
                w["k"] = kind.k;
            } else {
                w["kind"] = "interval";
                w["iota"] = kind.iota;
                w["w_lo"] = kind.w_lo;
                w["w_hi"] = kind.w_hi;
            }
        },
        cert.kind);
    w["belief"] = cert.belief.mu();
    w["shift"] = cert.shift;
    w["tolerance"] = cert.tolerance;
    w["utility"] = utility_to_json(cert.utility.u0);
    if (!(cert.utility.u0 == cert.utility.u1)) {
        w["utility_state1"] = utility_to_json(cert.utility.u1);
    }
    json verified = json::array();
    for (const auto& v : cert.verified) {
        verified.push_back({{"wealth", v.wealth}, {"safe_over_risky", v.safe_over_risky}});
    }
    json flips = json::array();
    for (const auto& f : cert.flips) {
        flips.push_back({{"wealth", f.wealth},
                         {"hat_over_safe", f.hat_over_safe},
                         {"hat_over_safe_belief", f.hat_over_safe_belief}});
    }
    w["verified"] = std::move(verified);
    w["flips"] = std::move(flips);
    return json{{"scenario", scenario_to_json(scenario)}, {"witness", std::move(w)}};
}

json evidence_to_json(const OracleEvidence& ev, const Scenario& scenario) {
    return json{{"scenario", scenario_to_json(scenario)},
                {"evidence",
                 {{"mu", ev.mu},
                  {"flip_wealth", ev.flip_wealth},
                  {"margin", ev.solution.margin},
                  {"nodes", ev.solution.nodes},
                  {"values", ev.solution.values}}}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

}  // namespace seucal::io
