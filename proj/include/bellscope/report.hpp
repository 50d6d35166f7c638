#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>

#include "bellscope/correlators.hpp"
#include "bellscope/lemmas.hpp"
#include "bellscope/membership.hpp"
#include "bellscope/principles.hpp"
#include "bellscope/properties.hpp"

namespace bellscope {

// Reports use insertion-ordered JSON so the bytes are a pure function of the
// content; rationals are emitted as "p/q" strings, floats through %.17g.
using Json = nlohmann::ordered_json;

inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

template <class S>
Json witness_json(const Witness<S>& w) {
    Json j;
    j["description"] = w.description;
    Json where = Json::object();
    for (const auto& [k, v] : w.where) where[k] = v;
    j["where"] = where;
    j["lhs"] = num_to_string(w.lhs);
    j["rhs"] = num_to_string(w.rhs);
    return j;
}

template <class S>
Json verdict_json(const PropertyVerdict<S>& v) {
    Json j;
    j["property"] = property_name(v.property);
    j["holds"] = v.holds;
    if (v.witness) j["witness"] = witness_json(*v.witness);
    return j;
}

inline Json principle_witness_json(const PrincipleWitness& w) {
    Json j;
    j["x"] = w.x_labels;
    j["y"] = w.y_labels;
    j["z"] = w.z_labels;
    j["gap"] = num_to_string(w.gap);
    j["note"] = w.note;
    return j;
}

inline Json principle_json(const PrincipleVerdict& v) {
    Json j;
    j["principle"] = principle_name(v.principle);
    j["holds"] = v.holds;
    if (v.witness) j["witness"] = principle_witness_json(*v.witness);
    return j;
}

template <class S>
Json chsh_json(const Phenomenon<S>& ph) {
    Json j;
    Json correlators_j = Json::array();
    const Scenario& sc = ph.scenario();
    for (std::size_t a = 0; a < sc.alice_settings; ++a)
        for (std::size_t b = 0; b < sc.bob_settings; ++b) {
            Json e;
            e["a"] = a;
            e["b"] = b;
            S val = correlator(ph, a, b);
            e["E"] = num_to_string(val);
            e["E_float"] = scalar_traits<S>::to_double(val);
            correlators_j.push_back(e);
        }
    j["correlators"] = correlators_j;
    Json quads = Json::array();
    for (const ChshEntry& q : chsh_quadruples(sc)) {
        Json e;
        e["a1"] = q.a1;
        e["a2"] = q.a2;
        e["b1"] = q.b1;
        e["b2"] = q.b2;
        S val = chsh_value(ph, q.a1, q.a2, q.b1, q.b2);
        e["chsh"] = num_to_string(val);
        e["chsh_float"] = scalar_traits<S>::to_double(val);
        quads.push_back(e);
    }
    j["quadruples"] = quads;
    S maxv = max_abs_chsh(ph);
    j["max_abs"] = num_to_string(maxv);
    j["max_abs_float"] = scalar_traits<S>::to_double(maxv);
    return j;
}

inline Json membership_json(const MembershipResult& r, const Scenario& sc) {
    Json j;
    j["member"] = r.member;
    if (r.member) {
        Json weights = Json::array();
        auto strategies = enumerate_strategies(sc);
        for (std::size_t s = 0; s < strategies.size(); ++s) {
            if (r.weights[s] == 0) continue;
            Json w;
            w["strategy"] = strategies[s].label();
            w["index"] = s;
            w["weight"] = num_to_string(r.weights[s]);
            weights.push_back(w);
        }
        j["weights"] = weights;
    } else {
        Json cert;
        Json coeffs = Json::array();
        for (const Rational& c : r.certificate->cell_coeffs)
            coeffs.push_back(num_to_string(c));
        cert["cell_coefficients"] = coeffs;
        cert["vertex_bound"] = num_to_string(r.certificate->vertex_bound);
        cert["value_on_phenomenon"] = num_to_string(r.certificate->phenomenon_value);
        cert["value_on_phenomenon_float"] =
            scalar_traits<Rational>::to_double(r.certificate->phenomenon_value);
        j["certificate"] = cert;
    }
    return j;
}

inline Json lemma_json(const LemmaReport& r) {
    Json j;
    j["lemma"] = r.lemma_id;
    j["statement"] = r.statement;
    j["trials"] = r.trials;
    j["tested"] = r.tested;
    j["counterexamples"] = Json::array();
    for (const auto& c : r.counterexamples) {
        Json e;
        e["trial"] = c.trial;
        e["verdict"] = principle_json(c.consequent_verdict);
        j["counterexamples"].push_back(e);
    }
    return j;
}

} // namespace bellscope
