#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "bellscope/causal_model.hpp"
#include "bellscope/hv_model.hpp"
#include "bellscope/phenomenon.hpp"
#include "bellscope/quantum.hpp"

namespace bellscope {

// Text schema, version 1. Layout: a `version = 1` line, then exactly one
// primary section ([phenomenon], [hv-model], [quantum] or [causal-model]),
// optionally followed by [analysis] directives. Numbers written as p/q are
// exact rationals, decimal literals are floating; one table never mixes the
// two. The full grammar lives in docs/FORMAT.md.

struct PhenomenonBlock {
    Scenario scenario;
    bool exact = true;
    std::optional<Phenomenon<Rational>> exact_table;
    std::optional<Phenomenon<double>> float_table;
};

struct HvModelBlock {
    Scenario scenario;
    bool exact = true;
    std::optional<HVModel<Rational>> exact_model;
    std::optional<HVModel<double>> float_model;
};

struct QuantumBlock {
    std::string state_spec; // "singlet", "werner:<v>" or "matrix"
    double werner_v = 1.0;
    Matrix4c rho = Matrix4c::Zero();
    std::vector<double> alice_angles;
    std::vector<double> bob_angles;

    TwoQubitState state() const {
        if (state_spec == "singlet") return singlet();
        if (state_spec == "matrix") return TwoQubitState(rho);
        return werner(werner_v);
    }
    std::vector<BlochSetting> alice_dirs() const {
        std::vector<BlochSetting> out;
        for (double t : alice_angles) out.push_back(BlochSetting::from_polar(t));
        return out;
    }
    std::vector<BlochSetting> bob_dirs() const {
        std::vector<BlochSetting> out;
        for (double t : bob_angles) out.push_back(BlochSetting::from_polar(t));
        return out;
    }
};

struct CausalBlock {
    CausalModel model;
};

struct AnalysisDirectives {
    double tol = 1e-9;
    std::int64_t denominator_cap = 1000000;
    std::optional<std::uint64_t> seed;
};

struct ScenarioFile {
    int version = 1;
    std::variant<PhenomenonBlock, HvModelBlock, QuantumBlock, CausalBlock> block;
    AnalysisDirectives analysis;

    const char* kind() const {
        switch (block.index()) {
            case 0: return "phenomenon";
            case 1: return "hv-model";
            case 2: return "quantum";
            default: return "causal-model";
        }
    }
};

namespace fmt_detail {

struct NumberToken {
    bool is_rational = false; // written as p/q
    bool is_decimal = false;  // written with . or exponent
    Rational r{0};
    double d = 0;
};

inline bool parse_long(const std::string& s, long long& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stoll(s, &pos);
    } catch (...) {
        return false;
    }
    return pos == s.size();
}

inline bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(s, &pos);
    } catch (...) {
        return false;
    }
    return pos == s.size();
}

inline NumberToken parse_number(const std::string& tok, int line) {
    NumberToken n;
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
        long long p, q;
        if (!parse_long(tok.substr(0, slash), p) || !parse_long(tok.substr(slash + 1), q) ||
            q == 0)
            throw ParseError(line, 1, "bad rational '" + tok + "'");
        n.is_rational = true;
        n.r = Rational(p, q);
        n.d = n.r.convert_to<double>();
        return n;
    }
    long long v;
    if (parse_long(tok, v)) {
        n.r = Rational(v);
        n.d = static_cast<double>(v);
        return n;
    }
    double d;
    if (!parse_double(tok, d)) throw ParseError(line, 1, "bad number '" + tok + "'");
    n.is_decimal = true;
    n.d = d;
    return n;
}

inline Complex parse_complex(const std::string& tok, int line) {
    // re, im*i, or re+im*i / re-im*i; "i" alone means 1i.
    std::string s = tok;
    auto as_real = [&](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        double d;
        if (!parse_double(part, d)) throw ParseError(line, 1, "bad complex '" + tok + "'");
        return d;
    };
    if (s.empty()) throw ParseError(line, 1, "empty complex entry");
    if (s.back() != 'i') {
        double d;
        if (!parse_double(s, d)) throw ParseError(line, 1, "bad complex '" + tok + "'");
        return Complex(d, 0);
    }
    s.pop_back();
    // Split at the last +/- that is not an exponent sign and not leading.
    for (std::size_t i = s.size(); i > 1; --i) {
        char c = s[i - 1];
        if ((c == '+' || c == '-') && s[i - 2] != 'e' && s[i - 2] != 'E') {
            return Complex(as_real(s.substr(0, i - 1)),
                           as_real(s[i - 1] == '-' ? "-" + s.substr(i) : s.substr(i)));
        }
    }
    return Complex(0, as_real(s));
}

inline std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

inline std::string strip(const std::string& raw) {
    std::string s = raw;
    auto hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    return s.substr(start);
}

// "key = v1 v2 ..." or "head ... : v1 v2 ..." split helpers.
struct KeyValue {
    std::string key;
    std::vector<std::string> values;
};

inline std::optional<KeyValue> split_on(const std::string& line, char sep) {
    auto pos = line.find(sep);
    if (pos == std::string::npos) return std::nullopt;
    KeyValue kv;
    kv.key = strip(line.substr(0, pos));
    kv.values = tokens(line.substr(pos + 1));
    return kv;
}

// Representation bookkeeping for one table: p/q and decimals must not mix.
struct RepTracker {
    bool saw_rational = false;
    bool saw_decimal = false;
    void feed(const NumberToken& n, int line) {
        saw_rational |= n.is_rational;
        saw_decimal |= n.is_decimal;
        if (saw_rational && saw_decimal)
            throw ParseError(line, 1, "table mixes exact (p/q) and floating (decimal) entries");
    }
    bool exact() const { return !saw_decimal; }
};

inline std::size_t parse_index(const std::string& tok, const std::string& key, int line) {
    if (tok.rfind(key + "=", 0) != 0)
        throw ParseError(line, 1, "expected '" + key + "=<index>', got '" + tok + "'");
    long long v;
    if (!parse_long(tok.substr(key.size() + 1), v) || v < 0)
        throw ParseError(line, 1, "bad index in '" + tok + "'");
    return static_cast<std::size_t>(v);
}

} // namespace fmt_detail

ScenarioFile parse_scenario_file(const std::string& text);

std::string serialize(const ScenarioFile& file);

// ---------------------------------------------------------------------------
// Implementation
// ---------------------------------------------------------------------------

namespace fmt_detail {

struct RawSection {
    std::string name;
    int line = 0;
    std::vector<std::pair<int, std::string>> lines; // (line number, content)
};

inline std::vector<RawSection> split_sections(const std::string& text, int& version_out) {
    std::vector<RawSection> sections;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool version_seen = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string s = strip(raw);
        if (s.empty()) continue;
        if (!version_seen) {
            auto kv = split_on(s, '=');
            if (!kv || kv->key != "version" || kv->values.size() != 1)
                throw ParseError(lineno, 1, "expected 'version = <n>' before any section");
            long long v;
            if (!parse_long(kv->values[0], v))
                throw ParseError(lineno, 1, "bad version number");
            if (v != 1)
                throw UnknownVersion("unsupported format version " + std::to_string(v));
            version_out = static_cast<int>(v);
            version_seen = true;
            continue;
        }
        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError(lineno, 1, "unterminated section header");
            sections.push_back(RawSection{s.substr(1, s.size() - 2), lineno, {}});
            continue;
        }
        if (sections.empty())
            throw ParseError(lineno, 1, "content before any section header");
        sections.back().lines.emplace_back(lineno, s);
    }
    if (!version_seen) throw ParseError(1, 1, "empty file: expected 'version = 1'");
    return sections;
}

struct TableCommon {
    std::optional<Scenario> scenario;
    std::size_t na = 0, nb = 0, ma = 0, mb = 0;
    std::string preparation = "c";
    bool have_settings = false, have_outcomes = false;

    void feed(const KeyValue& kv, int line) {
        if (kv.key == "settings") {
            long long x, y;
            if (kv.values.size() != 2 || !parse_long(kv.values[0], x) ||
                !parse_long(kv.values[1], y) || x < 1 || y < 1)
                throw ParseError(line, 1, "settings needs two positive integers");
            na = static_cast<std::size_t>(x);
            nb = static_cast<std::size_t>(y);
            have_settings = true;
        } else if (kv.key == "outcomes") {
            long long x, y;
            if (kv.values.size() != 2 || !parse_long(kv.values[0], x) ||
                !parse_long(kv.values[1], y) || x < 1 || y < 1)
                throw ParseError(line, 1, "outcomes needs two positive integers");
            ma = static_cast<std::size_t>(x);
            mb = static_cast<std::size_t>(y);
            have_outcomes = true;
        } else if (kv.key == "preparation") {
            if (kv.values.size() != 1) throw ParseError(line, 1, "preparation needs one label");
            preparation = kv.values[0];
        } else {
            throw ParseError(line, 1, "unknown key '" + kv.key + "'");
        }
    }

    Scenario build(int line) {
        if (!have_settings || !have_outcomes)
            throw ParseError(line, 1, "section needs 'settings' and 'outcomes' lines");
        return Scenario(na, nb, ma, mb, preparation);
    }
};

inline PhenomenonBlock parse_phenomenon(const RawSection& sec) {
    TableCommon common;
    std::vector<std::tuple<int, std::size_t, std::size_t, std::vector<NumberToken>>> rows;
    for (const auto& [line, content] : sec.lines) {
        if (content.rfind("row", 0) == 0) {
            auto kv = split_on(content, ':');
            if (!kv) throw ParseError(line, 1, "row line needs ':'");
            auto head = tokens(kv->key);
            if (head.size() != 3) throw ParseError(line, 1, "row head must be 'row a=I b=J'");
            std::size_t a = parse_index(head[1], "a", line);
            std::size_t b = parse_index(head[2], "b", line);
            std::vector<NumberToken> cells;
            for (const auto& t : kv->values) cells.push_back(parse_number(t, line));
            rows.emplace_back(line, a, b, std::move(cells));
        } else {
            auto kv = split_on(content, '=');
            if (!kv) throw ParseError(line, 1, "expected 'key = value' or row line");
            common.feed(*kv, line);
        }
    }
    Scenario sc = common.build(sec.line);
    RepTracker rep;
    std::vector<NumberToken> table(sc.cells());
    std::vector<bool> present(sc.setting_pairs(), false);
    for (auto& [line, a, b, cells] : rows) {
        if (a >= sc.alice_settings || b >= sc.bob_settings)
            throw ParseError(line, 1, "row indices outside the scenario");
        if (cells.size() != sc.outcomes_per_pair())
            throw ParseError(line, 1, "row a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                          " needs " + std::to_string(sc.outcomes_per_pair()) +
                                          " cells");
        present[sc.block(a, b)] = true;
        std::size_t k = 0;
        for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
            for (std::size_t B = 0; B < sc.bob_outcomes; ++B) {
                rep.feed(cells[k], line);
                table[sc.cell(a, b, A, B)] = cells[k++];
            }
    }
    for (std::size_t blk = 0; blk < sc.setting_pairs(); ++blk)
        if (!present[blk])
            throw ParseError(sec.line, 1,
                             "missing row a=" + std::to_string(blk / sc.bob_settings) +
                                 " b=" + std::to_string(blk % sc.bob_settings));
    PhenomenonBlock out;
    out.scenario = sc;
    out.exact = rep.exact();
    if (out.exact) {
        std::vector<Rational> t(sc.cells());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = table[i].r;
        out.exact_table = Phenomenon<Rational>(sc, std::move(t));
    } else {
        std::vector<double> t(sc.cells());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = table[i].d;
        out.float_table = Phenomenon<double>(sc, std::move(t));
    }
    return out;
}

inline HvModelBlock parse_hv_model(const RawSection& sec) {
    TableCommon common;
    std::vector<std::string> lambdas;
    std::vector<NumberToken> prior;
    bool have_prior = false;
    std::vector<std::tuple<int, std::string, std::size_t, std::size_t, std::vector<NumberToken>>>
        rows;
    for (const auto& [line, content] : sec.lines) {
        if (content.rfind("response", 0) == 0) {
            auto kv = split_on(content, ':');
            if (!kv) throw ParseError(line, 1, "response line needs ':'");
            auto head = tokens(kv->key);
            if (head.size() != 4)
                throw ParseError(line, 1, "response head must be 'response LAMBDA a=I b=J'");
            std::size_t a = parse_index(head[2], "a", line);
            std::size_t b = parse_index(head[3], "b", line);
            std::vector<NumberToken> cells;
            for (const auto& t : kv->values) cells.push_back(parse_number(t, line));
            rows.emplace_back(line, head[1], a, b, std::move(cells));
        } else if (content.rfind("prior", 0) == 0) {
            auto kv = split_on(content, ':');
            if (!kv) throw ParseError(line, 1, "prior line needs ':'");
            for (const auto& t : kv->values) prior.push_back(parse_number(t, line));
            have_prior = true;
        } else {
            auto kv = split_on(content, '=');
            if (!kv) throw ParseError(line, 1, "unrecognized line");
            if (kv->key == "lambdas") {
                lambdas = kv->values;
            } else {
                common.feed(*kv, line);
            }
        }
    }
    Scenario sc = common.build(sec.line);
    if (lambdas.empty()) throw ParseError(sec.line, 1, "hv-model needs a 'lambdas' line");
    if (!have_prior || prior.size() != lambdas.size())
        throw ParseError(sec.line, 1, "prior must list one probability per lambda");
    std::map<std::string, std::size_t> lam_index;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (lam_index.count(lambdas[i]))
            throw ParseError(sec.line, 1, "duplicate lambda label " + lambdas[i]);
        lam_index[lambdas[i]] = i;
    }
    RepTracker rep;
    for (auto& p : prior) rep.feed(p, sec.line);
    std::vector<NumberToken> response(lambdas.size() * sc.cells());
    std::vector<bool> present(lambdas.size() * sc.setting_pairs(), false);
    for (auto& [line, lam, a, b, cells] : rows) {
        auto it = lam_index.find(lam);
        if (it == lam_index.end()) throw ParseError(line, 1, "unknown lambda '" + lam + "'");
        if (a >= sc.alice_settings || b >= sc.bob_settings)
            throw ParseError(line, 1, "response indices outside the scenario");
        if (cells.size() != sc.outcomes_per_pair())
            throw ParseError(line, 1, "response row needs " +
                                          std::to_string(sc.outcomes_per_pair()) + " cells");
        present[it->second * sc.setting_pairs() + sc.block(a, b)] = true;
        std::size_t k = 0;
        for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
            for (std::size_t B = 0; B < sc.bob_outcomes; ++B) {
                rep.feed(cells[k], line);
                response[it->second * sc.cells() + sc.cell(a, b, A, B)] = cells[k++];
            }
    }
    for (std::size_t i = 0; i < present.size(); ++i)
        if (!present[i])
            throw ParseError(sec.line, 1,
                             "missing response row for lambda " + lambdas[i / sc.setting_pairs()]);
    HvModelBlock out;
    out.scenario = sc;
    out.exact = rep.exact();
    if (out.exact) {
        std::vector<Rational> pr(prior.size()), resp(response.size());
        for (std::size_t i = 0; i < pr.size(); ++i) pr[i] = prior[i].r;
        for (std::size_t i = 0; i < resp.size(); ++i) resp[i] = response[i].r;
        out.exact_model = HVModel<Rational>(sc, lambdas, std::move(pr), std::move(resp));
    } else {
        std::vector<double> pr(prior.size()), resp(response.size());
        for (std::size_t i = 0; i < pr.size(); ++i) pr[i] = prior[i].d;
        for (std::size_t i = 0; i < resp.size(); ++i) resp[i] = response[i].d;
        out.float_model = HVModel<double>(sc, lambdas, std::move(pr), std::move(resp));
    }
    return out;
}

inline QuantumBlock parse_quantum(const RawSection& sec) {
    QuantumBlock out;
    bool have_state = false, have_rho = false;
    for (const auto& [line, content] : sec.lines) {
        if (content.rfind("rho", 0) == 0) {
            auto kv = split_on(content, ':');
            if (!kv) throw ParseError(line, 1, "rho line needs ':'");
            if (kv->values.size() != 16)
                throw ParseError(line, 1, "rho needs 16 complex entries, row-major");
            for (int i = 0; i < 16; ++i)
                out.rho(i / 4, i % 4) = parse_complex(kv->values[i], line);
            have_rho = true;
            continue;
        }
        auto kv = split_on(content, '=');
        if (!kv) throw ParseError(line, 1, "unrecognized line");
        if (kv->key == "state") {
            if (kv->values.size() != 1) throw ParseError(line, 1, "state needs one value");
            const std::string& v = kv->values[0];
            if (v == "singlet" || v == "matrix") {
                out.state_spec = v;
            } else if (v.rfind("werner:", 0) == 0) {
                double vis;
                if (!parse_double(v.substr(7), vis))
                    throw ParseError(line, 1, "bad werner visibility");
                out.state_spec = "werner:" + v.substr(7);
                out.werner_v = vis;
            } else {
                throw ParseError(line, 1, "state must be singlet, werner:<v> or matrix");
            }
            have_state = true;
        } else if (kv->key == "alice" || kv->key == "bob") {
            std::vector<double>& dst = kv->key == "alice" ? out.alice_angles : out.bob_angles;
            for (const auto& t : kv->values) {
                double d;
                if (!parse_double(t, d)) throw ParseError(line, 1, "bad angle '" + t + "'");
                dst.push_back(d);
            }
        } else {
            throw ParseError(line, 1, "unknown key '" + kv->key + "'");
        }
    }
    if (!have_state) throw ParseError(sec.line, 1, "quantum section needs a state");
    if (out.state_spec == "matrix" && !have_rho)
        throw ParseError(sec.line, 1, "state = matrix needs a rho line");
    if (out.alice_angles.empty() || out.bob_angles.empty())
        throw ParseError(sec.line, 1, "quantum section needs alice and bob angle lists");
    if (out.state_spec.rfind("werner:", 0) == 0 && (out.werner_v < 0 || out.werner_v > 1))
        throw ParseError(sec.line, 1, "werner visibility outside [0,1]");
    return out;
}

inline EventKind parse_kind(const std::string& s, int line) {
    if (s == "free_choice") return EventKind::free_choice;
    if (s == "outcome") return EventKind::outcome;
    if (s == "latent") return EventKind::latent;
    if (s == "preparation") return EventKind::preparation;
    throw ParseError(line, 1, "unknown event kind '" + s + "'");
}

inline CausalBlock parse_causal(const RawSection& sec) {
    CausalBlock out;
    CausalModel& m = out.model;
    struct PendingCpt {
        int line;
        std::vector<std::string> members;
        std::optional<std::vector<std::pair<std::string, std::size_t>>> row_assignment;
        std::vector<double> values;
    };
    std::vector<PendingCpt> cpts;

    for (const auto& [line, content] : sec.lines) {
        auto toks = tokens(content);
        if (toks.empty()) continue;
        if (toks[0] == "event") {
            if (toks.size() != 6)
                throw ParseError(line, 1,
                                 "event line: event LABEL kind=K t=T x=X arity=N");
            std::string label = toks[1];
            EventKind kind = EventKind::latent;
            double t = 0, x = 0;
            long long arity = 0;
            for (std::size_t i = 2; i < 6; ++i) {
                auto eq = toks[i].find('=');
                if (eq == std::string::npos) throw ParseError(line, 1, "bad event attribute");
                std::string key = toks[i].substr(0, eq), val = toks[i].substr(eq + 1);
                if (key == "kind") kind = parse_kind(val, line);
                else if (key == "t") {
                    if (!parse_double(val, t)) throw ParseError(line, 1, "bad t");
                } else if (key == "x") {
                    if (!parse_double(val, x)) throw ParseError(line, 1, "bad x");
                } else if (key == "arity") {
                    if (!parse_long(val, arity) || arity < 1)
                        throw ParseError(line, 1, "bad arity");
                } else throw ParseError(line, 1, "unknown event attribute '" + key + "'");
            }
            try {
                m.add_event(label, kind, t, x, static_cast<std::size_t>(arity));
            } catch (const DomainError& e) {
                throw ParseError(line, 1, e.what());
            }
        } else if (toks[0] == "edge") {
            if (toks.size() != 4 || toks[2] != "->")
                throw ParseError(line, 1, "edge line: edge U -> V");
            try {
                m.add_edge(toks[1], toks[3]);
            } catch (const DomainError& e) {
                throw ParseError(line, 1, e.what());
            }
        } else if (toks[0] == "cpt") {
            auto colon = content.find(':');
            if (colon == std::string::npos) throw ParseError(line, 1, "cpt line needs ':'");
            std::string head = content.substr(0, colon);
            auto bar = head.find('|');
            PendingCpt pc;
            pc.line = line;
            std::string members_part = bar == std::string::npos ? head : head.substr(0, bar);
            auto mt = tokens(members_part);
            pc.members.assign(mt.begin() + 1, mt.end());
            if (pc.members.empty()) throw ParseError(line, 1, "cpt needs member labels");
            if (bar != std::string::npos) {
                std::vector<std::pair<std::string, std::size_t>> assign;
                for (const auto& t : tokens(head.substr(bar + 1))) {
                    auto eq = t.find('=');
                    long long v;
                    if (eq == std::string::npos || !parse_long(t.substr(eq + 1), v) || v < 0)
                        throw ParseError(line, 1, "bad parent assignment '" + t + "'");
                    assign.emplace_back(t.substr(0, eq), static_cast<std::size_t>(v));
                }
                pc.row_assignment = std::move(assign);
            }
            for (const auto& t : tokens(content.substr(colon + 1)))
                pc.values.push_back(parse_number(t, line).d);
            cpts.push_back(std::move(pc));
        } else {
            throw ParseError(line, 1, "unrecognized causal-model line '" + toks[0] + "'");
        }
    }

    // Assemble CPTs: group per member set, fill rows.
    std::map<std::string, std::vector<double>> assembled;
    std::map<std::string, std::vector<bool>> filled;
    std::map<std::string, std::pair<std::vector<std::string>, int>> meta;
    for (auto& pc : cpts) {
        std::vector<std::size_t> mem;
        for (const auto& l : pc.members) mem.push_back(m.at(l));
        std::sort(mem.begin(), mem.end());
        std::string key;
        for (std::size_t v : mem) key += m.event(v).label + ",";
        std::vector<std::size_t> parents;
        {
            std::vector<bool> inmem(m.size(), false);
            for (std::size_t v : mem) inmem[v] = true;
            for (std::size_t v : mem)
                for (std::size_t p : m.parents(v))
                    if (!inmem[p] &&
                        std::find(parents.begin(), parents.end(), p) == parents.end())
                        parents.push_back(p);
            std::sort(parents.begin(), parents.end());
        }
        std::size_t rows = m.count_assignments(parents);
        std::size_t width = m.count_assignments(mem);
        if (!assembled.count(key)) {
            assembled[key].assign(rows * width, 0.0);
            filled[key].assign(rows, false);
            meta[key] = {pc.members, pc.line};
        }
        if (!pc.row_assignment) {
            if (pc.values.size() != rows * width)
                throw ParseError(pc.line, 1, "cpt table needs " + std::to_string(rows * width) +
                                                 " entries");
            assembled[key] = pc.values;
            for (std::size_t r = 0; r < rows; ++r) filled[key][r] = true;
        } else {
            if (pc.values.size() != width)
                throw ParseError(pc.line, 1,
                                 "cpt row needs " + std::to_string(width) + " entries");
            std::map<std::string, std::size_t> given;
            for (auto& [l, v] : *pc.row_assignment) {
                if (!m.has_label(l)) throw ParseError(pc.line, 1, "unknown parent '" + l + "'");
                given[l] = v;
            }
            if (given.size() != parents.size())
                throw ParseError(pc.line, 1, "row must assign every parent exactly once");
            std::size_t row = 0;
            for (std::size_t p : parents) {
                auto it = given.find(m.event(p).label);
                if (it == given.end())
                    throw ParseError(pc.line, 1,
                                     "row missing parent " + m.event(p).label);
                if (it->second >= m.arity(p))
                    throw ParseError(pc.line, 1, "parent value out of range");
                row = row * m.arity(p) + it->second;
            }
            std::copy(pc.values.begin(), pc.values.end(),
                      assembled[key].begin() + static_cast<long>(row * width));
            filled[key][row] = true;
        }
    }
    for (auto& [key, ok] : filled) {
        for (bool b : ok)
            if (!b)
                throw ParseError(meta[key].second, 1,
                                 "cpt for " + key + " is missing parent rows");
        try {
            m.set_cpt(meta[key].first, assembled[key]);
        } catch (const Error& e) {
            throw NonNormalized(e.what());
        }
    }
    return out;
}

inline AnalysisDirectives parse_analysis(const RawSection& sec) {
    AnalysisDirectives out;
    for (const auto& [line, content] : sec.lines) {
        auto kv = split_on(content, '=');
        if (!kv || kv->values.size() != 1)
            throw ParseError(line, 1, "analysis lines are 'key = value'");
        if (kv->key == "tol") {
            if (!parse_double(kv->values[0], out.tol) || out.tol < 0)
                throw ParseError(line, 1, "bad tol");
        } else if (kv->key == "denominator_cap") {
            long long v;
            if (!parse_long(kv->values[0], v) || v < 1)
                throw ParseError(line, 1, "bad denominator_cap");
            out.denominator_cap = v;
        } else if (kv->key == "seed") {
            long long v;
            if (!parse_long(kv->values[0], v) || v < 0) throw ParseError(line, 1, "bad seed");
            out.seed = static_cast<std::uint64_t>(v);
        } else {
            throw ParseError(line, 1, "unknown analysis key '" + kv->key + "'");
        }
    }
    return out;
}

} // namespace fmt_detail

inline ScenarioFile parse_scenario_file(const std::string& text) {
    using namespace fmt_detail;
    int version = 1;
    std::vector<RawSection> sections = split_sections(text, version);
    ScenarioFile out;
    out.version = version;
    bool have_primary = false;
    for (const RawSection& sec : sections) {
        if (sec.name == "analysis") {
            out.analysis = parse_analysis(sec);
            continue;
        }
        if (have_primary)
            throw ParseError(sec.line, 1, "file must contain exactly one primary section");
        if (sec.name == "phenomenon") out.block = parse_phenomenon(sec);
        else if (sec.name == "hv-model") out.block = parse_hv_model(sec);
        else if (sec.name == "quantum") out.block = parse_quantum(sec);
        else if (sec.name == "causal-model") out.block = parse_causal(sec);
        else throw ParseError(sec.line, 1, "unknown section [" + sec.name + "]");
        have_primary = true;
    }
    if (!have_primary) throw ParseError(1, 1, "file has no primary section");
    return out;
}

namespace fmt_detail {

inline void write_table_rows(std::ostringstream& os, const Scenario& sc,
                             const std::function<std::string(std::size_t)>& cell,
                             const std::string& prefix) {
    for (std::size_t a = 0; a < sc.alice_settings; ++a)
        for (std::size_t b = 0; b < sc.bob_settings; ++b) {
            os << prefix << " a=" << a << " b=" << b << " :";
            for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
                for (std::size_t B = 0; B < sc.bob_outcomes; ++B)
                    os << " " << cell(sc.cell(a, b, A, B));
            os << "\n";
        }
}

inline std::string complex_to_string(const Complex& z) {
    std::string re = num_to_string(z.real());
    if (z.imag() == 0.0) return re;
    std::string im = num_to_string(std::fabs(z.imag()));
    if (z.real() == 0.0) return (z.imag() < 0 ? "-" : "") + im + "i";
    return re + (z.imag() < 0 ? "-" : "+") + im + "i";
}

} // namespace fmt_detail

inline std::string serialize(const ScenarioFile& file) {
    using namespace fmt_detail;
    std::ostringstream os;
    os << "version = " << file.version << "\n\n";
    if (const auto* ph = std::get_if<PhenomenonBlock>(&file.block)) {
        const Scenario& sc = ph->scenario;
        os << "[phenomenon]\n";
        os << "settings = " << sc.alice_settings << " " << sc.bob_settings << "\n";
        os << "outcomes = " << sc.alice_outcomes << " " << sc.bob_outcomes << "\n";
        os << "preparation = " << sc.preparation << "\n";
        if (ph->exact)
            write_table_rows(os, sc,
                             [&](std::size_t c) { return num_to_string(ph->exact_table->table()[c]); },
                             "row");
        else
            write_table_rows(os, sc,
                             [&](std::size_t c) { return num_to_string(ph->float_table->table()[c]); },
                             "row");
    } else if (const auto* hv = std::get_if<HvModelBlock>(&file.block)) {
        const Scenario& sc = hv->scenario;
        os << "[hv-model]\n";
        os << "settings = " << sc.alice_settings << " " << sc.bob_settings << "\n";
        os << "outcomes = " << sc.alice_outcomes << " " << sc.bob_outcomes << "\n";
        os << "preparation = " << sc.preparation << "\n";
        const auto& labels = hv->exact ? hv->exact_model->lambda_labels()
                                       : hv->float_model->lambda_labels();
        os << "lambdas =";
        for (const auto& l : labels) os << " " << l;
        os << "\nprior :";
        for (std::size_t i = 0; i < labels.size(); ++i)
            os << " "
               << (hv->exact ? num_to_string(hv->exact_model->prior()[i])
                             : num_to_string(hv->float_model->prior()[i]));
        os << "\n";
        for (std::size_t lam = 0; lam < labels.size(); ++lam)
            write_table_rows(os, sc,
                             [&](std::size_t c) {
                                 return hv->exact
                                            ? num_to_string(
                                                  hv->exact_model->response()[lam * sc.cells() + c])
                                            : num_to_string(
                                                  hv->float_model->response()[lam * sc.cells() + c]);
                             },
                             "response " + labels[lam]);
    } else if (const auto* q = std::get_if<QuantumBlock>(&file.block)) {
        os << "[quantum]\n";
        os << "state = " << q->state_spec << "\n";
        if (q->state_spec == "matrix") {
            os << "rho :";
            for (int i = 0; i < 16; ++i) os << " " << complex_to_string(q->rho(i / 4, i % 4));
            os << "\n";
        }
        os << "alice =";
        for (double t : q->alice_angles) os << " " << num_to_string(t);
        os << "\nbob =";
        for (double t : q->bob_angles) os << " " << num_to_string(t);
        os << "\n";
    } else if (const auto* cb = std::get_if<CausalBlock>(&file.block)) {
        const CausalModel& m = cb->model;
        os << "[causal-model]\n";
        for (std::size_t i = 0; i < m.size(); ++i) {
            const SpacetimeEvent& e = m.event(i);
            os << "event " << e.label << " kind=" << kind_name(e.kind)
               << " t=" << num_to_string(e.t) << " x=" << num_to_string(e.x)
               << " arity=" << m.arity(i) << "\n";
        }
        for (auto [u, v] : m.edges())
            os << "edge " << m.event(u).label << " -> " << m.event(v).label << "\n";
        for (const CausalModel::Block* b : m.factorization()) {
            std::string members;
            for (std::size_t mem : b->members)
                members += (members.empty() ? "" : " ") + m.event(mem).label;
            std::size_t width = m.count_assignments(b->members);
            std::size_t rows = m.count_assignments(b->parents);
            for (std::size_t r = 0; r < rows; ++r) {
                os << "cpt " << members;
                if (!b->parents.empty()) {
                    os << " |";
                    std::size_t rem = r;
                    std::vector<std::size_t> vals(b->parents.size());
                    for (std::size_t k = b->parents.size(); k > 0; --k) {
                        vals[k - 1] = rem % m.arity(b->parents[k - 1]);
                        rem /= m.arity(b->parents[k - 1]);
                    }
                    for (std::size_t k = 0; k < b->parents.size(); ++k)
                        os << " " << m.event(b->parents[k]).label << "=" << vals[k];
                }
                os << " :";
                for (std::size_t k = 0; k < width; ++k)
                    os << " " << num_to_string(b->table[r * width + k]);
                os << "\n";
            }
        }
    }
    const AnalysisDirectives def;
    if (file.analysis.tol != def.tol || file.analysis.denominator_cap != def.denominator_cap ||
        file.analysis.seed) {
        os << "\n[analysis]\n";
        if (file.analysis.tol != def.tol) os << "tol = " << num_to_string(file.analysis.tol) << "\n";
        if (file.analysis.denominator_cap != def.denominator_cap)
            os << "denominator_cap = " << file.analysis.denominator_cap << "\n";
        if (file.analysis.seed) os << "seed = " << *file.analysis.seed << "\n";
    }
    return os.str();
}

} // namespace bellscope
