// bellscope: analyze bipartite phenomena, hidden-variable models and causal
// models. Subcommands: check, membership, chsh, fine, causal, lemmas,
// reconcile. Exit code 0 means every requested property held, 1 means at
// least one failed, 2 means an error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "bellscope/bell_dags.hpp"
#include "bellscope/implication.hpp"
#include "bellscope/report.hpp"
#include "bellscope/text_format.hpp"

using namespace bellscope;

namespace {

struct Options {
    std::string file;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<std::int64_t> denominator_cap;
    bool deterministic = false;
    int lemma_id = 0;
    std::size_t trials = 500;
    std::vector<std::string> principles;
};

struct LoadedInput {
    ScenarioFile file;
    std::string digest;
    std::string path;
};

LoadedInput load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    LoadedInput li{parse_scenario_file(bytes), fnv1a_hex(bytes), path};
    return li;
}

double effective_tol(const LoadedInput& li, const Options& opt) {
    return opt.tol ? *opt.tol : li.file.analysis.tol;
}

std::int64_t effective_cap(const LoadedInput& li, const Options& opt) {
    return opt.denominator_cap ? *opt.denominator_cap : li.file.analysis.denominator_cap;
}

// Exact table for the polytope; notes whether rationalization happened.
struct ExactInput {
    Phenomenon<Rational> table;
    bool rationalized_from_float;
    std::optional<Phenomenon<double>> float_origin;
};

ExactInput exact_phenomenon_of(const LoadedInput& li, const Options& opt) {
    std::int64_t cap = effective_cap(li, opt);
    if (const auto* ph = std::get_if<PhenomenonBlock>(&li.file.block)) {
        if (ph->exact) return {*ph->exact_table, false, std::nullopt};
        return {rationalized(*ph->float_table, cap), true, *ph->float_table};
    }
    if (const auto* hv = std::get_if<HvModelBlock>(&li.file.block)) {
        if (hv->exact) return {predicted_phenomenon(*hv->exact_model), false, std::nullopt};
        Phenomenon<double> f = predicted_phenomenon(*hv->float_model);
        return {rationalized(f, cap), true, f};
    }
    if (const auto* q = std::get_if<QuantumBlock>(&li.file.block)) {
        Phenomenon<double> f = born_phenomenon(q->state(), q->alice_dirs(), q->bob_dirs());
        return {rationalized(f, cap), true, f};
    }
    throw DomainError("this command needs a phenomenon, hv-model or quantum input");
}

std::string render_witness_line(const Json& w) {
    std::string s;
    if (w.contains("where"))
        for (auto& [k, v] : w["where"].items()) s += k + "=" + v.dump() + " ";
    if (w.contains("x")) s += "x=" + w["x"].dump() + " y=" + w["y"].dump() + " z=" + w["z"].dump() + " ";
    if (w.contains("lhs")) s += "lhs=" + w["lhs"].get<std::string>() + " rhs=" + w["rhs"].get<std::string>();
    if (w.contains("gap")) s += "gap=" + w["gap"].get<std::string>();
    if (w.contains("note")) s += " (" + w["note"].get<std::string>() + ")";
    return s;
}

void print_verdict_table(const Json& verdicts, const std::string& key) {
    std::size_t width = 0;
    for (const auto& v : verdicts) width = std::max(width, v[key].get<std::string>().size());
    for (const auto& v : verdicts) {
        std::string name = v[key].get<std::string>();
        std::printf("  %-*s  %s\n", static_cast<int>(width), name.c_str(),
                    v["holds"].get<bool>() ? "holds" : "FAILS");
        if (v.contains("witness"))
            std::printf("  %-*s    witness: %s\n", static_cast<int>(width), "",
                        render_witness_line(v["witness"]).c_str());
    }
}

// ----- commands ------------------------------------------------------------

int cmd_check(const LoadedInput& li, const Options& opt, Json& report) {
    Json verdicts = Json::array();
    double tol = effective_tol(li, opt);
    if (const auto* ph = std::get_if<PhenomenonBlock>(&li.file.block)) {
        if (ph->exact) {
            verdicts.push_back(verdict_json(is_predictable(*ph->exact_table)));
            verdicts.push_back(verdict_json(is_signal_local(*ph->exact_table)));
        } else {
            verdicts.push_back(verdict_json(is_predictable(*ph->float_table, tol)));
            verdicts.push_back(verdict_json(is_signal_local(*ph->float_table, tol)));
        }
    } else if (const auto* hv = std::get_if<HvModelBlock>(&li.file.block)) {
        auto run = [&](const auto& model, auto tolerance) {
            verdicts.push_back(verdict_json(is_predetermined(model, tolerance)));
            verdicts.push_back(verdict_json(is_local(model, tolerance)));
            verdicts.push_back(verdict_json(is_locally_causal(model, tolerance)));
            auto f = predicted_phenomenon(model);
            verdicts.push_back(verdict_json(is_predictable(f, tolerance)));
            verdicts.push_back(verdict_json(is_signal_local(f, tolerance)));
        };
        if (hv->exact) run(*hv->exact_model, Rational(0));
        else run(*hv->float_model, tol);
    } else if (const auto* q = std::get_if<QuantumBlock>(&li.file.block)) {
        Phenomenon<double> f = born_phenomenon(q->state(), q->alice_dirs(), q->bob_dirs());
        verdicts.push_back(verdict_json(is_predictable(f, tol)));
        verdicts.push_back(verdict_json(is_signal_local(f, tol)));
    } else {
        throw DomainError("check applies to phenomenon, hv-model and quantum inputs; "
                          "use 'causal' for causal models");
    }
    report["verdicts"] = verdicts;
    bool all = true;
    std::printf("check: %s\n", li.file.kind());
    print_verdict_table(verdicts, "property");
    for (const auto& v : verdicts) all &= v["holds"].get<bool>();
    return all ? 0 : 1;
}

int cmd_membership(const LoadedInput& li, const Options& opt, Json& report) {
    ExactInput in = exact_phenomenon_of(li, opt);
    const Scenario& sc = in.table.scenario();
    if (in.rationalized_from_float) {
        report["note"] = "input rationalized with denominator cap " +
                         std::to_string(effective_cap(li, opt)) +
                         "; the verdict applies to the rationalized table";
        std::printf("note: %s\n", report["note"].get<std::string>().c_str());
    }
    MembershipResult r = membership(in.table);
    report["membership"] = membership_json(r, sc);
    if (sc.alice_outcomes == 2 && sc.bob_outcomes == 2) {
        report["chsh"] = chsh_json(in.table);
        if (in.float_origin) report["chsh_float_origin"] = chsh_json(*in.float_origin);
    }
    std::printf("membership: %s\n", r.member ? "member (Bell-local)" : "NOT a member");
    if (r.member) {
        std::printf("  decomposition over %zu strategies:\n",
                    report["membership"]["weights"].size());
        for (const auto& w : report["membership"]["weights"])
            std::printf("    %-12s %s\n", w["strategy"].get<std::string>().c_str(),
                        w["weight"].get<std::string>().c_str());
    } else {
        const auto& cert = report["membership"]["certificate"];
        std::printf("  certificate: vertex bound %s, value on phenomenon %s (~%.9f)\n",
                    cert["vertex_bound"].get<std::string>().c_str(),
                    cert["value_on_phenomenon"].get<std::string>().c_str(),
                    cert["value_on_phenomenon_float"].get<double>());
    }
    if (report.contains("chsh")) {
        const Json& src = report.contains("chsh_float_origin") ? report["chsh_float_origin"]
                                                               : report["chsh"];
        std::printf("  max |CHSH| = %.9f\n", src["max_abs_float"].get<double>());
    }
    return r.member ? 0 : 1;
}

int cmd_chsh(const LoadedInput& li, const Options& opt, Json& report) {
    ExactInput in = exact_phenomenon_of(li, opt);
    const Phenomenon<Rational>& f = in.table;
    if (f.scenario().alice_outcomes != 2 || f.scenario().bob_outcomes != 2)
        throw OutcomeArityError("chsh needs two outcomes per side");
    Json j = in.float_origin ? chsh_json(*in.float_origin) : chsh_json(f);
    report["chsh"] = j;
    std::printf("correlators E(a,b):\n");
    for (const auto& e : j["correlators"])
        std::printf("  a=%llu b=%llu  E = %+.9f\n",
                    static_cast<unsigned long long>(e["a"].get<std::size_t>()),
                    static_cast<unsigned long long>(e["b"].get<std::size_t>()),
                    e["E_float"].get<double>());
    std::printf("chsh over setting quadruples:\n");
    for (const auto& e : j["quadruples"])
        std::printf("  (a1=%llu a2=%llu b1=%llu b2=%llu)  S = %+.9f\n",
                    static_cast<unsigned long long>(e["a1"].get<std::size_t>()),
                    static_cast<unsigned long long>(e["a2"].get<std::size_t>()),
                    static_cast<unsigned long long>(e["b1"].get<std::size_t>()),
                    static_cast<unsigned long long>(e["b2"].get<std::size_t>()),
                    e["chsh_float"].get<double>());
    std::printf("max |CHSH| = %.9f\n", j["max_abs_float"].get<double>());
    return 0;
}

int cmd_fine(const LoadedInput& li, const Options& opt, Json& report) {
    const auto* hv = std::get_if<HvModelBlock>(&li.file.block);
    if (!hv) throw DomainError("fine needs an hv-model input");
    Json steps = Json::array();
    bool ok = true;
    auto note = [&](const std::string& name, bool pass, const std::string& detail = "") {
        Json s;
        s["step"] = name;
        s["ok"] = pass;
        if (!detail.empty()) s["detail"] = detail;
        steps.push_back(s);
        std::printf("  %-34s %s%s%s\n", name.c_str(), pass ? "ok" : "FAILED",
                    detail.empty() ? "" : "  ", detail.c_str());
        ok &= pass;
    };
    std::printf("fine round trip:\n");
    if (hv->exact) {
        const HVModel<Rational>& m = *hv->exact_model;
        PropertyVerdict<Rational> lc = is_locally_causal(m);
        note("local causality (exact)", lc.holds);
        if (!lc.holds) {
            report["steps"] = steps;
            return 1;
        }
        HVModel<Rational> d = determinize(m);
        note("determinize: predetermination", is_predetermined(d).holds);
        note("determinize: locality", is_local(d).holds);
        Phenomenon<Rational> f = predicted_phenomenon(m);
        note("determinize: reproduces at tol 0", reproduces(d, f, Rational(0)),
             "lambda' support " + std::to_string(d.support_size()));
        MembershipResult r = membership(f);
        note("membership of predicted phenomenon", r.member);
        if (r.member) {
            HVModel<Rational> back = model_from_weights(r, m.scenario());
            note("weights model reproduces at tol 0", reproduces(back, f, Rational(0)));
            report["membership"] = membership_json(r, m.scenario());
        }
    } else {
        double tol = effective_tol(li, opt);
        const HVModel<double>& m = *hv->float_model;
        PropertyVerdict<double> lc = is_locally_causal(m, tol);
        note("local causality (tol)", lc.holds);
        if (!lc.holds) {
            report["steps"] = steps;
            return 1;
        }
        HVModel<double> d = determinize(m, tol);
        note("determinize: predetermination", is_predetermined(d, tol).holds);
        note("determinize: locality", is_local(d, tol).holds);
        Phenomenon<double> f = predicted_phenomenon(m);
        note("determinize: reproduces within tol",
             reproduces(d, f, tol * static_cast<double>(d.support_size())));
        Phenomenon<Rational> fr = rationalized(f, effective_cap(li, opt));
        MembershipResult r = membership(fr);
        note("membership of rationalized phenomenon", r.member);
        if (r.member) report["membership"] = membership_json(r, m.scenario());
    }
    report["steps"] = steps;
    return ok ? 0 : 1;
}

const std::vector<Principle>& all_principles() {
    static const std::vector<Principle> v = {
        Principle::causal_arrow,       Principle::relativistic_causality,
        Principle::free_choice,        Principle::common_causes,
        Principle::decorrelating_explanation, Principle::reichenbach,
        Principle::local_causality,    Principle::local_agency,
        Principle::agent_causation,    Principle::no_superdeterminism,
        Principle::locality_principle, Principle::predetermination_principle,
        Principle::no_fine_tuning,
    };
    return v;
}

Principle principle_by_name(const std::string& name) {
    for (Principle p : all_principles())
        if (name == principle_name(p)) return p;
    throw DomainError("unknown principle '" + name + "'");
}

int cmd_causal(const LoadedInput& li, const Options& opt, Json& report) {
    const auto* cb = std::get_if<CausalBlock>(&li.file.block);
    if (!cb) throw DomainError("causal needs a causal-model input");
    double tol = effective_tol(li, opt);
    std::vector<Principle> selected;
    if (opt.principles.empty()) selected = all_principles();
    else
        for (const auto& name : opt.principles) selected.push_back(principle_by_name(name));
    Json verdicts = Json::array();
    bool all = true;
    for (Principle p : selected) {
        PrincipleVerdict v = check_principle(cb->model, p, tol);
        verdicts.push_back(principle_json(v));
        all &= v.holds;
    }
    report["verdicts"] = verdicts;
    std::printf("causal principles (%zu nodes, %zu edges):\n", cb->model.size(),
                cb->model.edges().size());
    print_verdict_table(verdicts, "principle");
    if (cb->model.superdeterministic_candidate())
        std::printf("  note: model is a superdeterministic candidate (a choice has parents)\n");
    return all ? 0 : 1;
}

int cmd_lemmas(const Options& opt, Json& report) {
    if (opt.lemma_id < 1 || opt.lemma_id > 7)
        throw DomainError("lemmas needs --id in 1..7");
    if (!opt.seed) throw DomainError("lemmas needs --seed");
    LemmaReport r = verify_lemma(opt.lemma_id, opt.trials, *opt.seed);
    report["lemma"] = lemma_json(r);
    std::printf("lemma %d: %s\n", r.lemma_id, r.statement.c_str());
    std::printf("  %zu counterexamples / %zu tested (of %zu trials)\n",
                r.counterexamples.size(), r.tested, r.trials);
    return r.refuted() ? 1 : 0;
}

int cmd_reconcile(const LoadedInput& li, const Options& opt, Json& report) {
    const auto* cb = std::get_if<CausalBlock>(&li.file.block);
    if (!cb) throw DomainError("reconcile needs a causal-model input");
    double tol = effective_tol(li, opt);
    const CausalModel& m = cb->model;

    struct Row {
        Principle p;
        const char* role;
    };
    const std::vector<Row> postulates = {
        {Principle::free_choice, "postulate"},
        {Principle::relativistic_causality, "postulate"},
        {Principle::common_causes, "postulate"},
        {Principle::decorrelating_explanation, "postulate"},
    };
    const std::vector<Row> derived = {
        {Principle::reichenbach, "from common causes + decorrelating explanation"},
        {Principle::agent_causation, "from free choice + common causes"},
        {Principle::local_causality, "from reichenbach + relativistic causality"},
        {Principle::local_agency, "from relativistic causality + common causes + free choice"},
        {Principle::locality_principle, "from agent-causation + relativistic causality"},
        {Principle::no_superdeterminism, "from agent-causation + relativistic causality"},
    };

    Json jpost = Json::array(), jder = Json::array();
    bool all_postulates = true;
    std::printf("reconciliation report\n");
    std::printf("  the four postulates:\n");
    for (const Row& row : postulates) {
        PrincipleVerdict v = check_principle(m, row.p, tol);
        Json pj = principle_json(v);
        jpost.push_back(pj);
        all_postulates &= v.holds;
        std::printf("    %-28s %s\n", principle_name(row.p), v.holds ? "holds" : "REJECTED");
        if (!v.holds)
            std::printf("      witness: %s\n",
                        render_witness_line(pj["witness"]).c_str());
    }
    std::printf("  derived principles:\n");
    for (const Row& row : derived) {
        PrincipleVerdict v = check_principle(m, row.p, tol);
        Json pj = principle_json(v);
        pj["derivation"] = row.role;
        jder.push_back(pj);
        std::printf("    %-28s %s  (%s)\n", principle_name(row.p),
                    v.holds ? "holds" : "fails", row.role);
    }
    report["postulates"] = jpost;
    report["derived"] = jder;
    if (all_postulates) {
        std::printf("  all four postulates hold: the model cannot reproduce a Bell-nonlocal"
                    " phenomenon.\n");
    } else {
        std::printf("  rejected postulates mark where this model departs from the joint"
                    " assumptions.\n");
    }
    report["all_postulates_hold"] = all_postulates;
    return all_postulates ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bellscope: Bell-locality, hidden-variable and causal-structure checks"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd, bool needs_file) {
        if (needs_file)
            cmd->add_option("file", opt.file, "scenario file")->required();
        cmd->add_option("--out", opt.out_path, "write a JSON report to this path");
        cmd->add_option("--seed", opt.seed, "seed for randomized analysis");
        cmd->add_option("--tol", opt.tol, "override the floating tolerance");
        cmd->add_option("--denominator-cap", opt.denominator_cap,
                        "rationalization denominator cap");
        cmd->add_flag("--deterministic", opt.deterministic,
                      "require an explicit seed and omit timing from reports");
    };

    CLI::App* c_check = app.add_subcommand("check", "definitional property verdicts");
    add_common(c_check, true);
    CLI::App* c_member = app.add_subcommand("membership", "exact local-polytope membership");
    add_common(c_member, true);
    CLI::App* c_chsh = app.add_subcommand("chsh", "correlators and CHSH values");
    add_common(c_chsh, true);
    CLI::App* c_fine = app.add_subcommand("fine", "determinize/recompose round trip");
    add_common(c_fine, true);
    CLI::App* c_causal = app.add_subcommand("causal", "causal principle verdicts");
    add_common(c_causal, true);
    c_causal->add_option("--principles", opt.principles,
                         "comma-separated subset of principles to check")
        ->delimiter(',');
    CLI::App* c_lemmas = app.add_subcommand("lemmas", "verify a lemma on random instances");
    add_common(c_lemmas, false);
    c_lemmas->add_option("--id", opt.lemma_id, "lemma id, 1..7")->required();
    c_lemmas->add_option("--trials", opt.trials, "number of sampled models");
    CLI::App* c_reconcile = app.add_subcommand("reconcile", "four-postulate reconciliation view");
    add_common(c_reconcile, true);

    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();
    Json report;
    report["format"] = 1;
    int exit_code = 2;
    try {
        if (opt.deterministic && app.got_subcommand(c_lemmas) && !opt.seed)
            throw DomainError("--deterministic requires an explicit --seed");

        std::optional<LoadedInput> input;
        if (!opt.file.empty()) {
            input = load(opt.file);
            if (!opt.seed && input->file.analysis.seed && !opt.deterministic)
                opt.seed = input->file.analysis.seed;
        }

        if (app.got_subcommand(c_lemmas)) {
            report["command"] = "lemmas";
            report["input"] = {{"digest", fnv1a_hex("lemmas:" + std::to_string(opt.lemma_id))}};
            if (opt.seed) report["seed"] = *opt.seed;
            exit_code = cmd_lemmas(opt, report);
        } else {
            report["command"] = app.get_subcommands().front()->get_name();
            report["input"] = {{"digest", input->digest}, {"kind", input->file.kind()}};
            if (opt.seed) report["seed"] = *opt.seed;
            if (app.got_subcommand(c_check)) exit_code = cmd_check(*input, opt, report);
            else if (app.got_subcommand(c_member)) exit_code = cmd_membership(*input, opt, report);
            else if (app.got_subcommand(c_chsh)) exit_code = cmd_chsh(*input, opt, report);
            else if (app.got_subcommand(c_fine)) exit_code = cmd_fine(*input, opt, report);
            else if (app.got_subcommand(c_causal)) exit_code = cmd_causal(*input, opt, report);
            else if (app.got_subcommand(c_reconcile))
                exit_code = cmd_reconcile(*input, opt, report);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.code().c_str(), e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error [internal]: %s\n", e.what());
        return 2;
    }

    report["exit"] = exit_code;
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (!opt.deterministic) {
        report["timing_ms"] = ms;
        std::printf("elapsed: %.1f ms\n", ms);
    }
    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) {
            std::fprintf(stderr, "error [io]: cannot write %s\n", opt.out_path.c_str());
            return 2;
        }
        out << report.dump(2) << "\n";
    }
    return exit_code;
}
