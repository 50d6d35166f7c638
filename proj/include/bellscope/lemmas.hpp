#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bellscope/principles.hpp"
#include "bellscope/rng.hpp"

namespace bellscope {

// The implication network among postulates and principles, verified on random
// finite instances. Numbering follows the order the lemmas are stated.
struct LemmaSpec {
    int id;
    std::vector<Principle> antecedents;
    Principle consequent;
    const char* statement;
    bool needs_cone_respecting_edges;
};

inline const std::vector<LemmaSpec>& lemma_table() {
    static const std::vector<LemmaSpec> table = {
        {1,
         {Principle::common_causes, Principle::decorrelating_explanation},
         Principle::reichenbach,
         "common causes + decorrelating explanation => reichenbach",
         false},
        {2,
         {Principle::reichenbach, Principle::relativistic_causality},
         Principle::local_causality,
         "reichenbach + relativistic causality => local causality",
         true},
        {3,
         {Principle::relativistic_causality, Principle::common_causes, Principle::free_choice},
         Principle::local_agency,
         "relativistic causality + common causes + free choice => local agency",
         true},
        {4,
         {Principle::agent_causation, Principle::relativistic_causality},
         Principle::locality_principle,
         "agent-causation + relativistic causality => locality",
         true},
        {5,
         {Principle::agent_causation, Principle::relativistic_causality},
         Principle::local_agency,
         "agent-causation + relativistic causality => local agency",
         true},
        {6,
         {Principle::agent_causation, Principle::relativistic_causality},
         Principle::no_superdeterminism,
         "agent-causation + relativistic causality => no superdeterminism",
         true},
        {7,
         {Principle::free_choice, Principle::common_causes},
         Principle::agent_causation,
         "free choice + common causes => agent-causation",
         false},
    };
    return table;
}

// Random embedded causal model on 4-6 binary nodes. Coordinates are drawn in
// a 1+1 slab; when cone_respecting is set, candidate edges are exactly the
// in-cone pairs. Choice nodes are parentless most of the time so both filter
// branches of the lemma harness get exercised.
inline CausalModel random_causal_model(Rng& rng, bool cone_respecting) {
    std::size_t n = 4 + rng.below(3);
    struct Node {
        double t, x;
        EventKind kind;
    };
    std::vector<Node> nodes(n);
    for (std::size_t i = 0; i < n; ++i)
        nodes[i] = {rng.uniform(0.0, 3.0), rng.uniform(-3.0, 3.0), EventKind::latent};
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.t < b.t; });

    std::size_t n_choices = 1 + rng.below(2);
    for (std::size_t k = 0; k < n_choices; ++k)
        nodes[rng.below(n)].kind = EventKind::free_choice;
    for (std::size_t i = 0; i < n; ++i)
        if (nodes[i].kind == EventKind::latent && rng.coin(0.5))
            nodes[i].kind = EventKind::outcome;

    CausalModel m;
    for (std::size_t i = 0; i < n; ++i)
        m.add_event("v" + std::to_string(i), nodes[i].kind, nodes[i].t, nodes[i].x, 2);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool allowed = cone_respecting ? in_past_lightcone(m.event(i), m.event(j))
                                           : m.event(i).t < m.event(j).t;
            if (!allowed) continue;
            double p = m.event(j).kind == EventKind::free_choice ? 0.15 : 0.4;
            if (rng.coin(p)) m.add_edge(m.event(i).label, m.event(j).label);
        }

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rows = m.count_assignments(m.parents(i));
        std::vector<double> table;
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<double> d = rng.dirichlet(2);
            table.push_back(d[0]);
            table.push_back(d[1]);
        }
        m.set_cpt({m.event(i).label}, table);
    }
    return m;
}

struct LemmaCounterexample {
    std::uint64_t trial;
    PrincipleVerdict consequent_verdict;
};

struct LemmaReport {
    int lemma_id = 0;
    std::string statement;
    std::size_t trials = 0;
    std::size_t tested = 0;
    std::vector<LemmaCounterexample> counterexamples;

    bool refuted() const { return !counterexamples.empty(); }
};

// Sample models, keep those satisfying every antecedent check, and assert the
// consequent on each. Expected outcome for all seven lemmata: tested > 0 and
// zero counterexamples.
inline LemmaReport verify_lemma(int lemma_id, std::size_t trials, std::uint64_t seed,
                                double tol = 1e-9) {
    const LemmaSpec* spec = nullptr;
    for (const LemmaSpec& s : lemma_table())
        if (s.id == lemma_id) spec = &s;
    if (!spec) throw DomainError("verify_lemma: lemma id must be 1..7");

    LemmaReport report;
    report.lemma_id = lemma_id;
    report.statement = spec->statement;
    report.trials = trials;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::split(seed + static_cast<std::uint64_t>(lemma_id) * 0x51ed2701ull, trial);
        CausalModel m = random_causal_model(rng, spec->needs_cone_respecting_edges);
        bool accepted = true;
        for (Principle p : spec->antecedents)
            if (!check_principle(m, p, tol).holds) { accepted = false; break; }
        if (!accepted) continue;
        ++report.tested;
        PrincipleVerdict v = check_principle(m, spec->consequent, tol);
        if (!v.holds) report.counterexamples.push_back({trial, std::move(v)});
    }
    if (report.tested == 0)
        throw InsufficientSamples("verify_lemma: no sample satisfied the antecedents");
    return report;
}

} // namespace bellscope
