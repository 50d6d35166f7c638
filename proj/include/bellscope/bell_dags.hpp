#pragma once

#include <vector>

#include "bellscope/causal_model.hpp"
#include "bellscope/phenomenon.hpp"

namespace bellscope {

enum class BellDagVariant { local_causal, superluminal, superdeterministic };

// Canonical embedding of the bipartite experiment:
//   c (0,0), lambda (1,0), a (2,-2), b (2,2), A (3,-2), B (3,2).
// local_causal edges: c->lambda, lambda->A, lambda->B, a->A, b->B.
// superluminal adds a->B; superdeterministic adds lambda->a and lambda->b.
// CPTs are left unset for the caller to fill. lambda_arity sizes the hidden
// node; choices and outcomes are binary, c is a fixed label.
inline CausalModel bell_dag(BellDagVariant variant, std::size_t lambda_arity = 2) {
    CausalModel m;
    m.add_event("c", EventKind::preparation, 0, 0, 1);
    m.add_event("lambda", EventKind::latent, 1, 0, lambda_arity);
    m.add_event("a", EventKind::free_choice, 2, -2, 2);
    m.add_event("b", EventKind::free_choice, 2, 2, 2);
    m.add_event("A", EventKind::outcome, 3, -2, 2);
    m.add_event("B", EventKind::outcome, 3, 2, 2);
    m.add_edge("c", "lambda");
    m.add_edge("lambda", "A");
    m.add_edge("lambda", "B");
    m.add_edge("a", "A");
    m.add_edge("b", "B");
    if (variant == BellDagVariant::superluminal) m.add_edge("a", "B");
    if (variant == BellDagVariant::superdeterministic) {
        m.add_edge("lambda", "a");
        m.add_edge("lambda", "b");
    }
    return m;
}

// Shared classical coin: lambda fair, both outcomes copy it, settings ignored.
inline CausalModel bell_dag_classical() {
    CausalModel m = bell_dag(BellDagVariant::local_causal);
    m.set_cpt({"c"}, {1.0});
    m.set_cpt({"lambda"}, {0.5, 0.5});
    m.set_cpt({"a"}, {0.5, 0.5});
    m.set_cpt({"b"}, {0.5, 0.5});
    // A | lambda, a: copies lambda. Rows over (lambda, a), lambda slowest.
    m.set_cpt({"A"}, {1, 0, 1, 0, 0, 1, 0, 1});
    m.set_cpt({"B"}, {1, 0, 1, 0, 0, 1, 0, 1});
    return m;
}

// Superdeterministic variant with the hidden variable forcing the choices.
inline CausalModel bell_dag_superdeterministic_correlating() {
    CausalModel m = bell_dag(BellDagVariant::superdeterministic);
    m.set_cpt({"c"}, {1.0});
    m.set_cpt({"lambda"}, {0.5, 0.5});
    m.set_cpt({"a"}, {1, 0, 0, 1}); // a = lambda
    m.set_cpt({"b"}, {1, 0, 0, 1});
    m.set_cpt({"A"}, {1, 0, 1, 0, 0, 1, 0, 1});
    m.set_cpt({"B"}, {1, 0, 1, 0, 0, 1, 0, 1});
    return m;
}

// Tuned PR-box mechanism: A = lambda, B = lambda xor (a and b). The a->B edge
// carries real dependence, but the marginal P(B|a) is flat, so the model is
// signal-local purely by parameter tuning. The canonical faithfulness
// violation is the pair (a, B) given nothing.
inline CausalModel pr_box_tuned_model() {
    CausalModel m;
    m.add_event("lambda", EventKind::latent, 1, 0, 2);
    m.add_event("a", EventKind::free_choice, 2, -2, 2);
    m.add_event("b", EventKind::free_choice, 2, 2, 2);
    m.add_event("A", EventKind::outcome, 3, -2, 2);
    m.add_event("B", EventKind::outcome, 3, 2, 2);
    m.add_edge("lambda", "A");
    m.add_edge("lambda", "B");
    m.add_edge("a", "B"); // superluminal
    m.add_edge("b", "B");
    m.set_cpt({"lambda"}, {0.5, 0.5});
    m.set_cpt({"a"}, {0.5, 0.5});
    m.set_cpt({"b"}, {0.5, 0.5});
    m.set_cpt({"A"}, {1, 0, 0, 1}); // A = lambda
    // B | (lambda, a, b): rows lambda slowest, then a, then b.
    std::vector<double> bt;
    for (std::size_t lam = 0; lam < 2; ++lam)
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                std::size_t val = lam ^ (a & b);
                bt.push_back(val == 0 ? 1.0 : 0.0);
                bt.push_back(val == 1 ? 1.0 : 0.0);
            }
    m.set_cpt({"B"}, bt);
    return m;
}

// Operational model of a two-outcome phenomenon: no hidden variable, just the
// observed table attached jointly to (A,B) given (a,b). The graph claims only
// a->A and b->B (plus an optional common preparation c), so any correlation in
// the table is exactly what the causal structure fails to explain.
inline CausalModel operational_model(const Phenomenon<double>& ph, bool include_preparation) {
    const Scenario& sc = ph.scenario();
    CausalModel m;
    if (include_preparation) m.add_event("c", EventKind::preparation, 0, 0, 1);
    m.add_event("a", EventKind::free_choice, 2, -2, sc.alice_settings);
    m.add_event("b", EventKind::free_choice, 2, 2, sc.bob_settings);
    m.add_event("A", EventKind::outcome, 3, -2, sc.alice_outcomes);
    m.add_event("B", EventKind::outcome, 3, 2, sc.bob_outcomes);
    m.add_edge("a", "A");
    m.add_edge("b", "B");
    if (include_preparation) {
        m.add_edge("c", "A");
        m.add_edge("c", "B");
    }
    double ua = 1.0 / static_cast<double>(sc.alice_settings);
    double ub = 1.0 / static_cast<double>(sc.bob_settings);
    if (include_preparation) m.set_cpt({"c"}, {1.0});
    m.set_cpt({"a"}, std::vector<double>(sc.alice_settings, ua));
    m.set_cpt({"b"}, std::vector<double>(sc.bob_settings, ub));
    // Joint block (A,B) | parents. Parent order is canonical by node index:
    // with c present the parents are (c, a, b), otherwise (a, b); c has one
    // value so the row order is (a, b) either way, a slowest.
    std::vector<double> table;
    for (std::size_t a = 0; a < sc.alice_settings; ++a)
        for (std::size_t b = 0; b < sc.bob_settings; ++b)
            for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
                for (std::size_t B = 0; B < sc.bob_outcomes; ++B)
                    table.push_back(ph.at(a, b, A, B));
    m.set_cpt({"A", "B"}, table);
    return m;
}

} // namespace bellscope
