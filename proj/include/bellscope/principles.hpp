#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bellscope/causal_model.hpp"
#include "bellscope/d_separation.hpp"
#include "bellscope/independence.hpp"

namespace bellscope {

enum class Principle {
    causal_arrow,
    relativistic_causality,
    free_choice,
    common_causes,
    decorrelating_explanation,
    reichenbach,
    local_causality,
    local_agency,
    agent_causation,
    no_superdeterminism,
    locality_principle,
    predetermination_principle,
    no_fine_tuning,
};

inline const char* principle_name(Principle p) {
    switch (p) {
        case Principle::causal_arrow: return "causal_arrow";
        case Principle::relativistic_causality: return "relativistic_causality";
        case Principle::free_choice: return "free_choice";
        case Principle::common_causes: return "common_causes";
        case Principle::decorrelating_explanation: return "decorrelating_explanation";
        case Principle::reichenbach: return "reichenbach";
        case Principle::local_causality: return "local_causality";
        case Principle::local_agency: return "local_agency";
        case Principle::agent_causation: return "agent_causation";
        case Principle::no_superdeterminism: return "no_superdeterminism";
        case Principle::locality_principle: return "locality";
        case Principle::predetermination_principle: return "predetermination";
        case Principle::no_fine_tuning: return "no_fine_tuning";
    }
    return "?";
}

// (X, Y | Z) with the numeric gap that falsified the principle. Structural
// failures (a cone violation, a parented choice) use the geometric overshoot
// or zero as the gap; statistical ones use the dependence gap, which must be
// reproducible from the joint distribution alone.
struct PrincipleWitness {
    std::vector<std::string> x_labels;
    std::vector<std::string> y_labels;
    std::vector<std::string> z_labels;
    double gap = 0;
    std::string note;
};

struct PrincipleVerdict {
    Principle principle;
    bool holds = false;
    std::optional<PrincipleWitness> witness;

    static PrincipleVerdict pass(Principle p) { return {p, true, std::nullopt}; }
    static PrincipleVerdict fail(Principle p, PrincipleWitness w) {
        return {p, false, std::move(w)};
    }
};

namespace detail {

inline std::vector<std::string> labels_of(const CausalModel& m,
                                          const std::vector<std::size_t>& set) {
    std::vector<std::string> out;
    for (std::size_t v : set) out.push_back(m.event(v).label);
    return out;
}

// Search subsets of `pool` (size <= 4) for one screening X from Y; on failure
// report the least-dependent candidate set.
struct ScreeningSearch {
    bool found = false;
    std::vector<std::size_t> best_set;
    double best_gap = 0;
};

inline ScreeningSearch find_screening_set(const JointDistribution& jd, std::size_t x,
                                          std::size_t y, const std::vector<std::size_t>& pool,
                                          double tol) {
    ScreeningSearch r;
    bool first = true;
    for (const auto& C : subsets_up_to(pool, 4)) {
        double gap = dependence_gap(jd, {x}, {y}, C);
        if (first || gap < r.best_gap) {
            r.best_gap = gap;
            r.best_set = C;
            first = false;
        }
        if (gap <= tol) {
            r.found = true;
            r.best_set = C;
            r.best_gap = gap;
            return r;
        }
    }
    return r;
}

} // namespace detail

// Axiom-level check: causes strictly precede their effects in time.
inline PrincipleVerdict check_causal_arrow(const CausalModel& m) {
    for (auto [u, v] : m.edges())
        if (!(m.event(u).t < m.event(v).t)) {
            PrincipleWitness w;
            w.x_labels = {m.event(u).label};
            w.y_labels = {m.event(v).label};
            w.gap = m.event(u).t - m.event(v).t;
            w.note = "edge does not advance in time";
            return PrincipleVerdict::fail(Principle::causal_arrow, std::move(w));
        }
    return PrincipleVerdict::pass(Principle::causal_arrow);
}

// Causal arrow + "the past is the past light-cone": every edge must point
// into the future cone of its cause.
inline PrincipleVerdict check_relativistic_embedding(const CausalModel& m) {
    for (auto [u, v] : m.edges())
        if (!in_past_lightcone(m.event(u), m.event(v))) {
            PrincipleWitness w;
            w.x_labels = {m.event(u).label};
            w.y_labels = {m.event(v).label};
            w.gap = lightcone_violation(m.event(u), m.event(v));
            w.note = "edge leaves the light cone";
            return PrincipleVerdict::fail(Principle::relativistic_causality, std::move(w));
        }
    return PrincipleVerdict::pass(Principle::relativistic_causality);
}

// A freely chosen action has no relevant causes: choice nodes are parentless.
inline PrincipleVerdict check_free_choice(const CausalModel& m) {
    for (std::size_t c : m.free_choices()) {
        auto par = m.parents(c);
        if (!par.empty()) {
            PrincipleWitness w;
            w.x_labels = {m.event(par.front()).label};
            w.y_labels = {m.event(c).label};
            w.note = "free choice has a parent";
            return PrincipleVerdict::fail(Principle::free_choice, std::move(w));
        }
    }
    return PrincipleVerdict::pass(Principle::free_choice);
}

// Correlated, causally unconnected pairs must have at least one common cause
// on offer. Whether the common causes actually explain anything is the
// business of decorrelating explanation.
inline PrincipleVerdict check_common_causes(const CausalModel& m, double tol = 1e-9,
                                            std::size_t cap = 10000000) {
    JointDistribution jd = joint_distribution(m, cap);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (m.has_directed_path(i, j) || m.has_directed_path(j, i)) continue;
            double gap = dependence_gap(jd, {i}, {j}, {});
            if (gap <= tol) continue;
            if (m.common_ancestors(i, j).empty()) {
                PrincipleWitness w;
                w.x_labels = {m.event(i).label};
                w.y_labels = {m.event(j).label};
                w.gap = gap;
                w.note = "correlated pair with no common ancestor";
                return PrincipleVerdict::fail(Principle::common_causes, std::move(w));
            }
        }
    return PrincipleVerdict::pass(Principle::common_causes);
}

// Common causes explain a correlation only if conditioning on them removes
// it: every correlated unconnected pair that has common ancestors must be
// screened off by some subset of them.
inline PrincipleVerdict check_decorrelating_explanation(const CausalModel& m, double tol = 1e-9,
                                                        std::size_t cap = 10000000) {
    JointDistribution jd = joint_distribution(m, cap);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (m.has_directed_path(i, j) || m.has_directed_path(j, i)) continue;
            if (dependence_gap(jd, {i}, {j}, {}) <= tol) continue;
            std::vector<std::size_t> cands = m.common_ancestors(i, j);
            if (cands.empty()) continue; // nothing claims to explain this pair
            auto r = detail::find_screening_set(jd, i, j, cands, tol);
            if (!r.found) {
                PrincipleWitness w;
                w.x_labels = {m.event(i).label};
                w.y_labels = {m.event(j).label};
                w.z_labels = detail::labels_of(m, r.best_set);
                w.gap = r.best_gap;
                w.note = "no common-ancestor subset screens off";
                return PrincipleVerdict::fail(Principle::decorrelating_explanation, std::move(w));
            }
        }
    return PrincipleVerdict::pass(Principle::decorrelating_explanation);
}

// Reichenbach's principle: correlated unconnected pairs are screened off by
// some set of common ancestors.
inline PrincipleVerdict check_reichenbach(const CausalModel& m, double tol = 1e-9,
                                          std::size_t cap = 10000000) {
    JointDistribution jd = joint_distribution(m, cap);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (m.has_directed_path(i, j) || m.has_directed_path(j, i)) continue;
            if (dependence_gap(jd, {i}, {j}, {}) <= tol) continue;
            auto r = detail::find_screening_set(jd, i, j, m.common_ancestors(i, j), tol);
            if (!r.found) {
                PrincipleWitness w;
                w.x_labels = {m.event(i).label};
                w.y_labels = {m.event(j).label};
                w.z_labels = detail::labels_of(m, r.best_set);
                w.gap = r.best_gap;
                w.note = "correlation without a decorrelating common cause";
                return PrincipleVerdict::fail(Principle::reichenbach, std::move(w));
            }
        }
    return PrincipleVerdict::pass(Principle::reichenbach);
}

// Bell's principle of local causality: correlated space-like separated pairs
// are screened off by some events in the intersection of their past cones.
inline PrincipleVerdict check_local_causality(const CausalModel& m, double tol = 1e-9,
                                              std::size_t cap = 10000000) {
    JointDistribution jd = joint_distribution(m, cap);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (!spacelike_separated(m.event(i), m.event(j))) continue;
            if (dependence_gap(jd, {i}, {j}, {}) <= tol) continue;
            std::vector<std::size_t> past;
            for (std::size_t k = 0; k < m.size(); ++k)
                if (k != i && k != j && in_past_lightcone(m.event(k), m.event(i)) &&
                    in_past_lightcone(m.event(k), m.event(j)))
                    past.push_back(k);
            auto r = detail::find_screening_set(jd, i, j, past, tol);
            if (!r.found) {
                PrincipleWitness w;
                w.x_labels = {m.event(i).label};
                w.y_labels = {m.event(j).label};
                w.z_labels = detail::labels_of(m, r.best_set);
                w.gap = r.best_gap;
                w.note = "no common-past set screens off the space-like correlation";
                return PrincipleVerdict::fail(Principle::local_causality, std::move(w));
            }
        }
    return PrincipleVerdict::pass(Principle::local_causality);
}

// Local agency: a free choice is unconditionally independent of everything
// wholly outside its future light cone, checked pairwise and for the joint
// set of all outside nodes.
inline PrincipleVerdict check_local_agency(const CausalModel& m, double tol = 1e-9,
                                           std::size_t cap = 10000000) {
    JointDistribution jd = joint_distribution(m, cap);
    for (std::size_t c : m.free_choices()) {
        std::vector<std::size_t> outside;
        for (std::size_t k = 0; k < m.size(); ++k)
            if (k != c && !in_past_lightcone(m.event(c), m.event(k))) outside.push_back(k);
        if (outside.empty()) continue;
        for (std::size_t k : outside) {
            double gap = dependence_gap(jd, {c}, {k}, {});
            if (gap > tol) {
                PrincipleWitness w;
                w.x_labels = {m.event(c).label};
                w.y_labels = {m.event(k).label};
                w.gap = gap;
                w.note = "choice correlated outside its future cone";
                return PrincipleVerdict::fail(Principle::local_agency, std::move(w));
            }
        }
        double gap = dependence_gap(jd, {c}, outside, {});
        if (gap > tol) {
            PrincipleWitness w;
            w.x_labels = {m.event(c).label};
            w.y_labels = detail::labels_of(m, outside);
            w.gap = gap;
            w.note = "choice correlated with the joint outside set";
            return PrincipleVerdict::fail(Principle::local_agency, std::move(w));
        }
    }
    return PrincipleVerdict::pass(Principle::local_agency);
}

// Agent-causation: anything correlated with a free choice must be its causal
// descendant. The joint form over all non-descendants covers every set, by
// marginalization.
inline PrincipleVerdict check_agent_causation(const CausalModel& m, double tol = 1e-9,
                                              std::size_t cap = 10000000) {
    JointDistribution jd = joint_distribution(m, cap);
    for (std::size_t c : m.free_choices()) {
        std::vector<bool> desc = m.descendants(c);
        std::vector<std::size_t> nondesc;
        for (std::size_t k = 0; k < m.size(); ++k)
            if (k != c && !desc[k]) nondesc.push_back(k);
        for (std::size_t k : nondesc) {
            double gap = dependence_gap(jd, {c}, {k}, {});
            if (gap > tol) {
                PrincipleWitness w;
                w.x_labels = {m.event(c).label};
                w.y_labels = {m.event(k).label};
                w.gap = gap;
                w.note = "choice correlated with a non-descendant";
                return PrincipleVerdict::fail(Principle::agent_causation, std::move(w));
            }
        }
        if (!nondesc.empty()) {
            double gap = dependence_gap(jd, {c}, nondesc, {});
            if (gap > tol) {
                PrincipleWitness w;
                w.x_labels = {m.event(c).label};
                w.y_labels = detail::labels_of(m, nondesc);
                w.gap = gap;
                w.note = "choice correlated with the joint non-descendant set";
                return PrincipleVerdict::fail(Principle::agent_causation, std::move(w));
            }
        }
    }
    return PrincipleVerdict::pass(Principle::agent_causation);
}

// No superdeterminism: everything on hypersurfaces prior to all choices is
// jointly independent of the joint choice variables.
inline PrincipleVerdict check_no_superdeterminism(const CausalModel& m, double tol = 1e-9,
                                                  std::size_t cap = 10000000) {
    std::vector<std::size_t> choices = m.free_choices();
    if (choices.empty()) return PrincipleVerdict::pass(Principle::no_superdeterminism);
    double t_min = m.event(choices.front()).t;
    for (std::size_t c : choices) t_min = std::min(t_min, m.event(c).t);
    std::vector<std::size_t> early;
    for (std::size_t k = 0; k < m.size(); ++k)
        if (m.event(k).t < t_min) early.push_back(k);
    if (early.empty()) return PrincipleVerdict::pass(Principle::no_superdeterminism);
    JointDistribution jd = joint_distribution(m, cap);
    double gap = dependence_gap(jd, early, choices, {});
    if (gap > tol) {
        PrincipleWitness w;
        w.x_labels = detail::labels_of(m, early);
        w.y_labels = detail::labels_of(m, choices);
        w.gap = gap;
        w.note = "pre-choice hypersurface correlated with the choices";
        return PrincipleVerdict::fail(Principle::no_superdeterminism, std::move(w));
    }
    return PrincipleVerdict::pass(Principle::no_superdeterminism);
}

// Principle of locality: the probability of an observable event is unchanged
// by conditioning on a space-like separated free choice, also under further
// conditioning on events outside that choice's future cone.
inline PrincipleVerdict check_locality_principle(const CausalModel& m, double tol = 1e-9,
                                                 std::size_t cap = 10000000,
                                                 std::size_t max_context = 3) {
    JointDistribution jd = joint_distribution(m, cap);
    for (std::size_t b : m.free_choices()) {
        std::vector<std::size_t> context_pool;
        for (std::size_t k = 0; k < m.size(); ++k)
            if (k != b && !in_past_lightcone(m.event(b), m.event(k))) context_pool.push_back(k);
        for (std::size_t A = 0; A < m.size(); ++A) {
            if (A == b || m.event(A).kind == EventKind::latent) continue;
            if (!spacelike_separated(m.event(A), m.event(b))) continue;
            std::vector<std::size_t> pool;
            for (std::size_t k : context_pool)
                if (k != A) pool.push_back(k);
            for (const auto& W : subsets_up_to(pool, max_context)) {
                double gap = dependence_gap(jd, {A}, {b}, W);
                if (gap > tol) {
                    PrincipleWitness w;
                    w.x_labels = {m.event(A).label};
                    w.y_labels = {m.event(b).label};
                    w.z_labels = detail::labels_of(m, W);
                    w.gap = gap;
                    w.note = "observable probability shifts with a space-like choice";
                    return PrincipleVerdict::fail(Principle::locality_principle, std::move(w));
                }
            }
        }
    }
    return PrincipleVerdict::pass(Principle::locality_principle);
}

// Predetermination at the graph level: outcome events are deterministic
// functions of their parents. This checks the canonical hypersurface (the
// modeled parents) only.
inline PrincipleVerdict check_predetermination_principle(const CausalModel& m,
                                                         double tol = 1e-9) {
    for (const CausalModel::Block* b : m.factorization()) {
        bool has_outcome = false;
        for (std::size_t mem : b->members)
            if (m.event(mem).kind == EventKind::outcome) has_outcome = true;
        if (!has_outcome) continue;
        for (double p : b->table)
            if (p > tol && p < 1 - tol) {
                PrincipleWitness w;
                w.x_labels = detail::labels_of(m, b->members);
                w.gap = std::min(p, 1 - p);
                w.note = "stochastic outcome response";
                return PrincipleVerdict::fail(Principle::predetermination_principle,
                                              std::move(w));
            }
    }
    return PrincipleVerdict::pass(Principle::predetermination_principle);
}

// A conditional independence that holds numerically but is not implied by
// d-separation. These are the fine-tunings faithfulness forbids.
struct FineTuningViolation {
    std::size_t x, y;
    std::vector<std::size_t> z;
    double gap; // dependence gap, <= tol by construction
};

// Enumerated smallest conditioning set first, then pair order.
inline std::vector<FineTuningViolation> fine_tuning_violations(const CausalModel& m,
                                                               double tol = 1e-9,
                                                               std::size_t cap = 10000000) {
    if (m.size() > 8)
        throw CapExceeded("no_fine_tuning: conditional-independence scan limited to 8 nodes");
    if (m.size() < 2) return {};
    JointDistribution jd = joint_distribution(m, cap);
    std::vector<FineTuningViolation> out;
    for (std::size_t zsize = 0; zsize <= m.size() - 2; ++zsize)
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = i + 1; j < m.size(); ++j) {
                std::vector<std::size_t> rest;
                for (std::size_t k = 0; k < m.size(); ++k)
                    if (k != i && k != j) rest.push_back(k);
                for (const auto& Z : subsets_up_to(rest, zsize)) {
                    if (Z.size() != zsize) continue;
                    double gap = dependence_gap(jd, {i}, {j}, Z);
                    if (gap <= tol && !d_separated(m, i, j, Z))
                        out.push_back({i, j, Z, gap});
                }
            }
    return out;
}

inline PrincipleVerdict check_no_fine_tuning(const CausalModel& m, double tol = 1e-9,
                                             std::size_t cap = 10000000) {
    std::vector<FineTuningViolation> v = fine_tuning_violations(m, tol, cap);
    if (v.empty()) return PrincipleVerdict::pass(Principle::no_fine_tuning);
    PrincipleWitness w;
    w.x_labels = {m.event(v.front().x).label};
    w.y_labels = {m.event(v.front().y).label};
    w.z_labels = detail::labels_of(m, v.front().z);
    w.gap = v.front().gap;
    w.note = "independence not implied by the causal structure";
    return PrincipleVerdict::fail(Principle::no_fine_tuning, std::move(w));
}

inline PrincipleVerdict check_principle(const CausalModel& m, Principle p, double tol = 1e-9,
                                        std::size_t cap = 10000000) {
    switch (p) {
        case Principle::causal_arrow: return check_causal_arrow(m);
        case Principle::relativistic_causality: return check_relativistic_embedding(m);
        case Principle::free_choice: return check_free_choice(m);
        case Principle::common_causes: return check_common_causes(m, tol, cap);
        case Principle::decorrelating_explanation:
            return check_decorrelating_explanation(m, tol, cap);
        case Principle::reichenbach: return check_reichenbach(m, tol, cap);
        case Principle::local_causality: return check_local_causality(m, tol, cap);
        case Principle::local_agency: return check_local_agency(m, tol, cap);
        case Principle::agent_causation: return check_agent_causation(m, tol, cap);
        case Principle::no_superdeterminism: return check_no_superdeterminism(m, tol, cap);
        case Principle::locality_principle: return check_locality_principle(m, tol, cap);
        case Principle::predetermination_principle:
            return check_predetermination_principle(m, tol);
        case Principle::no_fine_tuning: return check_no_fine_tuning(m, tol, cap);
    }
    throw DomainError("check_principle: unknown principle");
}

} // namespace bellscope
