#pragma once

#include <map>
#include <optional>
#include <string>

#include "bellscope/hv_model.hpp"
#include "bellscope/phenomenon.hpp"

namespace bellscope {

enum class ModelProperty {
    predetermination,
    predictability,
    locality,
    signal_locality,
    local_causality,
    factorizability, // internal equivalent of local causality
};

inline const char* property_name(ModelProperty p) {
    switch (p) {
        case ModelProperty::predetermination: return "predetermination";
        case ModelProperty::predictability: return "predictability";
        case ModelProperty::locality: return "locality";
        case ModelProperty::signal_locality: return "signal_locality";
        case ModelProperty::local_causality: return "local_causality";
        case ModelProperty::factorizability: return "factorizability";
    }
    return "?";
}

// Counterexample cell: named indices plus the two probabilities whose
// inequality falsified the property. Structured so a test can re-derive the
// same two numbers from the model and witness alone.
template <class S>
struct Witness {
    std::string description;
    std::map<std::string, std::size_t> where;
    S lhs{0};
    S rhs{0};
};

template <class S>
struct PropertyVerdict {
    ModelProperty property;
    bool holds = false;
    std::optional<Witness<S>> witness; // present iff !holds

    static PropertyVerdict pass(ModelProperty p) { return {p, true, std::nullopt}; }
    static PropertyVerdict fail(ModelProperty p, Witness<S> w) {
        return {p, false, std::move(w)};
    }
};

namespace detail {
template <class S>
bool near01(const S& v, const S& tol) {
    return sabs(v) <= tol || sabs(v - S(1)) <= tol;
}
} // namespace detail

// Predetermination: every response probability is 0 or 1.
template <class S>
PropertyVerdict<S> is_predetermined(const HVModel<S>& m,
                                    S tol = scalar_traits<S>::default_tol()) {
    const Scenario& sc = m.scenario();
    for (std::size_t lam = 0; lam < m.support_size(); ++lam)
        for (std::size_t a = 0; a < sc.alice_settings; ++a)
            for (std::size_t b = 0; b < sc.bob_settings; ++b)
                for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
                    for (std::size_t B = 0; B < sc.bob_outcomes; ++B) {
                        const S& p = m.response_at(lam, a, b, A, B);
                        if (!detail::near01(p, tol)) {
                            Witness<S> w;
                            w.description = "response probability strictly between 0 and 1";
                            w.where = {{"lambda", lam}, {"a", a}, {"b", b}, {"A", A}, {"B", B}};
                            w.lhs = p;
                            w.rhs = p < S(1) - p ? S(0) : S(1);
                            return PropertyVerdict<S>::fail(ModelProperty::predetermination,
                                                            std::move(w));
                        }
                    }
    return PropertyVerdict<S>::pass(ModelProperty::predetermination);
}

// Predictability: every observable frequency is 0 or 1.
template <class S>
PropertyVerdict<S> is_predictable(const Phenomenon<S>& ph,
                                  S tol = scalar_traits<S>::default_tol()) {
    const Scenario& sc = ph.scenario();
    for (std::size_t a = 0; a < sc.alice_settings; ++a)
        for (std::size_t b = 0; b < sc.bob_settings; ++b)
            for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
                for (std::size_t B = 0; B < sc.bob_outcomes; ++B) {
                    const S& p = ph.at(a, b, A, B);
                    if (!detail::near01(p, tol)) {
                        Witness<S> w;
                        w.description = "frequency strictly between 0 and 1";
                        w.where = {{"a", a}, {"b", b}, {"A", A}, {"B", B}};
                        w.lhs = p;
                        w.rhs = p < S(1) - p ? S(0) : S(1);
                        return PropertyVerdict<S>::fail(ModelProperty::predictability,
                                                        std::move(w));
                    }
                }
    return PropertyVerdict<S>::pass(ModelProperty::predictability);
}

// Locality: each party's per-lambda response marginal is independent of
// the remote setting. Both parties are checked.
template <class S>
PropertyVerdict<S> is_local(const HVModel<S>& m, S tol = scalar_traits<S>::default_tol()) {
    const Scenario& sc = m.scenario();
    for (std::size_t lam = 0; lam < m.support_size(); ++lam) {
        for (std::size_t b = 0; b < sc.bob_settings; ++b)
            for (std::size_t B = 0; B < sc.bob_outcomes; ++B)
                for (std::size_t a = 1; a < sc.alice_settings; ++a) {
                    S ref = m.bob_response_marginal(lam, 0, b, B);
                    S got = m.bob_response_marginal(lam, a, b, B);
                    if (sabs(got - ref) > tol) {
                        Witness<S> w;
                        w.description = "P(B|a,b,lambda) depends on a";
                        w.where = {{"lambda", lam}, {"b", b}, {"B", B}, {"a", 0}, {"a2", a}};
                        w.lhs = ref;
                        w.rhs = got;
                        return PropertyVerdict<S>::fail(ModelProperty::locality, std::move(w));
                    }
                }
        for (std::size_t a = 0; a < sc.alice_settings; ++a)
            for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
                for (std::size_t b = 1; b < sc.bob_settings; ++b) {
                    S ref = m.alice_response_marginal(lam, a, 0, A);
                    S got = m.alice_response_marginal(lam, a, b, A);
                    if (sabs(got - ref) > tol) {
                        Witness<S> w;
                        w.description = "P(A|a,b,lambda) depends on b";
                        w.where = {{"lambda", lam}, {"a", a}, {"A", A}, {"b", 0}, {"b2", b}};
                        w.lhs = ref;
                        w.rhs = got;
                        return PropertyVerdict<S>::fail(ModelProperty::locality, std::move(w));
                    }
                }
    }
    return PropertyVerdict<S>::pass(ModelProperty::locality);
}

// Signal locality: observable marginals are independent of the remote setting.
template <class S>
PropertyVerdict<S> is_signal_local(const Phenomenon<S>& ph,
                                   S tol = scalar_traits<S>::default_tol()) {
    const Scenario& sc = ph.scenario();
    MarginalTable<S> mb = marginal(ph, Side::bob);
    for (std::size_t B = 0; B < sc.bob_outcomes; ++B)
        for (std::size_t b = 0; b < sc.bob_settings; ++b)
            for (std::size_t a = 1; a < sc.alice_settings; ++a)
                if (sabs(mb.at(B, b, a) - mb.at(B, b, 0)) > tol) {
                    Witness<S> w;
                    w.description = "f(B|a,b) depends on a";
                    w.where = {{"b", b}, {"B", B}, {"a", 0}, {"a2", a}};
                    w.lhs = mb.at(B, b, 0);
                    w.rhs = mb.at(B, b, a);
                    return PropertyVerdict<S>::fail(ModelProperty::signal_locality,
                                                    std::move(w));
                }
    MarginalTable<S> ma = marginal(ph, Side::alice);
    for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
        for (std::size_t a = 0; a < sc.alice_settings; ++a)
            for (std::size_t b = 1; b < sc.bob_settings; ++b)
                if (sabs(ma.at(A, a, b) - ma.at(A, a, 0)) > tol) {
                    Witness<S> w;
                    w.description = "f(A|a,b) depends on b";
                    w.where = {{"a", a}, {"A", A}, {"b", 0}, {"b2", b}};
                    w.lhs = ma.at(A, a, 0);
                    w.rhs = ma.at(A, a, b);
                    return PropertyVerdict<S>::fail(ModelProperty::signal_locality,
                                                    std::move(w));
                }
    return PropertyVerdict<S>::pass(ModelProperty::signal_locality);
}

// Local causality, in its factorized form: for every lambda the joint response is
// P(A|a,lambda) * P(B|b,lambda). This requires the per-party marginals to be
// remote-setting independent (the locality half) and the joint to split into
// their product. Cells whose conditioning event has probability zero are
// vacuous and cannot fail the product equation, since a zero marginal forces a
// zero joint.
template <class S>
PropertyVerdict<S> is_locally_causal(const HVModel<S>& m,
                                     S tol = scalar_traits<S>::default_tol()) {
    PropertyVerdict<S> loc = is_local(m, tol);
    if (!loc.holds)
        return PropertyVerdict<S>::fail(ModelProperty::local_causality,
                                        std::move(*loc.witness));
    const Scenario& sc = m.scenario();
    for (std::size_t lam = 0; lam < m.support_size(); ++lam)
        for (std::size_t a = 0; a < sc.alice_settings; ++a)
            for (std::size_t b = 0; b < sc.bob_settings; ++b)
                for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
                    for (std::size_t B = 0; B < sc.bob_outcomes; ++B) {
                        S product = m.alice_response_marginal(lam, a, b, A) *
                                    m.bob_response_marginal(lam, a, b, B);
                        const S& joint = m.response_at(lam, a, b, A, B);
                        if (sabs(joint - product) > tol) {
                            Witness<S> w;
                            w.description = "joint response does not factorize";
                            w.where = {{"lambda", lam}, {"a", a}, {"b", b}, {"A", A}, {"B", B}};
                            w.lhs = joint;
                            w.rhs = product;
                            return PropertyVerdict<S>::fail(ModelProperty::local_causality,
                                                            std::move(w));
                        }
                    }
    return PropertyVerdict<S>::pass(ModelProperty::local_causality);
}

// Evaluate any of the five properties against a model; the two operational
// ones are read off the model's predicted phenomenon.
template <class S>
PropertyVerdict<S> check_model_property(const HVModel<S>& m, ModelProperty p,
                                        S tol = scalar_traits<S>::default_tol()) {
    switch (p) {
        case ModelProperty::predetermination: return is_predetermined(m, tol);
        case ModelProperty::locality: return is_local(m, tol);
        case ModelProperty::local_causality:
        case ModelProperty::factorizability: return is_locally_causal(m, tol);
        case ModelProperty::predictability: return is_predictable(predicted_phenomenon(m), tol);
        case ModelProperty::signal_locality:
            return is_signal_local(predicted_phenomenon(m), tol);
    }
    throw DomainError("check_model_property: unknown property");
}

} // namespace bellscope
