#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "bellscope/properties.hpp"
#include "bellscope/random_models.hpp"

namespace bellscope {

struct ImplicationReport {
    std::set<ModelProperty> antecedents;
    ModelProperty consequent;
    std::size_t trials = 0;
    std::size_t tested = 0; // samples that satisfied every antecedent
    std::optional<std::uint64_t> counterexample_trial;
    std::optional<HVModel<Rational>> counterexample;
    std::optional<PropertyVerdict<Rational>> counterexample_verdict;

    bool refuted() const { return counterexample.has_value(); }
};

// Fuzz an implication between model-level properties: sample random models,
// keep those satisfying every antecedent exactly, and test the consequent on
// each. The per-trial generator stream is split from the seed, so the result
// does not depend on evaluation order.
inline ImplicationReport check_implication(const Scenario& sc,
                                           std::set<ModelProperty> antecedents,
                                           ModelProperty consequent, std::size_t trials,
                                           std::uint64_t seed) {
    ImplicationReport report;
    report.antecedents = antecedents;
    report.consequent = consequent;
    report.trials = trials;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::split(seed, trial);
        HVModel<Rational> m = random_model(sc, rng);
        bool accepted = true;
        for (ModelProperty p : antecedents)
            if (!check_model_property(m, p).holds) { accepted = false; break; }
        if (!accepted) continue;
        ++report.tested;
        PropertyVerdict<Rational> v = check_model_property(m, consequent);
        if (!v.holds && !report.counterexample) {
            report.counterexample_trial = trial;
            report.counterexample = m;
            report.counterexample_verdict = std::move(v);
        }
    }
    if (report.tested == 0)
        throw InsufficientSamples("check_implication: no sample satisfied the antecedents");
    return report;
}

} // namespace bellscope
