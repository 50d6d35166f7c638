#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bellscope/phenomenon.hpp"
#include "bellscope/rational.hpp"
#include "bellscope/scenario.hpp"

namespace bellscope {

// Hidden-variable model: a finite prior P(lambda|c) plus joint response
// probabilities P(A,B|a,b,c,lambda). Response rows are stored per lambda in
// the same canonical (a,b,A,B) cell order as Phenomenon.
template <class S>
class HVModel {
public:
    HVModel(Scenario scenario, std::vector<std::string> lambda_labels,
            std::vector<S> prior, std::vector<S> response,
            S tol = scalar_traits<S>::default_tol())
        : scenario_(std::move(scenario)), labels_(std::move(lambda_labels)),
          prior_(std::move(prior)), response_(std::move(response)) {
        validate(tol);
    }

    const Scenario& scenario() const { return scenario_; }
    std::size_t support_size() const { return labels_.size(); }
    const std::vector<std::string>& lambda_labels() const { return labels_; }
    const std::vector<S>& prior() const { return prior_; }
    const std::vector<S>& response() const { return response_; }

    const S& prior_of(std::size_t lam) const { return prior_[lam]; }

    const S& response_at(std::size_t lam, std::size_t a, std::size_t b, std::size_t A,
                         std::size_t B) const {
        return response_[lam * scenario_.cells() + scenario_.cell(a, b, A, B)];
    }

    // P(B|a,b,lambda) by summing Alice out of the joint response (and the
    // mirror image). Definition-level conditionals are recovered this way.
    S bob_response_marginal(std::size_t lam, std::size_t a, std::size_t b,
                            std::size_t B) const {
        S sum(0);
        for (std::size_t A = 0; A < scenario_.alice_outcomes; ++A)
            sum += response_at(lam, a, b, A, B);
        return sum;
    }

    S alice_response_marginal(std::size_t lam, std::size_t a, std::size_t b,
                              std::size_t A) const {
        S sum(0);
        for (std::size_t B = 0; B < scenario_.bob_outcomes; ++B)
            sum += response_at(lam, a, b, A, B);
        return sum;
    }

private:
    void validate(const S& tol) const {
        std::size_t L = labels_.size();
        if (L == 0) throw NonNormalizedModel("hv-model: empty lambda support");
        if (prior_.size() != L)
            throw NonNormalizedModel("hv-model: prior size != support size");
        if (response_.size() != L * scenario_.cells())
            throw NonNormalizedModel("hv-model: response table size mismatch");
        S psum(0);
        for (const S& p : prior_) {
            if (!scalar_traits<S>::finite(p) || p < -tol || p > S(1) + tol)
                throw NonNormalizedModel("hv-model: prior outside [0,1]: " + num_to_string(p));
            psum += p;
        }
        if (sabs(psum - S(1)) > tol)
            throw NonNormalizedModel("hv-model: prior sums to " + num_to_string(psum));
        for (std::size_t lam = 0; lam < L; ++lam)
            for (std::size_t a = 0; a < scenario_.alice_settings; ++a)
                for (std::size_t b = 0; b < scenario_.bob_settings; ++b) {
                    S sum(0);
                    for (std::size_t A = 0; A < scenario_.alice_outcomes; ++A)
                        for (std::size_t B = 0; B < scenario_.bob_outcomes; ++B) {
                            const S& p = response_at(lam, a, b, A, B);
                            if (!scalar_traits<S>::finite(p) || p < -tol || p > S(1) + tol)
                                throw NonNormalizedModel("hv-model: response outside [0,1]: " +
                                                         num_to_string(p));
                            sum += p;
                        }
                    if (sabs(sum - S(1)) > tol)
                        throw NonNormalizedModel(
                            "hv-model: response block lambda=" + labels_[lam] +
                            " a=" + std::to_string(a) + " b=" + std::to_string(b) +
                            " sums to " + num_to_string(sum));
                }
    }

    Scenario scenario_;
    std::vector<std::string> labels_;
    std::vector<S> prior_;
    std::vector<S> response_;
};

// f(A,B|a,b,c) = sum_lambda P(A,B|a,b,c,lambda) P(lambda|c). Exact in, exact out.
template <class S>
Phenomenon<S> predicted_phenomenon(const HVModel<S>& m) {
    const Scenario& sc = m.scenario();
    std::vector<S> t(sc.cells(), S(0));
    for (std::size_t lam = 0; lam < m.support_size(); ++lam)
        for (std::size_t c = 0; c < sc.cells(); ++c)
            t[c] += m.prior_of(lam) * m.response()[lam * sc.cells() + c];
    // Validation tolerance: per-cell rounding can accumulate across lambdas.
    S tol = scalar_traits<S>::exact ? S(0) : S(1e-9);
    return Phenomenon<S>(sc, std::move(t), tol);
}

// True iff the model's predicted table matches `ph` cellwise within tol.
// Exact representation demands tol = 0.
template <class S>
bool reproduces(const HVModel<S>& m, const Phenomenon<S>& ph,
                S tol = scalar_traits<S>::default_tol()) {
    if (!m.scenario().same_shape(ph.scenario()))
        throw ScenarioMismatch("reproduces: model and phenomenon shapes differ");
    Phenomenon<S> predicted = predicted_phenomenon(m);
    for (std::size_t c = 0; c < ph.table().size(); ++c)
        if (sabs(predicted.table()[c] - ph.table()[c]) > tol) return false;
    return true;
}

// One-point-lambda model whose single response row is the phenomenon itself.
template <class S>
HVModel<S> trivial_model(const Phenomenon<S>& ph) {
    std::vector<S> prior{S(1)};
    return HVModel<S>(ph.scenario(), {"l0"}, std::move(prior), ph.table());
}

} // namespace bellscope
