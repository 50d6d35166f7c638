#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bellscope/hv_model.hpp"
#include "bellscope/rng.hpp"
#include "bellscope/strategies.hpp"

namespace bellscope {

// Structural families for random hidden-variable models. A single generic
// family would make filters on predetermination or local causality reject
// essentially every sample, so the generator mixes shapes; the free
// probabilities inside each shape are Dirichlet(1) draws rounded to exact
// rationals with denominator 64.
enum class ModelFamily {
    generic,               // full-support joint responses
    product,               // P(A|a,l) * P(B|b,l): locally causal, stochastic
    deterministic_local,   // one strategy per lambda
    deterministic_nonlocal,// outcomes are functions of both settings
    correlated_local,      // uniform marginals, tunable correlation: local only
    signaling,             // Bob's outcome copies Alice's setting
};

constexpr ModelFamily all_model_families[] = {
    ModelFamily::generic,       ModelFamily::product,
    ModelFamily::deterministic_local, ModelFamily::deterministic_nonlocal,
    ModelFamily::correlated_local,    ModelFamily::signaling,
};

inline HVModel<Rational> random_model(const Scenario& sc, Rng& rng,
                                      std::optional<ModelFamily> force = std::nullopt) {
    ModelFamily family = force ? *force : all_model_families[rng.below(6)];
    if (family == ModelFamily::correlated_local &&
        (sc.alice_outcomes != 2 || sc.bob_outcomes != 2))
        family = ModelFamily::product;

    std::size_t L = 1 + rng.below(4);
    std::vector<Rational> prior = rng.rational_simplex(L, 64, 1);
    std::vector<std::string> labels;
    for (std::size_t l = 0; l < L; ++l) labels.push_back("l" + std::to_string(l));

    std::vector<Rational> response(L * sc.cells(), Rational(0));
    auto row = [&](std::size_t lam, std::size_t a, std::size_t b, std::size_t A,
                   std::size_t B) -> Rational& {
        return response[lam * sc.cells() + sc.cell(a, b, A, B)];
    };

    for (std::size_t lam = 0; lam < L; ++lam) {
        switch (family) {
            case ModelFamily::generic: {
                for (std::size_t a = 0; a < sc.alice_settings; ++a)
                    for (std::size_t b = 0; b < sc.bob_settings; ++b) {
                        auto cells = rng.rational_simplex(sc.outcomes_per_pair(), 64, 1);
                        std::size_t k = 0;
                        for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
                            for (std::size_t B = 0; B < sc.bob_outcomes; ++B)
                                row(lam, a, b, A, B) = cells[k++];
                    }
                break;
            }
            case ModelFamily::product: {
                std::vector<std::vector<Rational>> pa, pb;
                for (std::size_t a = 0; a < sc.alice_settings; ++a)
                    pa.push_back(rng.rational_simplex(sc.alice_outcomes, 64, 1));
                for (std::size_t b = 0; b < sc.bob_settings; ++b)
                    pb.push_back(rng.rational_simplex(sc.bob_outcomes, 64, 1));
                for (std::size_t a = 0; a < sc.alice_settings; ++a)
                    for (std::size_t b = 0; b < sc.bob_settings; ++b)
                        for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
                            for (std::size_t B = 0; B < sc.bob_outcomes; ++B)
                                row(lam, a, b, A, B) = pa[a][A] * pb[b][B];
                break;
            }
            case ModelFamily::deterministic_local: {
                std::vector<std::size_t> ra(sc.alice_settings), rb(sc.bob_settings);
                for (auto& v : ra) v = rng.below(sc.alice_outcomes);
                for (auto& v : rb) v = rng.below(sc.bob_outcomes);
                for (std::size_t a = 0; a < sc.alice_settings; ++a)
                    for (std::size_t b = 0; b < sc.bob_settings; ++b)
                        row(lam, a, b, ra[a], rb[b]) = Rational(1);
                break;
            }
            case ModelFamily::deterministic_nonlocal: {
                for (std::size_t a = 0; a < sc.alice_settings; ++a)
                    for (std::size_t b = 0; b < sc.bob_settings; ++b)
                        row(lam, a, b, rng.below(sc.alice_outcomes), rng.below(sc.bob_outcomes)) =
                            Rational(1);
                break;
            }
            case ModelFamily::correlated_local: {
                // p * (perfect correlation) + (1-p) * (perfect anticorrelation)
                // per setting pair: marginals stay uniform, so locality holds,
                // but the joint only factorizes at p = 1/2.
                for (std::size_t a = 0; a < sc.alice_settings; ++a)
                    for (std::size_t b = 0; b < sc.bob_settings; ++b) {
                        Rational p(static_cast<long>(rng.below(65)), 64);
                        row(lam, a, b, 0, 0) = p / 2;
                        row(lam, a, b, 1, 1) = p / 2;
                        row(lam, a, b, 0, 1) = (Rational(1) - p) / 2;
                        row(lam, a, b, 1, 0) = (Rational(1) - p) / 2;
                    }
                break;
            }
            case ModelFamily::signaling: {
                Rational u(1, static_cast<long>(sc.alice_outcomes));
                for (std::size_t a = 0; a < sc.alice_settings; ++a)
                    for (std::size_t b = 0; b < sc.bob_settings; ++b)
                        for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
                            row(lam, a, b, A, a % sc.bob_outcomes) = u;
                break;
            }
        }
    }
    return HVModel<Rational>(sc, std::move(labels), std::move(prior), std::move(response));
}

// Single lambda, every joint response cell equal: locally causal but nowhere
// near predetermined. The standard counterexample to "local causality implies
// predetermination".
inline HVModel<Rational> independent_coins_model(const Scenario& sc) {
    std::vector<Rational> prior{Rational(1)};
    std::vector<Rational> response(sc.cells(),
                                   Rational(1, static_cast<long>(sc.outcomes_per_pair())));
    return HVModel<Rational>(sc, {"l0"}, std::move(prior), std::move(response));
}

} // namespace bellscope
