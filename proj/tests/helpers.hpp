#pragma once

#include <vector>

#include "bellscope/hv_model.hpp"
#include "bellscope/phenomenon.hpp"
#include "bellscope/scenario.hpp"

namespace bellscope::testing {

inline Scenario chsh_scenario() { return Scenario(2, 2, 2, 2); }

template <class S = Rational>
Phenomenon<S> uniform_phenomenon(const Scenario& sc) {
    std::vector<S> t(sc.cells(), S(1) / S(static_cast<long>(sc.outcomes_per_pair())));
    return Phenomenon<S>(sc, std::move(t));
}

// A xor B = a.b with uniform marginals, in outcome-index space.
inline Phenomenon<Rational> pr_box() {
    Scenario sc = chsh_scenario();
    std::vector<Rational> t(sc.cells(), Rational(0));
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t A = 0; A < 2; ++A)
                for (std::size_t B = 0; B < 2; ++B)
                    if (((A + B) % 2) == a * b) t[sc.cell(a, b, A, B)] = Rational(1, 2);
    return Phenomenon<Rational>(sc, std::move(t));
}

// Signaling by construction: B equals Alice's setting, A uniform.
inline Phenomenon<Rational> bob_copies_a() {
    Scenario sc = chsh_scenario();
    std::vector<Rational> t(sc.cells(), Rational(0));
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t A = 0; A < 2; ++A)
                t[sc.cell(a, b, A, a)] = Rational(1, 2);
    return Phenomenon<Rational>(sc, std::move(t));
}

// Perfect correlation from a shared coin: lambda in {0,1} equiprobable,
// lambda forces A = B = lambda for every setting pair.
inline HVModel<Rational> shared_coin_model(const Scenario& sc) {
    std::vector<Rational> prior{Rational(1, 2), Rational(1, 2)};
    std::vector<Rational> response(2 * sc.cells(), Rational(0));
    for (std::size_t lam = 0; lam < 2; ++lam)
        for (std::size_t a = 0; a < sc.alice_settings; ++a)
            for (std::size_t b = 0; b < sc.bob_settings; ++b)
                response[lam * sc.cells() + sc.cell(a, b, lam, lam)] = Rational(1);
    return HVModel<Rational>(sc, {"plus", "minus"}, std::move(prior), std::move(response));
}

} // namespace bellscope::testing
