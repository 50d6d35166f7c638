#pragma once

#include <cstddef>
#include <vector>

#include "bellscope/errors.hpp"
#include "bellscope/phenomenon.hpp"

namespace bellscope {

// Two-outcome convention used everywhere: outcome index 0 maps to +1,
// index 1 to -1.
inline int outcome_sign(std::size_t index) { return index == 0 ? 1 : -1; }

// E(a,b) = sum_{A,B in {+1,-1}} A*B*f(A,B|a,b).
template <class S>
S correlator(const Phenomenon<S>& ph, std::size_t a, std::size_t b) {
    const Scenario& sc = ph.scenario();
    if (sc.alice_outcomes != 2 || sc.bob_outcomes != 2)
        throw OutcomeArityError("correlator: needs two outcomes per side");
    S e(0);
    for (std::size_t A = 0; A < 2; ++A)
        for (std::size_t B = 0; B < 2; ++B) {
            int sign = outcome_sign(A) * outcome_sign(B);
            if (sign > 0) e += ph.at(a, b, A, B);
            else e -= ph.at(a, b, A, B);
        }
    return e;
}

// E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2).
template <class S>
S chsh_value(const Phenomenon<S>& ph, std::size_t a1, std::size_t a2, std::size_t b1,
             std::size_t b2) {
    return correlator(ph, a1, b1) + correlator(ph, a1, b2) + correlator(ph, a2, b1) -
           correlator(ph, a2, b2);
}

struct ChshEntry {
    std::size_t a1, a2, b1, b2;
};

// Ordered setting quadruples (a1 != a2, b1 != b2). Together with sign flips
// under |.| these realize all CHSH symmetries of a 2x2-setting scenario.
inline std::vector<ChshEntry> chsh_quadruples(const Scenario& sc) {
    std::vector<ChshEntry> out;
    for (std::size_t a1 = 0; a1 < sc.alice_settings; ++a1)
        for (std::size_t a2 = 0; a2 < sc.alice_settings; ++a2)
            for (std::size_t b1 = 0; b1 < sc.bob_settings; ++b1)
                for (std::size_t b2 = 0; b2 < sc.bob_settings; ++b2)
                    if (a1 != a2 && b1 != b2) out.push_back({a1, a2, b1, b2});
    return out;
}

// CHSH as a linear functional over canonical cells: coefficient
// sign(A)*sign(B) on blocks (a1,b1), (a1,b2), (a2,b1) and the negative on
// (a2,b2). chsh_value is exactly this functional applied to a table.
inline std::vector<Rational> chsh_coefficients(const Scenario& sc, std::size_t a1,
                                               std::size_t a2, std::size_t b1,
                                               std::size_t b2) {
    if (sc.alice_outcomes != 2 || sc.bob_outcomes != 2)
        throw OutcomeArityError("chsh_coefficients: needs two outcomes per side");
    std::vector<Rational> g(sc.cells(), Rational(0));
    auto fill = [&](std::size_t a, std::size_t b, int block_sign) {
        for (std::size_t A = 0; A < 2; ++A)
            for (std::size_t B = 0; B < 2; ++B)
                g[sc.cell(a, b, A, B)] =
                    Rational(block_sign * outcome_sign(A) * outcome_sign(B));
    };
    fill(a1, b1, 1);
    fill(a1, b2, 1);
    fill(a2, b1, 1);
    fill(a2, b2, -1);
    return g;
}

// max |CHSH| over all ordered quadruples.
template <class S>
S max_abs_chsh(const Phenomenon<S>& ph) {
    S best(0);
    for (const ChshEntry& q : chsh_quadruples(ph.scenario())) {
        S v = sabs(chsh_value(ph, q.a1, q.a2, q.b1, q.b2));
        if (v > best) best = v;
    }
    return best;
}

} // namespace bellscope
