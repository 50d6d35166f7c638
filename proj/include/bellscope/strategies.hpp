#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "bellscope/errors.hpp"
#include "bellscope/phenomenon.hpp"
#include "bellscope/scenario.hpp"

namespace bellscope {

// A pair of local response functions (a -> A, b -> B). These are the extreme
// points of the set of models satisfying predetermination and locality.
struct DeterministicStrategy {
    std::vector<std::size_t> alice_map; // alice_map[a] = A
    std::vector<std::size_t> bob_map;   // bob_map[b] = B

    bool total_for(const Scenario& sc) const {
        if (alice_map.size() != sc.alice_settings || bob_map.size() != sc.bob_settings)
            return false;
        for (std::size_t v : alice_map)
            if (v >= sc.alice_outcomes) return false;
        for (std::size_t v : bob_map)
            if (v >= sc.bob_outcomes) return false;
        return true;
    }

    std::string label() const {
        std::string s = "A";
        for (std::size_t v : alice_map) s += std::to_string(v);
        s += ":B";
        for (std::size_t v : bob_map) s += std::to_string(v);
        return s;
    }
};

// Saturates well above any usable cap instead of overflowing.
inline std::size_t strategy_count(const Scenario& sc) {
    const std::size_t sat = std::size_t(1) << 62;
    std::size_t n = 1;
    for (std::size_t i = 0; i < sc.alice_settings; ++i) {
        if (n > sat / std::max<std::size_t>(sc.alice_outcomes, 1)) return sat;
        n *= sc.alice_outcomes;
    }
    for (std::size_t i = 0; i < sc.bob_settings; ++i) {
        if (n > sat / std::max<std::size_t>(sc.bob_outcomes, 1)) return sat;
        n *= sc.bob_outcomes;
    }
    return n;
}

// All outcome^settings response functions, lexicographic with setting 0 most
// significant.
inline std::vector<std::vector<std::size_t>> response_maps(std::size_t settings,
                                                           std::size_t outcomes) {
    std::vector<std::vector<std::size_t>> maps;
    std::vector<std::size_t> cur(settings, 0);
    while (true) {
        maps.push_back(cur);
        std::size_t i = settings;
        while (i > 0) {
            --i;
            if (++cur[i] < outcomes) break;
            cur[i] = 0;
            if (i == 0) return maps;
        }
    }
}

// All |A|^Na * |B|^Nb strategies in canonical order: Alice's map varies
// slowest.
inline std::vector<DeterministicStrategy> enumerate_strategies(const Scenario& sc,
                                                               std::size_t cap = 1000000) {
    std::size_t total = strategy_count(sc);
    if (total > cap)
        throw CapExceeded("enumerate_strategies: " + std::to_string(total) +
                          " strategies exceed cap " + std::to_string(cap));
    std::vector<DeterministicStrategy> out;
    out.reserve(total);
    for (const auto& am : response_maps(sc.alice_settings, sc.alice_outcomes))
        for (const auto& bm : response_maps(sc.bob_settings, sc.bob_outcomes))
            out.push_back(DeterministicStrategy{am, bm});
    return out;
}

// Vertex embedding: f(A,B|a,b) = [A = alice_map(a)][B = bob_map(b)].
template <class S = Rational>
Phenomenon<S> strategy_phenomenon(const DeterministicStrategy& s, const Scenario& sc) {
    if (!s.total_for(sc)) throw DomainError("strategy_phenomenon: strategy not total");
    std::vector<S> t(sc.cells(), S(0));
    for (std::size_t a = 0; a < sc.alice_settings; ++a)
        for (std::size_t b = 0; b < sc.bob_settings; ++b)
            t[sc.cell(a, b, s.alice_map[a], s.bob_map[b])] = S(1);
    return Phenomenon<S>(sc, std::move(t));
}

} // namespace bellscope
