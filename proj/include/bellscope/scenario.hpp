#pragma once

#include <cstddef>
#include <string>

#include "bellscope/errors.hpp"

namespace bellscope {

// Shape of a bipartite experiment: setting and outcome cardinalities per side,
// plus the fixed preparation label c. Every table in the library is indexed
// against one of these.
//
// Canonical cell order is lexicographic in (a, b, A, B), indices from 0.
struct Scenario {
    std::size_t alice_settings = 2;
    std::size_t bob_settings = 2;
    std::size_t alice_outcomes = 2;
    std::size_t bob_outcomes = 2;
    std::string preparation = "c";

    Scenario() = default;
    Scenario(std::size_t na, std::size_t nb, std::size_t ma, std::size_t mb,
             std::string prep = "c")
        : alice_settings(na), bob_settings(nb), alice_outcomes(ma), bob_outcomes(mb),
          preparation(std::move(prep)) {
        if (na < 1 || nb < 1 || ma < 1 || mb < 1)
            throw DomainError("scenario: all cardinalities must be >= 1");
    }

    std::size_t setting_pairs() const { return alice_settings * bob_settings; }
    std::size_t outcomes_per_pair() const { return alice_outcomes * bob_outcomes; }
    std::size_t cells() const { return setting_pairs() * outcomes_per_pair(); }

    std::size_t block(std::size_t a, std::size_t b) const { return a * bob_settings + b; }

    std::size_t cell(std::size_t a, std::size_t b, std::size_t A, std::size_t B) const {
        return (block(a, b) * alice_outcomes + A) * bob_outcomes + B;
    }

    bool same_shape(const Scenario& o) const {
        return alice_settings == o.alice_settings && bob_settings == o.bob_settings &&
               alice_outcomes == o.alice_outcomes && bob_outcomes == o.bob_outcomes;
    }

    bool operator==(const Scenario& o) const {
        return same_shape(o) && preparation == o.preparation;
    }
};

enum class Side { alice, bob };

inline const char* side_name(Side s) { return s == Side::alice ? "alice" : "bob"; }

} // namespace bellscope
