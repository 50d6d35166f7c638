#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bellscope/bell_dags.hpp"
#include "bellscope/causal_model.hpp"
#include "bellscope/d_separation.hpp"
#include "bellscope/independence.hpp"
#include "bellscope/lemmas.hpp"
#include "bellscope/quantum.hpp"

using namespace bellscope;

namespace {

CausalModel two_fair_coins() {
    CausalModel m;
    m.add_event("X", EventKind::latent, 0, 0, 2);
    m.add_event("Y", EventKind::latent, 0, 1, 2);
    m.set_cpt({"X"}, {0.5, 0.5});
    m.set_cpt({"Y"}, {0.5, 0.5});
    return m;
}

CausalModel copy_chain() {
    CausalModel m;
    m.add_event("X", EventKind::latent, 0, 0, 2);
    m.add_event("Y", EventKind::latent, 1, 0, 2);
    m.add_edge("X", "Y");
    m.set_cpt({"X"}, {0.5, 0.5});
    m.set_cpt({"Y"}, {1, 0, 0, 1});
    return m;
}

CausalModel xor_collider() {
    CausalModel m;
    m.add_event("X", EventKind::latent, 0, -1, 2);
    m.add_event("Y", EventKind::latent, 0, 1, 2);
    m.add_event("Z", EventKind::latent, 2, 0, 2);
    m.add_edge("X", "Z");
    m.add_edge("Y", "Z");
    m.set_cpt({"X"}, {0.5, 0.5});
    m.set_cpt({"Y"}, {0.5, 0.5});
    m.set_cpt({"Z"}, {1, 0, 0, 1, 0, 1, 1, 0}); // Z = X xor Y
    return m;
}

} // namespace

TEST_CASE("light cone relation") {
    SpacetimeEvent o{"o", 0, 0};
    CHECK(in_past_lightcone(o, SpacetimeEvent{"p", 1, 0}));      // timelike
    CHECK(in_past_lightcone(o, SpacetimeEvent{"q", 1, 1}));      // lightlike boundary
    CHECK_FALSE(in_past_lightcone(o, SpacetimeEvent{"r", 1, 2}));
    CHECK_FALSE(in_past_lightcone(SpacetimeEvent{"s", 2, -2}, SpacetimeEvent{"t", 3, 2}));
    CHECK_FALSE(in_past_lightcone(o, o));
    CHECK(spacelike_separated(SpacetimeEvent{"u", 3, -2}, SpacetimeEvent{"v", 3, 2}));
}

TEST_CASE("model construction guards") {
    CausalModel m;
    m.add_event("X", EventKind::latent, 0, 0, 2);
    m.add_event("Y", EventKind::latent, 1, 0, 2);
    CHECK_THROWS_AS(m.add_event("X", EventKind::latent, 2, 0, 2), DomainError);
    m.add_edge("X", "Y");
    CHECK_THROWS_AS(m.add_edge("Y", "X"), DomainError); // cycle
    CHECK_THROWS_AS(m.add_edge("X", "X"), DomainError);
    CHECK_THROWS_AS(m.set_cpt({"Y"}, {0.7, 0.7, 0.3, 0.3}), NonNormalized);
    CHECK_THROWS_AS(m.set_cpt({"Y"}, {1, 0}), DomainError); // wrong row count
    SUBCASE("missing cpt is reported at joint time") {
        m.set_cpt({"Y"}, {1, 0, 0, 1});
        CHECK_THROWS_AS(joint_distribution(m), MissingCpt);
    }
}

TEST_CASE("joint distribution basics") {
    SUBCASE("two independent fair coins") {
        JointDistribution jd = joint_distribution(two_fair_coins());
        REQUIRE(jd.states() == 4);
        for (double p : jd.p) CHECK(p == doctest::Approx(0.25));
    }
    SUBCASE("copying chain puts mass on the diagonal") {
        JointDistribution jd = joint_distribution(copy_chain());
        CHECK(jd.p[0] == doctest::Approx(0.5)); // (0,0)
        CHECK(jd.p[3] == doctest::Approx(0.5)); // (1,1)
        CHECK(jd.p[1] == doctest::Approx(0.0));
        CHECK(jd.p[2] == doctest::Approx(0.0));
    }
    SUBCASE("joint sums to one on random models") {
        for (std::uint64_t trial = 0; trial < 50; ++trial) {
            Rng rng = Rng::split(314, trial);
            CausalModel m = random_causal_model(rng, trial % 2 == 0);
            JointDistribution jd = joint_distribution(m);
            double sum = 0;
            for (double p : jd.p) sum += p;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("state-space cap") {
        CausalModel m;
        for (int i = 0; i < 9; ++i)
            m.add_event("n" + std::to_string(i), EventKind::latent, i, 0, 10);
        CHECK_THROWS_AS(joint_distribution(m, 10000000), CapExceeded);
    }
}

TEST_CASE("d-separation textbook cases") {
    SUBCASE("chain blocked by its middle") {
        CausalModel m;
        m.add_event("X", EventKind::latent, 0, 0, 2);
        m.add_event("Z", EventKind::latent, 1, 0, 2);
        m.add_event("Y", EventKind::latent, 2, 0, 2);
        m.add_edge("X", "Z");
        m.add_edge("Z", "Y");
        CHECK(d_separated(m, m.at("X"), m.at("Y"), {m.at("Z")}));
        CHECK_FALSE(d_separated(m, m.at("X"), m.at("Y"), {}));
    }
    SUBCASE("collider opens when conditioned") {
        CausalModel m = xor_collider();
        CHECK(d_separated(m, m.at("X"), m.at("Y"), {}));
        CHECK_FALSE(d_separated(m, m.at("X"), m.at("Y"), {m.at("Z")}));
    }
    SUBCASE("bell dag: a and B are separated given lambda") {
        CausalModel m = bell_dag(BellDagVariant::local_causal);
        CHECK(d_separated(m, m.at("a"), m.at("B"), {m.at("lambda")}));
        CHECK(d_separated(m, m.at("a"), m.at("B"), {}));
        CHECK_FALSE(d_separated(m, m.at("A"), m.at("B"), {}));
        CHECK(d_separated(m, m.at("A"), m.at("B"), {m.at("lambda"), m.at("a"), m.at("b")}));
    }
    SUBCASE("disjointness is enforced") {
        CausalModel m = copy_chain();
        CHECK_THROWS_AS(d_separated(m, m.at("X"), m.at("Y"), {m.at("X")}), DomainError);
    }
}

TEST_CASE("conditional independence from the joint") {
    SUBCASE("independent coins") {
        JointDistribution jd = joint_distribution(two_fair_coins());
        CHECK(conditionally_independent(jd, {0}, {1}, {}, 1e-9));
        CHECK_FALSE(correlated(jd, {0}, {1}));
    }
    SUBCASE("copy chain is dependent") {
        JointDistribution jd = joint_distribution(copy_chain());
        CHECK_FALSE(conditionally_independent(jd, {0}, {1}, {}, 1e-9));
        CHECK(dependence_gap(jd, {0}, {1}, {}) == doctest::Approx(0.25));
    }
    SUBCASE("conditioning an xor collider correlates its parents") {
        CausalModel m = xor_collider();
        JointDistribution jd = joint_distribution(m);
        CHECK(conditionally_independent(jd, {0}, {1}, {}, 1e-9));
        CHECK_FALSE(conditionally_independent(jd, {0}, {1}, {2}, 1e-9));
        // Oracle: given Z = 0 the parent pairs (0,0) and (1,1) carry 1/2 each,
        // so P(x,y|z) - P(x|z)P(y|z) = 1/2 - 1/4.
        CHECK(dependence_gap(jd, {0}, {1}, {2}) == doctest::Approx(0.25));
    }
}

TEST_CASE("subset enumeration is ordered and complete") {
    std::vector<std::size_t> pool{0, 1, 2, 3, 4};
    auto subs = subsets_up_to(pool, 3);
    CHECK(subs.size() == 1 + 5 + 10 + 10);
    CHECK(subs.front().empty());
    for (std::size_t i = 1; i < subs.size(); ++i)
        CHECK(subs[i - 1].size() <= subs[i].size());
    auto all = subsets_up_to(pool, 5);
    CHECK(all.size() == 32);
}

TEST_CASE("markov soundness: d-separation implies numeric independence") {
    for (std::uint64_t trial = 0; trial < 120; ++trial) {
        Rng rng = Rng::split(9876, trial);
        CausalModel m = random_causal_model(rng, trial % 2 == 0);
        JointDistribution jd = joint_distribution(m);
        std::size_t n = m.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                std::vector<std::size_t> rest;
                for (std::size_t k = 0; k < n; ++k)
                    if (k != i && k != j) rest.push_back(k);
                for (const auto& Z : subsets_up_to(rest, 2))
                    if (d_separated(m, i, j, Z))
                        CHECK(dependence_gap(jd, {i}, {j}, Z) <= 1e-9);
            }
    }
}

TEST_CASE("a joint block carries correlations the graph does not explain") {
    Phenomenon<double> f = born_phenomenon(
        singlet(), {BlochSetting::from_polar(0.0), BlochSetting::from_polar(M_PI_2)},
        {BlochSetting::from_polar(M_PI_4), BlochSetting::from_polar(3 * M_PI_4)});
    CausalModel m = operational_model(f, false);
    JointDistribution jd = joint_distribution(m);
    // The graph separates A from B unconditionally, but the block joint does
    // not factorize: exactly the non-Markovian gap operational models carry.
    CHECK(d_separated(m, m.at("A"), m.at("B"), {}));
    CHECK(correlated(jd, {m.at("A")}, {m.at("B")}));
    // Signal-locality still holds in the distribution.
    CHECK(conditionally_independent(jd, {m.at("B")}, {m.at("a")}, {m.at("b")}, 1e-9));
}

TEST_CASE("bell dag geometry") {
    CausalModel lc = bell_dag(BellDagVariant::local_causal);
    CHECK(spacelike_separated(lc.event(lc.at("A")), lc.event(lc.at("B"))));
    CHECK(spacelike_separated(lc.event(lc.at("a")), lc.event(lc.at("b"))));
    for (auto [u, v] : lc.edges()) CHECK(in_past_lightcone(lc.event(u), lc.event(v)));

    CausalModel sl = bell_dag(BellDagVariant::superluminal);
    bool superluminal_edge_found = false;
    for (auto [u, v] : sl.edges())
        if (!in_past_lightcone(sl.event(u), sl.event(v))) {
            superluminal_edge_found = true;
            CHECK(sl.event(u).label == "a");
            CHECK(sl.event(v).label == "B");
        }
    CHECK(superluminal_edge_found);

    CausalModel sd = bell_dag(BellDagVariant::superdeterministic);
    CHECK(sd.superdeterministic_candidate());
    CHECK_FALSE(lc.superdeterministic_candidate());
}
