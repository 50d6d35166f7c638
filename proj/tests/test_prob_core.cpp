#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bellscope/hv_model.hpp"
#include "bellscope/phenomenon.hpp"
#include "bellscope/random_models.hpp"
#include "bellscope/rng.hpp"

#include "helpers.hpp"

using namespace bellscope;
using namespace bellscope::testing;

TEST_CASE("scenario rejects zero cardinalities") {
    CHECK_THROWS_AS(Scenario(0, 2, 2, 2), DomainError);
    CHECK_THROWS_AS(Scenario(2, 2, 2, 0), DomainError);
    CHECK(Scenario(2, 3, 2, 4).cells() == 2 * 3 * 2 * 4);
}

TEST_CASE("phenomenon validation") {
    Scenario sc = chsh_scenario();
    SUBCASE("block sum below one is rejected") {
        std::vector<Rational> t(sc.cells(), Rational(1, 5));
        CHECK_THROWS_AS(Phenomenon<Rational>(sc, t), NonNormalized);
    }
    SUBCASE("negative cell is rejected") {
        std::vector<Rational> t(sc.cells(), Rational(1, 4));
        t[0] = Rational(-1, 4);
        t[1] = Rational(3, 4);
        CHECK_THROWS_AS(Phenomenon<Rational>(sc, t), NonNormalized);
    }
    SUBCASE("floating table accepts rounding inside tolerance") {
        std::vector<double> t(sc.cells(), 0.25);
        t[0] = 0.25 + 1e-12;
        t[1] = 0.25 - 1e-12;
        CHECK_NOTHROW(Phenomenon<double>(sc, t));
    }
}

TEST_CASE("hv-model validation") {
    Scenario sc = chsh_scenario();
    std::vector<Rational> prior{Rational(1, 2), Rational(1, 3)}; // sums to 5/6
    std::vector<Rational> response(2 * sc.cells(), Rational(1, 4));
    CHECK_THROWS_AS(HVModel<Rational>(sc, {"x", "y"}, prior, response), NonNormalizedModel);
}

TEST_CASE("one-point lambda model predicts its own response row") {
    Phenomenon<Rational> f = pr_box();
    HVModel<Rational> m = trivial_model(f);
    Phenomenon<Rational> predicted = predicted_phenomenon(m);
    CHECK(predicted.table() == f.table());
    CHECK(reproduces(m, f, Rational(0)));
}

TEST_CASE("equiprobable shared coin gives half-half diagonal") {
    // Hand evaluation of the defining sum: each lambda contributes
    // 1/2 * [A=B=lambda], so the diagonal cells are 1/2 and the rest 0.
    Scenario sc = chsh_scenario();
    HVModel<Rational> m = shared_coin_model(sc);
    Phenomenon<Rational> f = predicted_phenomenon(m);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            CHECK(f.at(a, b, 0, 0) == Rational(1, 2));
            CHECK(f.at(a, b, 1, 1) == Rational(1, 2));
            CHECK(f.at(a, b, 0, 1) == Rational(0));
            CHECK(f.at(a, b, 1, 0) == Rational(0));
        }
    CHECK_FALSE(reproduces(m, uniform_phenomenon<Rational>(sc), Rational(0)));
}

TEST_CASE("reproduces rejects shape mismatches") {
    HVModel<Rational> m = shared_coin_model(chsh_scenario());
    Phenomenon<Rational> other = uniform_phenomenon<Rational>(Scenario(3, 2, 2, 2));
    CHECK_THROWS_AS(reproduces(m, other), ScenarioMismatch);
}

TEST_CASE("marginals") {
    SUBCASE("uniform table has half marginals") {
        Phenomenon<Rational> f = uniform_phenomenon<Rational>(chsh_scenario());
        MarginalTable<Rational> mb = marginal(f, Side::bob);
        for (std::size_t B = 0; B < 2; ++B)
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t a = 0; a < 2; ++a)
                    CHECK(mb.at(B, b, a) == Rational(1, 2));
    }
    SUBCASE("PR box marginals are uniform") {
        // Oracle: sum the PR-box definition directly over the remote outcome.
        Phenomenon<Rational> f = pr_box();
        for (Side side : {Side::alice, Side::bob}) {
            MarginalTable<Rational> m = marginal(f, side);
            for (std::size_t o = 0; o < 2; ++o)
                for (std::size_t l = 0; l < 2; ++l)
                    for (std::size_t r = 0; r < 2; ++r)
                        CHECK(m.at(o, l, r) == Rational(1, 2));
        }
    }
    SUBCASE("table where B copies a is signaling in the marginal") {
        Phenomenon<Rational> f = bob_copies_a();
        MarginalTable<Rational> mb = marginal(f, Side::bob);
        for (std::size_t b = 0; b < 2; ++b) {
            CHECK(mb.at(1, b, 1) == Rational(1)); // f(B=1|a=1,b) = 1
            CHECK(mb.at(1, b, 0) == Rational(0)); // f(B=1|a=0,b) = 0
        }
    }
}

TEST_CASE("prediction is linear in the prior mixture") {
    // Mixing two models over the same response rows with weights (w, 1-w)
    // must mix their predicted tables cell by cell.
    Scenario sc = chsh_scenario();
    for (std::uint64_t trial = 0; trial < 25; ++trial) {
        Rng rng = Rng::split(20240627, trial);
        HVModel<Rational> m1 = random_model(sc, rng);
        HVModel<Rational> m2 = random_model(sc, rng);
        Rational w(static_cast<long>(rng.below(65)), 64);

        std::vector<std::string> labels = m1.lambda_labels();
        for (const auto& l : m2.lambda_labels()) labels.push_back(l + "'");
        std::vector<Rational> prior;
        for (const Rational& p : m1.prior()) prior.push_back(w * p);
        for (const Rational& p : m2.prior()) prior.push_back((Rational(1) - w) * p);
        std::vector<Rational> response = m1.response();
        response.insert(response.end(), m2.response().begin(), m2.response().end());
        HVModel<Rational> mixed(sc, labels, prior, response);

        Phenomenon<Rational> fm = predicted_phenomenon(mixed);
        Phenomenon<Rational> f1 = predicted_phenomenon(m1);
        Phenomenon<Rational> f2 = predicted_phenomenon(m2);
        for (std::size_t c = 0; c < sc.cells(); ++c)
            CHECK(fm.table()[c] == w * f1.table()[c] + (Rational(1) - w) * f2.table()[c]);
    }
}

TEST_CASE("exact prediction is bit-identical across repeated evaluation") {
    Scenario sc(3, 2, 2, 3);
    Rng rng(99);
    HVModel<Rational> m = random_model(sc, rng);
    Phenomenon<Rational> f1 = predicted_phenomenon(m);
    Phenomenon<Rational> f2 = predicted_phenomenon(m);
    CHECK(f1.table() == f2.table());
    for (const Rational& p : f1.table()) {
        CHECK(p >= 0);
        CHECK(p <= 1);
    }
}

TEST_CASE("rationalized floating tables renormalize exactly") {
    Scenario sc = chsh_scenario();
    std::vector<double> t(sc.cells(), 0.0);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            t[sc.cell(a, b, 0, 0)] = 0.85355339059327373; // cos^2(pi/8)
            t[sc.cell(a, b, 0, 1)] = 0.14644660940672624;
            t[sc.cell(a, b, 1, 0)] = 0.0;
            t[sc.cell(a, b, 1, 1)] = 0.0;
        }
    Phenomenon<double> fd(sc, t);
    Phenomenon<Rational> fr = rationalized(fd, 1000000);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            Rational sum(0);
            for (std::size_t A = 0; A < 2; ++A)
                for (std::size_t B = 0; B < 2; ++B) sum += fr.at(a, b, A, B);
            CHECK(sum == Rational(1));
        }
    CHECK(sabs(scalar_traits<Rational>::to_double(fr.at(0, 0, 0, 0)) - 0.85355339059327373) <
          1e-9);
}
