#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bellscope/correlators.hpp"
#include "bellscope/random_models.hpp"
#include "bellscope/text_format.hpp"

#include "helpers.hpp"

using namespace bellscope;
using namespace bellscope::testing;

namespace {

const char* kUniformPhenomenon = R"(version = 1
[phenomenon]
settings = 2 2
outcomes = 2 2
row a=0 b=0 : 1/4 1/4 1/4 1/4
row a=0 b=1 : 1/4 1/4 1/4 1/4
row a=1 b=0 : 1/4 1/4 1/4 1/4
row a=1 b=1 : 1/4 1/4 1/4 1/4
)";

} // namespace

TEST_CASE("minimal phenomenon file parses to a 2-2-2-2 scenario") {
    ScenarioFile f = parse_scenario_file(kUniformPhenomenon);
    const auto& ph = std::get<PhenomenonBlock>(f.block);
    CHECK(ph.scenario.alice_settings == 2);
    CHECK(ph.scenario.bob_settings == 2);
    CHECK(ph.scenario.alice_outcomes == 2);
    CHECK(ph.scenario.bob_outcomes == 2);
    CHECK(ph.exact);
    CHECK(ph.exact_table->at(0, 0, 0, 0) == Rational(1, 4));
}

TEST_CASE("a row summing to 0.9 is rejected naming the block") {
    std::string text = R"(version = 1
[phenomenon]
settings = 2 2
outcomes = 2 2
row a=0 b=0 : 0.25 0.25 0.25 0.25
row a=0 b=1 : 0.25 0.25 0.25 0.15
row a=1 b=0 : 0.25 0.25 0.25 0.25
row a=1 b=1 : 0.25 0.25 0.25 0.25
)";
    try {
        parse_scenario_file(text);
        FAIL("expected NonNormalized");
    } catch (const NonNormalized& e) {
        CHECK(std::string(e.what()).find("a=0 b=1") != std::string::npos);
    }
}

TEST_CASE("quantum tsirelson block parses") {
    std::string text = R"(version = 1
[quantum]
state = singlet
alice = 0 1.5707963267948966
bob = 0.7853981633974483 2.356194490192345
)";
    ScenarioFile f = parse_scenario_file(text);
    const auto& q = std::get<QuantumBlock>(f.block);
    CHECK(q.state_spec == "singlet");
    REQUIRE(q.alice_angles.size() == 2);
    REQUIRE(q.bob_angles.size() == 2);
    Phenomenon<double> born = born_phenomenon(q.state(), q.alice_dirs(), q.bob_dirs());
    CHECK(std::fabs(max_abs_chsh(born) - 2.0 * std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("version handling") {
    CHECK_THROWS_AS(parse_scenario_file("version = 2\n[phenomenon]\n"), UnknownVersion);
    CHECK_THROWS_AS(parse_scenario_file("[phenomenon]\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario_file(""), ParseError);
}

TEST_CASE("structural parse errors carry line numbers") {
    std::string text = "version = 1\n[phenomenon]\nsettings = 2 2\noutcomes = 2 2\nrow a=0 : 1\n";
    try {
        parse_scenario_file(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 5);
    }
}

TEST_CASE("non-finite entries are rejected") {
    std::string text = R"(version = 1
[phenomenon]
settings = 1 1
outcomes = 2 2
row a=0 b=0 : nan 0.25 0.25 0.25
)";
    CHECK_THROWS_AS(parse_scenario_file(text), NonNormalized);
}

TEST_CASE("mixed exact and floating entries are rejected") {
    std::string text = R"(version = 1
[phenomenon]
settings = 2 2
outcomes = 2 2
row a=0 b=0 : 1/4 0.25 1/4 1/4
row a=0 b=1 : 1/4 1/4 1/4 1/4
row a=1 b=0 : 1/4 1/4 1/4 1/4
row a=1 b=1 : 1/4 1/4 1/4 1/4
)";
    CHECK_THROWS_AS(parse_scenario_file(text), ParseError);
}

TEST_CASE("two primary sections are rejected") {
    std::string text = std::string(kUniformPhenomenon) + "[quantum]\nstate = singlet\n";
    CHECK_THROWS_AS(parse_scenario_file(text), ParseError);
}

TEST_CASE("hv-model block round trip") {
    Scenario sc = chsh_scenario();
    Rng rng(2718);
    HVModel<Rational> m = random_model(sc, rng);
    ScenarioFile f;
    HvModelBlock blk;
    blk.scenario = sc;
    blk.exact = true;
    blk.exact_model = m;
    f.block = blk;
    std::string text = serialize(f);
    ScenarioFile f2 = parse_scenario_file(text);
    const auto& got = std::get<HvModelBlock>(f2.block);
    REQUIRE(got.exact);
    CHECK(got.exact_model->prior() == m.prior());
    CHECK(got.exact_model->response() == m.response());
    CHECK(got.exact_model->lambda_labels() == m.lambda_labels());
    CHECK(serialize(f2) == text);
}

TEST_CASE("serialize-parse is a fixpoint after one pass, all block kinds") {
    std::vector<std::string> inputs;
    inputs.push_back(kUniformPhenomenon);
    inputs.push_back("version = 1\n[quantum]\nstate = werner:0.5\nalice = 0 1\nbob = 0.5 2\n");
    inputs.push_back(
        "version = 1\n[quantum]\nstate = matrix\n"
        "rho : 0 0 0 0 0 0.5 -0.5 0 0 -0.5 0.5 0 0 0 0 0\n"
        "alice = 0 1.5707963267948966\nbob = 0.7853981633974483 2.356194490192345\n");
    inputs.push_back(R"(version = 1
[causal-model]
event x kind=latent t=0 x=0 arity=2
event y kind=outcome t=1 x=0.5 arity=2
edge x -> y
cpt x : 0.25 0.75
cpt y | x=0 : 1 0
cpt y | x=1 : 0.125 0.875
[analysis]
tol = 1e-07
)");
    for (const std::string& text : inputs) {
        ScenarioFile f1 = parse_scenario_file(text);
        std::string s1 = serialize(f1);
        ScenarioFile f2 = parse_scenario_file(s1);
        std::string s2 = serialize(f2);
        CHECK(s1 == s2);
    }
}

TEST_CASE("complex entries parse in all the written forms") {
    std::string text =
        "version = 1\n[quantum]\nstate = matrix\n"
        "rho : 0.5 0 0 0.1-0.2i 0 0 0 0 0 0 0 0 0.1+0.2i 0 0 0.5\n"
        "alice = 0\nbob = 0\n";
    ScenarioFile f = parse_scenario_file(text);
    const auto& q = std::get<QuantumBlock>(f.block);
    CHECK(q.rho(0, 3) == Complex(0.1, -0.2));
    CHECK(q.rho(3, 0) == Complex(0.1, 0.2));
    CHECK(q.rho(0, 0) == Complex(0.5, 0.0));
}

TEST_CASE("causal block with multi-node cpt and analysis directives") {
    std::string text = R"(version = 1
[causal-model]
event a kind=free_choice t=0 x=-1 arity=2
event b kind=free_choice t=0 x=1 arity=2
event A kind=outcome t=1 x=-1 arity=2
event B kind=outcome t=1 x=1 arity=2
edge a -> A
edge b -> B
cpt a : 1/2 1/2
cpt b : 1/2 1/2
cpt A B | a=0 b=0 : 0.5 0 0 0.5
cpt A B | a=0 b=1 : 0.5 0 0 0.5
cpt A B | a=1 b=0 : 0.5 0 0 0.5
cpt A B | a=1 b=1 : 0 0.5 0.5 0
[analysis]
tol = 1e-06
denominator_cap = 4096
seed = 99
)";
    ScenarioFile f = parse_scenario_file(text);
    CHECK(f.analysis.tol == 1e-06);
    CHECK(f.analysis.denominator_cap == 4096);
    CHECK(f.analysis.seed == 99);
    const CausalModel& m = std::get<CausalBlock>(f.block).model;
    JointDistribution jd = joint_distribution(m);
    double sum = 0;
    for (double p : jd.p) sum += p;
    CHECK(sum == doctest::Approx(1.0));
    CHECK(serialize(parse_scenario_file(serialize(f))) == serialize(f));
}

TEST_CASE("unknown labels and bad cpt shapes are parse errors") {
    std::string base = "version = 1\n[causal-model]\n"
                       "event x kind=latent t=0 x=0 arity=2\n";
    CHECK_THROWS_AS(parse_scenario_file(base + "edge x -> y\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario_file(base + "cpt x : 1 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario_file(base + "cpt x | y=0 : 1 0\n"), ParseError);
}
