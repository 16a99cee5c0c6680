#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include "fdmmf/scenario.hpp"

using namespace fdmmf;

TEST_CASE("path loss law") {
    CHECK(path_loss_db(1.0) == Catch::Approx(140.7).margin(1e-12));
    CHECK(path_loss_db(0.1) == Catch::Approx(104.0).margin(1e-12));
}

TEST_CASE("generate_instance is deterministic and positive") {
    ScenarioSpec spec;
    spec.M = 4;
    spec.B = 3;
    spec.T = 2;
    spec.seed = 42;

    const Instance a = generate_instance(spec);
    const Instance b = generate_instance(spec);
    REQUIRE(a.samples.size() == 2);
    CHECK(a.seed == 42);
    for (size_t t = 0; t < a.samples.size(); ++t) {
        CHECK(a.samples[t].h == b.samples[t].h);
        CHECK(a.samples[t].g == b.samples[t].g);
        CHECK(a.samples[t].f == b.samples[t].f);
    }
    for (const auto& s : a.samples) {
        for (double v : s.h) CHECK(v > 0.0);
        for (double v : s.g) CHECK(v > 0.0);
        for (double v : s.f) CHECK(v > 0.0);
    }

    ScenarioSpec other = spec;
    other.seed = 43;
    const Instance c = generate_instance(other);
    CHECK(a.samples[0].h != c.samples[0].h);

    // config carried over from the dBm fields
    CHECK(a.config.p_bs_max == Catch::Approx(1.0));
    CHECK(a.config.p_ue_max == Catch::Approx(dbm_to_watts(23.0)));
    CHECK(a.config.noise_bs == Catch::Approx(1e-12));
    CHECK(a.config.si_gain[0] == Catch::Approx(1e-11));
}

TEST_CASE("generate_instance rejects overloaded cells") {
    ScenarioSpec spec;
    spec.M = 7;
    spec.B = 3;
    CHECK_THROWS_AS(generate_instance(spec), std::invalid_argument);
}

TEST_CASE("ScenarioSpec JSON round trip and strictness") {
    ScenarioSpec spec;
    spec.M = 8;
    spec.B = 16;
    spec.T = 5;
    spec.cell_radius = 0.2;
    spec.seed = 7;
    nlohmann::json j = spec;
    const ScenarioSpec back = j.get<ScenarioSpec>();
    CHECK(back.M == spec.M);
    CHECK(back.B == spec.B);
    CHECK(back.T == spec.T);
    CHECK(back.cell_radius == spec.cell_radius);
    CHECK(back.seed == spec.seed);
    CHECK(back.p_ue_dbm == 23.0);

    SECTION("unknown keys rejected") {
        nlohmann::json bad = {{"M", 4}, {"B", 4}, {"bandwidth", 20}};
        CHECK_THROWS_AS(bad.get<ScenarioSpec>(), std::invalid_argument);
    }
    SECTION("defaults applied") {
        nlohmann::json min = {{"M", 4}, {"B", 4}};
        const ScenarioSpec s = min.get<ScenarioSpec>();
        CHECK(s.T == 10);
        CHECK(s.noise_dbm == -90.0);
        CHECK(s.si_db == -110.0);
        CHECK(s.cell_radius == 0.1);
    }
    SECTION("missing M rejected") {
        nlohmann::json min = {{"B", 4}};
        CHECK_THROWS_AS(min.get<ScenarioSpec>(), std::invalid_argument);
    }
}

TEST_CASE("reduction instance follows the matching construction") {
    ThreeDMInstance tdm;
    tdm.K = 2;
    tdm.triples = {{1, 1, 1}, {2, 2, 2}};
    const Instance inst = build_reduction_instance(tdm);

    CHECK(inst.config.num_ues == 4);
    CHECK(inst.config.num_rbs == 2);
    CHECK(inst.config.num_ues == 2 * inst.config.num_rbs);  // full load by design
    CHECK(inst.config.num_samples == 1);
    CHECK(inst.config.p_bs_max == 2.0);
    CHECK(inst.config.p_ue_max == 2.0);

    const ChannelSample& s = inst.samples[0];
    for (int i = 0; i < 4; ++i)
        for (int b = 0; b < 2; ++b) {
            CHECK(s.h_at(i, b) == 1.0);
            CHECK(s.g_at(i, b) == 1.0);
        }
    // triple (1,1,1): UE0 (X side) with UE2 (Y side) on RB0, both orders
    CHECK(s.f_at(2, 0, 0) == 0.0);
    CHECK(s.f_at(0, 2, 0) == 0.0);
    CHECK(s.f_at(3, 1, 1) == 0.0);
    CHECK(s.f_at(1, 3, 1) == 0.0);
    // everything else stays 1
    CHECK(s.f_at(2, 0, 1) == 1.0);
    CHECK(s.f_at(3, 0, 0) == 1.0);

    // full f-tensor symmetry
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            for (int b = 0; b < 2; ++b) CHECK(s.f_at(j, i, b) == s.f_at(i, j, b));
}

TEST_CASE("reduction validates triples") {
    ThreeDMInstance tdm;
    tdm.K = 1;
    tdm.triples = {{1, 2, 1}};
    CHECK_THROWS_AS(build_reduction_instance(tdm), std::invalid_argument);
}
