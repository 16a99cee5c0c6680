#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fdmmf/core.hpp"
#include "fdmmf/rng.hpp"

using namespace fdmmf;

namespace {

SystemConfig unit_config(int M, int B, int T = 1) {
    SystemConfig cfg;
    cfg.num_ues = M;
    cfg.num_rbs = B;
    cfg.num_samples = T;
    cfg.p_bs_max = static_cast<double>(B);
    cfg.p_ue_max = 2.0;
    cfg.noise_bs = 1.0;
    cfg.noise_ue.assign(M, 1.0);
    cfg.si_gain.assign(B, 1.0);
    cfg.weights.assign(M, 1.0);
    return cfg;
}

ChannelSample ones_sample(int M, int B) {
    ChannelSample s(M, B);
    for (int i = 0; i < M; ++i)
        for (int b = 0; b < B; ++b) {
            s.h_at(i, b) = 1.0;
            s.g_at(i, b) = 1.0;
        }
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i)
            for (int b = 0; b < B; ++b) s.f_at(j, i, b) = 1.0;
    return s;
}

}  // namespace

TEST_CASE("unit conversions") {
    CHECK(dbm_to_watts(30.0) == Catch::Approx(1.0));
    CHECK(dbm_to_watts(0.0) == Catch::Approx(0.001));
    // independently: 10^((23-30)/10)
    CHECK(dbm_to_watts(23.0) == Catch::Approx(std::pow(10.0, -0.7)).epsilon(1e-12));
    CHECK(dbm_to_watts(23.0) == Catch::Approx(0.199526).margin(1e-6));
    CHECK(db_to_linear(0.0) == Catch::Approx(1.0));
    CHECK(db_to_linear(-110.0) == Catch::Approx(1e-11).epsilon(1e-9));
}

TEST_CASE("pair_rates matches the hand-computed unit-gain cases") {
    auto cfg = unit_config(2, 1);
    auto s = ones_sample(2, 1);

    SECTION("zero co-channel gain, p_d=1, p_u=2 gives (1,1)") {
        s.f_at(1, 0, 0) = 0.0;
        const PairRates r = pair_rates(s, 0, 1, 0, 1.0, 2.0, cfg);
        CHECK(r.dl == Catch::Approx(1.0).margin(1e-12));
        CHECK(r.ul == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("zero power gives zero rates") {
        const PairRates r = pair_rates(s, 0, 1, 0, 0.0, 0.0, cfg);
        CHECK(r.dl == 0.0);
        CHECK(r.ul == 0.0);
    }
    SECTION("unit co-channel gain degrades the downlink rate to log2(4/3)") {
        const PairRates r = pair_rates(s, 0, 1, 0, 1.0, 2.0, cfg);
        CHECK(r.dl == Catch::Approx(std::log2(4.0 / 3.0)).margin(1e-12));
        CHECK(r.dl == Catch::Approx(0.41504).margin(1e-5));
        CHECK(r.ul == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("self pairing is rejected") {
        CHECK_THROWS_AS(pair_rates(s, 1, 1, 0, 1.0, 1.0, cfg), std::invalid_argument);
    }
}

TEST_CASE("rate monotonicity in own and cross power") {
    auto cfg = unit_config(2, 1);
    RandomStream rng(123);
    for (int k = 0; k < 200; ++k) {
        auto s = ones_sample(2, 1);
        s.h_at(0, 0) = 0.1 + rng.next_double();
        s.f_at(1, 0, 0) = 0.1 + rng.next_double();
        const double pd = 0.1 + rng.next_double();
        const double pu = 0.1 + rng.next_double();
        const double eps = 1e-3;
        const PairRates base = pair_rates(s, 0, 1, 0, pd, pu, cfg);
        CHECK(pair_rates(s, 0, 1, 0, pd + eps, pu, cfg).dl > base.dl);
        CHECK(pair_rates(s, 0, 1, 0, pd, pu + eps, cfg).dl < base.dl);
    }
}

TEST_CASE("ue_rate sums over assigned RBs and is zero when unassigned") {
    auto cfg = unit_config(2, 2);
    Instance inst;
    inst.config = cfg;
    auto s = ones_sample(2, 2);
    s.f_at(1, 0, 0) = 0.0;
    s.f_at(1, 0, 1) = 0.0;
    s.h_at(0, 1) = 3.0;  // distinct per-RB rates
    inst.samples.push_back(s);
    inst.validate();

    PowerProfile pw(1, 2, 2);
    pw.dl_at(0, 0) = 1.0;
    pw.dl_at(0, 1) = 1.0;
    pw.ul_at(0, 1, 0) = 2.0;
    pw.ul_at(0, 1, 1) = 2.0;

    Schedule sch(2, 2);
    sch.alpha = {1, 0};
    sch.set_x(0, 1, 0, true);
    sch.set_x(0, 1, 1, true);

    const double r0 = ue_rate(sch, inst.samples[0], pw, 0, 0, cfg);
    const double r_rb0 = pair_rates(s, 0, 1, 0, 1.0, 2.0, cfg).dl;
    const double r_rb1 = pair_rates(s, 0, 1, 1, 1.0, 2.0, cfg).dl;
    CHECK(r0 == Catch::Approx(r_rb0 + r_rb1).margin(1e-12));

    Schedule empty(2, 2);
    CHECK(ue_rate(empty, inst.samples[0], pw, 0, 0, cfg) == 0.0);
}

TEST_CASE("mmf_objective") {
    SECTION("theorem-style 1-RB pairing reaches 1.0") {
        auto cfg = unit_config(2, 1);
        Instance inst;
        inst.config = cfg;
        auto s = ones_sample(2, 1);
        s.f_at(1, 0, 0) = 0.0;
        inst.samples.push_back(s);
        inst.validate();
        PowerProfile pw(1, 2, 1);
        pw.dl_at(0, 0) = 1.0;
        pw.ul_at(0, 1, 0) = 2.0;
        Schedule sch(2, 1);
        sch.alpha = {1, 0};
        sch.set_x(0, 1, 0, true);
        CHECK(mmf_objective(sch, inst, pw) == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("an unpaired UE forces exactly zero") {
        auto cfg = unit_config(3, 2);
        Instance inst;
        inst.config = cfg;
        inst.samples.push_back(ones_sample(3, 2));
        inst.validate();
        PowerProfile pw(1, 3, 2);
        Schedule sch(3, 2);
        sch.alpha = {1, 0, 0};
        sch.set_x(0, 1, 0, true);
        sch.set_x(0, 1, 1, true);  // UE 2 never paired
        CHECK(mmf_objective(sch, inst, pw) == 0.0);
    }
    SECTION("average over samples: minima 0.4 and 0.8 give 0.6") {
        // Build two samples whose per-sample minima are exactly 0.4 and 0.8
        // by solving for the needed downlink gain: log2(1+p*h) = r.
        auto cfg = unit_config(2, 1, 2);
        cfg.si_gain[0] = 0.0;
        Instance inst;
        inst.config = cfg;
        for (double r : {0.4, 0.8}) {
            auto s = ones_sample(2, 1);
            s.f_at(1, 0, 0) = 0.0;
            s.h_at(0, 0) = std::pow(2.0, r) - 1.0;              // p_d = 1
            s.g_at(1, 0) = (std::pow(2.0, r + 1.0) - 1.0) / 2.0;  // > dl rate, p_u = 2
            inst.samples.push_back(s);
        }
        inst.validate();
        PowerProfile pw(2, 2, 1);
        for (int t = 0; t < 2; ++t) {
            pw.dl_at(t, 0) = 1.0;
            pw.ul_at(t, 1, 0) = 2.0;
        }
        Schedule sch(2, 1);
        sch.alpha = {1, 0};
        sch.set_x(0, 1, 0, true);
        CHECK(mmf_objective(sch, inst, pw) == Catch::Approx(0.6).margin(1e-12));
    }
}

TEST_CASE("check_schedule reports each family independently") {
    auto cfg = unit_config(3, 2);

    SECTION("rounded simple-relaxation schedule violates HD and pairing") {
        // alpha = (1,0,0); RB1 carries pair (3,1), RB2 carries pair (1,3)
        // in 1-based terms.
        Schedule sch(3, 2);
        sch.alpha = {1, 0, 0};
        sch.set_x(2, 0, 0, true);
        sch.set_x(0, 2, 1, true);
        const FeasibilityReport rep = check_schedule(sch, cfg);
        CHECK(rep.ofdma_ok);
        CHECK_FALSE(rep.hd_ok);
        CHECK_FALSE(rep.pairing_ok);
        CHECK(rep.violating_ues == std::vector<int>{1});
    }
    SECTION("valid full cover passes everything") {
        Schedule sch(3, 2);
        sch.alpha = {1, 0, 1};
        sch.set_x(0, 1, 0, true);
        sch.set_x(2, 1, 1, true);
        const FeasibilityReport rep = check_schedule(sch, cfg);
        CHECK(rep.ofdma_ok);
        CHECK(rep.hd_ok);
        CHECK(rep.pairing_ok);
        CHECK(rep.violating_ues.empty());
    }
    SECTION("empty RB breaks OFDMA") {
        Schedule sch(3, 2);
        sch.alpha = {1, 0, 0};
        sch.set_x(0, 1, 0, true);
        const FeasibilityReport rep = check_schedule(sch, cfg);
        CHECK_FALSE(rep.ofdma_ok);
    }
    SECTION("dimension mismatch throws") {
        Schedule sch(2, 2);
        CHECK_THROWS_AS(check_schedule(sch, cfg), std::invalid_argument);
    }
}

TEST_CASE("config validation") {
    auto cfg = unit_config(4, 1);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // M > 2B
    cfg = unit_config(2, 1);
    cfg.noise_ue[0] = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = unit_config(2, 1);
    cfg.weights[1] = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
