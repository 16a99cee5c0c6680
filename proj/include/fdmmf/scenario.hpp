#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fdmmf/core.hpp"
#include "fdmmf/rng.hpp"

// Scenario generation: UEs dropped uniformly in a disk around the BS,
// log-distance path loss with i.i.d. Rayleigh-power fading redrawn per RB
// per sample, plus the 3-dimensional-matching reduction instance used as a
// hardness test fixture.

namespace fdmmf {

struct ScenarioSpec {
    int M = 0;
    int B = 0;
    int T = 10;
    double cell_radius = 0.1;   // km
    double p_bs_dbm = 30.0;
    double p_ue_dbm = 23.0;
    double noise_dbm = -90.0;
    double si_db = -110.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (M < 2 || B < 1 || T < 1) throw std::invalid_argument("ScenarioSpec: bad M/B/T");
        if (M > 2 * B) throw std::invalid_argument("ScenarioSpec: M > 2B");
        if (!(cell_radius > 0.0)) throw std::invalid_argument("ScenarioSpec: radius must be > 0");
    }
};

inline void to_json(nlohmann::json& j, const ScenarioSpec& s) {
    j = nlohmann::json{{"M", s.M},
                       {"B", s.B},
                       {"T", s.T},
                       {"cell_radius", s.cell_radius},
                       {"p_bs_dbm", s.p_bs_dbm},
                       {"p_ue_dbm", s.p_ue_dbm},
                       {"noise_dbm", s.noise_dbm},
                       {"si_db", s.si_db},
                       {"seed", s.seed}};
}

// Strict parse: unknown keys are rejected, M and B are required, everything
// else falls back to the defaults above.
inline void from_json(const nlohmann::json& j, ScenarioSpec& s) {
    static const char* known[] = {"M", "B", "T", "cell_radius", "p_bs_dbm",
                                  "p_ue_dbm", "noise_dbm", "si_db", "seed"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || (it.key() == k);
        if (!ok) throw std::invalid_argument("ScenarioSpec: unknown key '" + it.key() + "'");
    }
    if (!j.contains("M") || !j.contains("B"))
        throw std::invalid_argument("ScenarioSpec: M and B are required");
    s = ScenarioSpec{};
    j.at("M").get_to(s.M);
    j.at("B").get_to(s.B);
    if (j.contains("T")) j.at("T").get_to(s.T);
    if (j.contains("cell_radius")) j.at("cell_radius").get_to(s.cell_radius);
    if (j.contains("p_bs_dbm")) j.at("p_bs_dbm").get_to(s.p_bs_dbm);
    if (j.contains("p_ue_dbm")) j.at("p_ue_dbm").get_to(s.p_ue_dbm);
    if (j.contains("noise_dbm")) j.at("noise_dbm").get_to(s.noise_dbm);
    if (j.contains("si_db")) j.at("si_db").get_to(s.si_db);
    if (j.contains("seed")) j.at("seed").get_to(s.seed);
    s.validate();
}

// 3GPP-style log-distance path loss, d in km.
inline double path_loss_db(double d_km) { return 140.7 + 36.7 * std::log10(d_km); }

namespace detail {
constexpr std::uint64_t kPositionStream = 0x706f73ULL;  // "pos"
constexpr double kMinUeDistanceKm = 0.01;               // 10 m floor for UE-UE links
}  // namespace detail

// Draws one instance. Deterministic given spec.seed: positions come from one
// substream, each sample's fading from its own (seed, t) substream, so any
// sample can be regenerated in isolation.
inline Instance generate_instance(const ScenarioSpec& spec) {
    spec.validate();

    Instance inst;
    inst.seed = spec.seed;
    SystemConfig& cfg = inst.config;
    cfg.num_ues = spec.M;
    cfg.num_rbs = spec.B;
    cfg.num_samples = spec.T;
    cfg.p_bs_max = dbm_to_watts(spec.p_bs_dbm);
    cfg.p_ue_max = dbm_to_watts(spec.p_ue_dbm);
    cfg.noise_bs = dbm_to_watts(spec.noise_dbm);
    cfg.noise_ue.assign(spec.M, dbm_to_watts(spec.noise_dbm));
    cfg.si_gain.assign(spec.B, db_to_linear(spec.si_db));
    cfg.weights.assign(spec.M, 1.0);
    cfg.validate();

    // UE drop, BS at the origin.
    RandomStream pos_rng(derive_seed(spec.seed, detail::kPositionStream));
    std::vector<double> px(spec.M), py(spec.M), d_bs(spec.M);
    for (int i = 0; i < spec.M; ++i) {
        const double r = spec.cell_radius * std::sqrt(pos_rng.next_double());
        const double theta = 2.0 * M_PI * pos_rng.next_double();
        px[i] = r * std::cos(theta);
        py[i] = r * std::sin(theta);
        d_bs[i] = r;
    }

    std::vector<double> pl_bs(spec.M);
    for (int i = 0; i < spec.M; ++i)
        pl_bs[i] = db_to_linear(-path_loss_db(std::max(d_bs[i], 1e-6)));
    std::vector<double> pl_ue(static_cast<size_t>(spec.M) * spec.M);
    for (int a = 0; a < spec.M; ++a) {
        for (int c = 0; c < spec.M; ++c) {
            const double dx = px[a] - px[c];
            const double dy = py[a] - py[c];
            const double d = std::max(std::sqrt(dx * dx + dy * dy), detail::kMinUeDistanceKm);
            pl_ue[static_cast<size_t>(a) * spec.M + c] = db_to_linear(-path_loss_db(d));
        }
    }

    inst.samples.reserve(spec.T);
    for (int t = 0; t < spec.T; ++t) {
        RandomStream rng(derive_seed(spec.seed, 1, static_cast<std::uint64_t>(t)));
        ChannelSample s(spec.M, spec.B);
        for (int i = 0; i < spec.M; ++i)
            for (int b = 0; b < spec.B; ++b) s.h_at(i, b) = pl_bs[i] * rng.next_exp_fading();
        for (int j = 0; j < spec.M; ++j)
            for (int b = 0; b < spec.B; ++b) s.g_at(j, b) = pl_bs[j] * rng.next_exp_fading();
        for (int j = 0; j < spec.M; ++j)
            for (int i = 0; i < spec.M; ++i)
                for (int b = 0; b < spec.B; ++b)
                    s.f_at(j, i, b) =
                        pl_ue[static_cast<size_t>(j) * spec.M + i] * rng.next_exp_fading();
        inst.samples.push_back(std::move(s));
    }
    inst.validate();
    return inst;
}

// 3-dimensional matching instance: triples over {1..K}^3 (1-based, as the
// decision problem is usually written).
struct ThreeDMInstance {
    int K = 0;
    std::vector<std::array<int, 3>> triples;

    void validate() const {
        if (K < 1) throw std::invalid_argument("ThreeDMInstance: K must be >= 1");
        for (const auto& t : triples)
            for (int v : t)
                if (v < 1 || v > K)
                    throw std::invalid_argument("ThreeDMInstance: triple index out of range");
    }
};

// Builds the scheduling instance whose feasibility at target rate 1 is
// equivalent to the 3DM instance having a perfect match. UEs 0..K-1 play the
// X elements, UEs K..2K-1 the Y elements, RBs the Z elements. All direct
// gains are 1; the co-channel gain is 0 exactly on (symmetrized) triples of S
// and 1 elsewhere. Budgets: P_BS = B, P_UE = 2.
inline Instance build_reduction_instance(const ThreeDMInstance& tdm) {
    tdm.validate();
    const int K = tdm.K;
    const int M = 2 * K;
    const int B = K;

    Instance inst;
    inst.seed = 0;
    SystemConfig& cfg = inst.config;
    cfg.num_ues = M;
    cfg.num_rbs = B;
    cfg.num_samples = 1;
    cfg.p_bs_max = static_cast<double>(B);
    cfg.p_ue_max = 2.0;
    cfg.noise_bs = 1.0;
    cfg.noise_ue.assign(M, 1.0);
    cfg.si_gain.assign(B, 1.0);
    cfg.weights.assign(M, 1.0);

    ChannelSample s(M, B);
    for (int i = 0; i < M; ++i)
        for (int b = 0; b < B; ++b) {
            s.h_at(i, b) = 1.0;
            s.g_at(i, b) = 1.0;
        }
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i)
            for (int b = 0; b < B; ++b) s.f_at(j, i, b) = 1.0;
    for (const auto& t : tdm.triples) {
        const int i = t[0] - 1;      // X element as UE
        const int j = K + t[1] - 1;  // Y element as UE
        const int b = t[2] - 1;      // Z element as RB
        s.f_at(j, i, b) = 0.0;
        s.f_at(i, j, b) = 0.0;
    }
    inst.samples.push_back(std::move(s));
    inst.validate();
    return inst;
}

}  // namespace fdmmf
