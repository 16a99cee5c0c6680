#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

// Core model of a single-cell full-duplex OFDMA system: one FD base station,
// M half-duplex UEs, B resource blocks, T channel samples. A schedule is a
// transmission-direction vector alpha (1 = downlink) plus a pairing tensor x
// where x(i,j,b) = 1 means UE i receives downlink and UE j transmits uplink
// on RB b. All rates are in bit/s/Hz, all powers and noise in watts, all
// channel entries are linear power gains.

namespace fdmmf {

inline double db_to_linear(double value_db) { return std::pow(10.0, value_db / 10.0); }

inline double dbm_to_watts(double value_dbm) { return std::pow(10.0, (value_dbm - 30.0) / 10.0); }

struct SystemConfig {
    int num_ues = 0;      // M
    int num_rbs = 0;      // B
    int num_samples = 0;  // T
    double p_bs_max = 0.0;
    double p_ue_max = 0.0;
    double noise_bs = 0.0;           // sigma_0^2 at the BS receiver
    std::vector<double> noise_ue;    // sigma_i^2 per UE
    std::vector<double> si_gain;     // residual self-interference gain eta_b per RB
    std::vector<double> weights;     // fairness weights gamma_i > 0

    void validate() const {
        if (num_ues < 2) throw std::invalid_argument("SystemConfig: need at least 2 UEs");
        if (num_rbs < 1) throw std::invalid_argument("SystemConfig: need at least 1 RB");
        if (num_samples < 1) throw std::invalid_argument("SystemConfig: need at least 1 sample");
        if (num_ues > 2 * num_rbs)
            throw std::invalid_argument("SystemConfig: M > 2B, some UE could never be scheduled");
        if (!(p_bs_max >= 0.0) || !(p_ue_max >= 0.0))
            throw std::invalid_argument("SystemConfig: negative power budget");
        if (!(noise_bs > 0.0)) throw std::invalid_argument("SystemConfig: noise_bs must be > 0");
        if (static_cast<int>(noise_ue.size()) != num_ues ||
            static_cast<int>(si_gain.size()) != num_rbs ||
            static_cast<int>(weights.size()) != num_ues)
            throw std::invalid_argument("SystemConfig: per-UE/per-RB vector size mismatch");
        for (double s : noise_ue)
            if (!(s > 0.0)) throw std::invalid_argument("SystemConfig: noise_ue must be > 0");
        for (double e : si_gain)
            if (!(e >= 0.0)) throw std::invalid_argument("SystemConfig: si_gain must be >= 0");
        for (double g : weights)
            if (!(g > 0.0)) throw std::invalid_argument("SystemConfig: weights must be > 0");
    }
};

// One quasi-static CSI draw. f is indexed uplink-first: f_at(j, i, b) is the
// gain of the interference path from uplink UE j into downlink UE i on RB b.
// Diagonal f entries exist but are never read (self-pairing is forbidden).
struct ChannelSample {
    int M = 0;
    int B = 0;
    std::vector<double> h;  // M*B   downlink gains  |h_ib|^2
    std::vector<double> g;  // M*B   uplink gains    |g_jb|^2
    std::vector<double> f;  // M*M*B co-channel gains |f_jib|^2

    ChannelSample() = default;
    ChannelSample(int m, int b)
        : M(m), B(b), h(static_cast<size_t>(m) * b, 0.0), g(static_cast<size_t>(m) * b, 0.0),
          f(static_cast<size_t>(m) * m * b, 0.0) {}

    double h_at(int i, int b) const { return h[static_cast<size_t>(i) * B + b]; }
    double g_at(int j, int b) const { return g[static_cast<size_t>(j) * B + b]; }
    double f_at(int j_ul, int i_dl, int b) const {
        return f[(static_cast<size_t>(j_ul) * M + i_dl) * B + b];
    }
    double& h_at(int i, int b) { return h[static_cast<size_t>(i) * B + b]; }
    double& g_at(int j, int b) { return g[static_cast<size_t>(j) * B + b]; }
    double& f_at(int j_ul, int i_dl, int b) {
        return f[(static_cast<size_t>(j_ul) * M + i_dl) * B + b];
    }
};

struct Instance {
    SystemConfig config;
    std::vector<ChannelSample> samples;
    std::uint64_t seed = 0;  // provenance of the draw, not consumed afterwards

    void validate() const {
        config.validate();
        if (static_cast<int>(samples.size()) != config.num_samples)
            throw std::invalid_argument("Instance: sample count does not match config.T");
        for (const ChannelSample& s : samples)
            if (s.M != config.num_ues || s.B != config.num_rbs)
                throw std::invalid_argument("Instance: sample dimensions mismatch");
    }
};

// A (possibly constraint-violating) TDA + pairing decision. Violations are
// recorded by check_schedule, never masked here.
struct Schedule {
    int M = 0;
    int B = 0;
    std::vector<std::uint8_t> alpha;  // M, 1 = downlink UE
    std::vector<std::uint8_t> x;      // M*M*B, x[(i*M+j)*B+b], i downlink / j uplink

    Schedule() = default;
    Schedule(int m, int b)
        : M(m), B(b), alpha(static_cast<size_t>(m), 0),
          x(static_cast<size_t>(m) * m * b, 0) {}

    bool x_at(int i_dl, int j_ul, int b) const {
        return x[(static_cast<size_t>(i_dl) * M + j_ul) * B + b] != 0;
    }
    void set_x(int i_dl, int j_ul, int b, bool v) {
        x[(static_cast<size_t>(i_dl) * M + j_ul) * B + b] = v ? 1 : 0;
    }
};

struct PowerProfile {
    int T = 0;
    int M = 0;
    int B = 0;
    std::vector<double> dl;  // T*B      p_b^d per sample
    std::vector<double> ul;  // T*M*B    p_jb^u per sample

    PowerProfile() = default;
    PowerProfile(int t, int m, int b)
        : T(t), M(m), B(b), dl(static_cast<size_t>(t) * b, 0.0),
          ul(static_cast<size_t>(t) * m * b, 0.0) {}

    double dl_at(int t, int b) const { return dl[static_cast<size_t>(t) * B + b]; }
    double ul_at(int t, int j, int b) const {
        return ul[(static_cast<size_t>(t) * M + j) * B + b];
    }
    double& dl_at(int t, int b) { return dl[static_cast<size_t>(t) * B + b]; }
    double& ul_at(int t, int j, int b) {
        return ul[(static_cast<size_t>(t) * M + j) * B + b];
    }
};

struct FeasibilityReport {
    bool ofdma_ok = true;
    bool hd_ok = true;
    bool pairing_ok = true;
    std::vector<int> violating_ues;  // UEs that appear in no pair

    bool all_ok() const { return ofdma_ok && hd_ok && pairing_ok; }
};

struct PairRates {
    double dl = 0.0;
    double ul = 0.0;
};

// Achievable rates of the (i downlink, j uplink) pair on RB b at powers
// (p_d, p_u). The downlink UE sees co-channel interference from j, the BS
// receiver sees residual self-interference from its own transmission.
inline PairRates pair_rates(const ChannelSample& sample, int i, int j, int b, double p_d,
                            double p_u, const SystemConfig& config) {
    if (i == j) throw std::invalid_argument("pair_rates: self-pairing is not allowed");
    const double cci = p_u * sample.f_at(j, i, b) + config.noise_ue[i];
    const double si = p_d * config.si_gain[b] + config.noise_bs;
    PairRates r;
    r.dl = std::log2(1.0 + p_d * sample.h_at(i, b) / cci);
    r.ul = std::log2(1.0 + p_u * sample.g_at(j, b) / si);
    return r;
}

// Rate of UE i under the given schedule at sample t: the sum of its downlink
// rates plus the sum of its uplink rates over assigned RBs. A UE that appears
// in no pair simply has rate zero; that is a legal state, not an error.
inline double ue_rate(const Schedule& schedule, const ChannelSample& sample,
                      const PowerProfile& power, int t, int i, const SystemConfig& config) {
    double rate = 0.0;
    const int M = schedule.M;
    const int B = schedule.B;
    for (int j = 0; j < M; ++j) {
        if (j == i) continue;
        for (int b = 0; b < B; ++b) {
            if (schedule.x_at(i, j, b))
                rate += pair_rates(sample, i, j, b, power.dl_at(t, b), power.ul_at(t, j, b), config).dl;
            if (schedule.x_at(j, i, b))
                rate += pair_rates(sample, j, i, b, power.dl_at(t, b), power.ul_at(t, i, b), config).ul;
        }
    }
    return rate;
}

// True when UE i participates in at least one pair.
inline bool ue_is_paired(const Schedule& schedule, int i) {
    for (int j = 0; j < schedule.M; ++j) {
        if (j == i) continue;
        for (int b = 0; b < schedule.B; ++b)
            if (schedule.x_at(i, j, b) || schedule.x_at(j, i, b)) return true;
    }
    return false;
}

// Sample-average max-min fairness value (1/T) sum_t min_i R_i(xi_t)/gamma_i.
// Exactly zero when some UE is never paired: rounding pipelines legitimately
// produce such schedules and they score zero by definition.
inline double mmf_objective(const Schedule& schedule, const Instance& instance,
                            const PowerProfile& power) {
    const SystemConfig& cfg = instance.config;
    if (schedule.M != cfg.num_ues || schedule.B != cfg.num_rbs)
        throw std::invalid_argument("mmf_objective: schedule dimensions mismatch");
    if (power.T != cfg.num_samples || power.M != cfg.num_ues || power.B != cfg.num_rbs)
        throw std::invalid_argument("mmf_objective: power dimensions mismatch");
    for (int i = 0; i < cfg.num_ues; ++i)
        if (!ue_is_paired(schedule, i)) return 0.0;

    double acc = 0.0;
    for (int t = 0; t < cfg.num_samples; ++t) {
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 0; i < cfg.num_ues; ++i) {
            const double r = ue_rate(schedule, instance.samples[t], power, t, i, cfg) / cfg.weights[i];
            worst = std::min(worst, r);
        }
        acc += worst;
    }
    return acc / cfg.num_samples;
}

// Reports each constraint family independently; never throws on violations.
//  - OFDMA: exactly one pair per RB.
//  - HD: every selected pair (i,j,b) requires alpha_i = 1 and alpha_j = 0.
//  - pairing conservation: every UE appears in at least one pair.
inline FeasibilityReport check_schedule(const Schedule& schedule, const SystemConfig& config) {
    if (schedule.M != config.num_ues || schedule.B != config.num_rbs)
        throw std::invalid_argument("check_schedule: dimensions mismatch");
    FeasibilityReport rep;
    const int M = schedule.M;
    const int B = schedule.B;

    for (int b = 0; b < B; ++b) {
        int count = 0;
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j)
                if (schedule.x[(static_cast<size_t>(i) * M + j) * B + b]) ++count;
        if (count != 1) rep.ofdma_ok = false;
    }

    for (int i = 0; i < M && rep.hd_ok; ++i) {
        for (int j = 0; j < M && rep.hd_ok; ++j) {
            for (int b = 0; b < B; ++b) {
                if (!schedule.x[(static_cast<size_t>(i) * M + j) * B + b]) continue;
                // x_ijb <= alpha_i, x_ijb <= 1 - alpha_j; i == j violates both.
                if (schedule.alpha[i] != 1 || schedule.alpha[j] != 0 || i == j) {
                    rep.hd_ok = false;
                    break;
                }
            }
        }
    }

    for (int i = 0; i < M; ++i)
        if (!ue_is_paired(schedule, i)) rep.violating_ues.push_back(i);
    rep.pairing_ok = rep.violating_ues.empty();
    return rep;
}

}  // namespace fdmmf
