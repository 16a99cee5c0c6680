#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fdmmf/core.hpp"
#include "fdmmf/lp.hpp"

// Builders that translate a scheduling instance with fixed powers into the
// relaxed epigraph linear programs, plus the reweighted-l_q objective used to
// tighten them. Variable order is fixed: all x_ijb blocks, then alpha, then
// the per-sample epigraph variables tau_t.

namespace fdmmf {

struct VariableLayout {
    int M = 0;
    int B = 0;
    int T = 0;

    int x_col(int i_dl, int j_ul, int b) const { return (i_dl * M + j_ul) * B + b; }
    int alpha_col(int i) const { return M * M * B + i; }
    int tau_col(int t) const { return M * M * B + M + t; }
    int num_cols() const { return M * M * B + M + T; }
};

// Pair rates precomputed for every (i downlink, j uplink, RB, sample) at the
// given power profile. rd is the downlink rate of i, ru the uplink rate of j.
struct RateTable {
    int M = 0;
    int B = 0;
    int T = 0;
    std::vector<double> rd;
    std::vector<double> ru;

    double rd_at(int i, int j, int b, int t) const {
        return rd[(static_cast<size_t>(i * M + j) * B + b) * T + t];
    }
    double ru_at(int i, int j, int b, int t) const {
        return ru[(static_cast<size_t>(i * M + j) * B + b) * T + t];
    }
};

inline RateTable make_rate_table(const Instance& instance, const PowerProfile& power) {
    instance.validate();
    const SystemConfig& cfg = instance.config;
    const int M = cfg.num_ues, B = cfg.num_rbs, T = cfg.num_samples;
    if (power.T != T || power.M != M || power.B != B)
        throw std::invalid_argument("make_rate_table: power dimensions mismatch");
    RateTable tab;
    tab.M = M;
    tab.B = B;
    tab.T = T;
    tab.rd.assign(static_cast<size_t>(M) * M * B * T, 0.0);
    tab.ru.assign(static_cast<size_t>(M) * M * B * T, 0.0);
    for (int t = 0; t < T; ++t) {
        const ChannelSample& s = instance.samples[t];
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) {
                if (i == j) continue;
                for (int b = 0; b < B; ++b) {
                    const PairRates r =
                        pair_rates(s, i, j, b, power.dl_at(t, b), power.ul_at(t, j, b), cfg);
                    const size_t idx = (static_cast<size_t>(i * M + j) * B + b) * T + t;
                    tab.rd[idx] = r.dl;
                    tab.ru[idx] = r.ul;
                }
            }
    }
    return tab;
}

struct StageOptions {
    bool aggregated_hd = false;   // emit sum_j x_ijb <= alpha_i instead of per-triple rows
    bool include_pairing = true;  // pairing-conservation cuts; greedy fallback drops them
};

namespace relaxdetail {

constexpr double kRateClamp = 1e-12;  // tiny rate constants are zeroed

// Valid per-sample upper bound on tau_t: every UE's rate is at most the sum
// over RBs of its best single-RB rate, whatever the pairing, so tau_t is at
// most the minimum of those sums (weighted).
inline std::vector<double> tau_upper_bounds(const RateTable& tab, const SystemConfig& cfg) {
    std::vector<double> ub(tab.T, 0.0);
    for (int t = 0; t < tab.T; ++t) {
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 0; i < tab.M; ++i) {
            double sum = 0.0;
            for (int b = 0; b < tab.B; ++b) {
                double best = 0.0;
                for (int j = 0; j < tab.M; ++j) {
                    if (j == i) continue;
                    best = std::max(best, tab.rd_at(i, j, b, t));
                    best = std::max(best, tab.ru_at(j, i, b, t));
                }
                sum += best;
            }
            worst = std::min(worst, sum / cfg.weights[i]);
        }
        ub[t] = worst;
    }
    return ub;
}

inline double clamp_rate(double r) { return r < kRateClamp ? 0.0 : r; }

}  // namespace relaxdetail

// Relaxed joint TDA+pairing LP: maximize the sample-average epigraph value
// subject to per-UE rate epigraph rows, one-pair-per-RB equalities, the HD
// couplings, box-relaxed binaries, pairing conservation and the alpha
// cardinality cuts.
inline std::pair<LpProblem, VariableLayout> build_stage1_lp(const Instance& instance,
                                                            const PowerProfile& power,
                                                            const StageOptions& options = {},
                                                            const RateTable* table = nullptr) {
    const SystemConfig& cfg = instance.config;
    const int M = cfg.num_ues, B = cfg.num_rbs, T = cfg.num_samples;
    RateTable local;
    if (!table) {
        local = make_rate_table(instance, power);
        table = &local;
    }
    const RateTable& tab = *table;
    VariableLayout lay{M, B, T};

    LpProblem p;
    p.num_vars = lay.num_cols();
    p.c.assign(p.num_vars, 0.0);
    p.lower.assign(p.num_vars, 0.0);
    p.upper.assign(p.num_vars, 1.0);
    for (int i = 0; i < M; ++i)
        for (int b = 0; b < B; ++b) p.upper[lay.x_col(i, i, b)] = 0.0;  // no self pairing
    const std::vector<double> tau_ub = relaxdetail::tau_upper_bounds(tab, cfg);
    for (int t = 0; t < T; ++t) {
        p.c[lay.tau_col(t)] = 1.0 / T;
        p.upper[lay.tau_col(t)] = tau_ub[t];
    }

    for (int b = 0; b < B; ++b) {
        LpRow row;
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j)
                if (i != j) row.terms.push_back({lay.x_col(i, j, b), 1.0});
        row.rhs = 1.0;
        p.eq_rows.push_back(std::move(row));
    }

    for (int t = 0; t < T; ++t) {
        for (int i = 0; i < M; ++i) {
            LpRow row;
            for (int j = 0; j < M; ++j) {
                if (j == i) continue;
                for (int b = 0; b < B; ++b) {
                    const double rd = relaxdetail::clamp_rate(tab.rd_at(i, j, b, t));
                    const double ru = relaxdetail::clamp_rate(tab.ru_at(j, i, b, t));
                    if (rd != 0.0) row.terms.push_back({lay.x_col(i, j, b), -rd});
                    if (ru != 0.0) row.terms.push_back({lay.x_col(j, i, b), -ru});
                }
            }
            row.terms.push_back({lay.tau_col(t), cfg.weights[i]});
            row.rhs = 0.0;
            p.ub_rows.push_back(std::move(row));
        }
    }

    if (options.include_pairing) {
        for (int i = 0; i < M; ++i) {
            LpRow row;
            for (int j = 0; j < M; ++j) {
                if (j == i) continue;
                for (int b = 0; b < B; ++b) {
                    row.terms.push_back({lay.x_col(i, j, b), -1.0});
                    row.terms.push_back({lay.x_col(j, i, b), -1.0});
                }
            }
            row.rhs = -1.0;
            p.ub_rows.push_back(std::move(row));
        }
    }

    {
        LpRow up;   // sum alpha <= B
        LpRow down; // sum (1-alpha) <= B
        for (int i = 0; i < M; ++i) {
            up.terms.push_back({lay.alpha_col(i), 1.0});
            down.terms.push_back({lay.alpha_col(i), -1.0});
        }
        up.rhs = static_cast<double>(B);
        down.rhs = static_cast<double>(B - M);
        p.ub_rows.push_back(std::move(up));
        p.ub_rows.push_back(std::move(down));
    }

    if (options.aggregated_hd) {
        for (int i = 0; i < M; ++i)
            for (int b = 0; b < B; ++b) {
                LpRow dl, ul;
                for (int j = 0; j < M; ++j) {
                    if (j == i) continue;
                    dl.terms.push_back({lay.x_col(i, j, b), 1.0});
                    ul.terms.push_back({lay.x_col(j, i, b), 1.0});
                }
                dl.terms.push_back({lay.alpha_col(i), -1.0});
                dl.rhs = 0.0;
                ul.terms.push_back({lay.alpha_col(i), 1.0});
                ul.rhs = 1.0;
                p.ub_rows.push_back(std::move(dl));
                p.ub_rows.push_back(std::move(ul));
            }
    } else {
        // Per-triple HD couplings exactly as formulated: x_ijb <= alpha_i and
        // x_ijb <= 1 - alpha_j.
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) {
                if (i == j) continue;
                for (int b = 0; b < B; ++b) {
                    p.ub_rows.push_back({{{lay.x_col(i, j, b), 1.0}, {lay.alpha_col(i), -1.0}}, 0.0});
                    p.ub_rows.push_back({{{lay.x_col(i, j, b), 1.0}, {lay.alpha_col(j), 1.0}}, 1.0});
                }
            }
    }

    return {std::move(p), lay};
}

// Stage-two LP: same feasible set with the TDA vector pinned to a binary
// alpha and, optionally, whole RBs pinned to already-rounded pairs. With
// alpha binary the HD couplings and cardinality cuts reduce to variable
// bounds, which is how they are enforced here.
inline std::pair<LpProblem, VariableLayout> build_stage2_lp(
    const Instance& instance, const PowerProfile& power,
    const std::vector<std::uint8_t>& alpha_fixed,
    const std::map<int, std::pair<int, int>>& fixed_rbs, const StageOptions& options = {},
    const RateTable* table = nullptr) {
    const SystemConfig& cfg = instance.config;
    const int M = cfg.num_ues, B = cfg.num_rbs, T = cfg.num_samples;
    if (static_cast<int>(alpha_fixed.size()) != M)
        throw std::invalid_argument("build_stage2_lp: alpha size mismatch");
    int ones = 0;
    for (std::uint8_t a : alpha_fixed) {
        if (a != 0 && a != 1) throw std::invalid_argument("build_stage2_lp: alpha must be binary");
        ones += a;
    }
    if (ones > B || (M - ones) > B)
        throw std::invalid_argument("build_stage2_lp: alpha violates the RB cardinality cuts");
    for (const auto& [b, pair] : fixed_rbs) {
        if (b < 0 || b >= B) throw std::invalid_argument("build_stage2_lp: pinned RB out of range");
        const auto& [pi, pj] = pair;
        if (pi < 0 || pi >= M || pj < 0 || pj >= M || pi == pj || alpha_fixed[pi] != 1 ||
            alpha_fixed[pj] != 0)
            throw std::invalid_argument("build_stage2_lp: pinned pair inconsistent with alpha");
    }

    RateTable local;
    if (!table) {
        local = make_rate_table(instance, power);
        table = &local;
    }
    const RateTable& tab = *table;
    VariableLayout lay{M, B, T};

    LpProblem p;
    p.num_vars = lay.num_cols();
    p.c.assign(p.num_vars, 0.0);
    p.lower.assign(p.num_vars, 0.0);
    p.upper.assign(p.num_vars, 0.0);  // x defaults to pinned-zero, opened below

    auto valid_pair = [&](int i, int j) {
        return i != j && alpha_fixed[i] == 1 && alpha_fixed[j] == 0;
    };

    for (int i = 0; i < M; ++i) {
        const int c = lay.alpha_col(i);
        p.lower[c] = p.upper[c] = static_cast<double>(alpha_fixed[i]);
    }
    for (int b = 0; b < B; ++b) {
        const auto pin = fixed_rbs.find(b);
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) {
                if (!valid_pair(i, j)) continue;
                const int c = lay.x_col(i, j, b);
                if (pin == fixed_rbs.end()) {
                    p.upper[c] = 1.0;
                } else if (pin->second == std::make_pair(i, j)) {
                    p.lower[c] = p.upper[c] = 1.0;
                }
            }
    }
    const std::vector<double> tau_ub = relaxdetail::tau_upper_bounds(tab, cfg);
    for (int t = 0; t < T; ++t) {
        p.c[lay.tau_col(t)] = 1.0 / T;
        p.upper[lay.tau_col(t)] = tau_ub[t];
    }

    for (int b = 0; b < B; ++b) {
        LpRow row;
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j)
                if (valid_pair(i, j)) row.terms.push_back({lay.x_col(i, j, b), 1.0});
        row.rhs = 1.0;
        p.eq_rows.push_back(std::move(row));
    }

    for (int t = 0; t < T; ++t) {
        for (int i = 0; i < M; ++i) {
            LpRow row;
            for (int j = 0; j < M; ++j) {
                if (j == i) continue;
                for (int b = 0; b < B; ++b) {
                    if (valid_pair(i, j)) {
                        const double rd = relaxdetail::clamp_rate(tab.rd_at(i, j, b, t));
                        if (rd != 0.0) row.terms.push_back({lay.x_col(i, j, b), -rd});
                    }
                    if (valid_pair(j, i)) {
                        const double ru = relaxdetail::clamp_rate(tab.ru_at(j, i, b, t));
                        if (ru != 0.0) row.terms.push_back({lay.x_col(j, i, b), -ru});
                    }
                }
            }
            row.terms.push_back({lay.tau_col(t), cfg.weights[i]});
            row.rhs = 0.0;
            p.ub_rows.push_back(std::move(row));
        }
    }

    if (options.include_pairing) {
        for (int i = 0; i < M; ++i) {
            LpRow row;
            for (int j = 0; j < M; ++j) {
                if (j == i) continue;
                for (int b = 0; b < B; ++b) {
                    if (valid_pair(i, j)) row.terms.push_back({lay.x_col(i, j, b), -1.0});
                    if (valid_pair(j, i)) row.terms.push_back({lay.x_col(j, i, b), -1.0});
                }
            }
            row.rhs = -1.0;
            p.ub_rows.push_back(std::move(row));
        }
    }

    return {std::move(p), lay};
}

// Reweighting state for the iterative l_q scheme: elementwise Hadamard
// powers of the previous iterate shifted by epsilon.
struct IrmWeights {
    int M = 0;
    int B = 0;
    std::vector<double> W;   // M*M*B
    std::vector<double> wa;  // M
    std::vector<double> wb;  // M
    double rho1 = 1.0;
    double rho2 = 1.0;
    double q = 0.5;

    static IrmWeights from_point(int M, int B, const std::vector<double>& x_prev,
                                 const std::vector<double>& alpha_prev, double rho1, double rho2,
                                 double eps1, double eps2, double q) {
        if (!(eps1 > 0.0) || !(eps2 > 0.0) || !(q > 0.0) || !(q < 1.0) || rho1 < 0.0 || rho2 < 0.0)
            throw std::invalid_argument("IrmWeights: need eps > 0, q in (0,1), rho >= 0");
        if (static_cast<int>(x_prev.size()) != M * M * B ||
            static_cast<int>(alpha_prev.size()) != M)
            throw std::invalid_argument("IrmWeights: point size mismatch");
        IrmWeights w;
        w.M = M;
        w.B = B;
        w.rho1 = rho1;
        w.rho2 = rho2;
        w.q = q;
        w.W.resize(x_prev.size());
        for (size_t k = 0; k < x_prev.size(); ++k)
            w.W[k] = std::pow(std::max(x_prev[k], 0.0) + eps1, q - 1.0);
        w.wa.resize(M);
        w.wb.resize(M);
        for (int i = 0; i < M; ++i) {
            w.wa[i] = std::pow(std::max(alpha_prev[i], 0.0) + eps2, q - 1.0);
            w.wb[i] = std::pow(std::max(1.0 - alpha_prev[i], 0.0) + eps2, q - 1.0);
        }
        return w;
    }
};

// Swaps the base objective for its reweighted-l_q linearization. Constant
// offsets (the rho2*q*sum(wb) term from the 1-alpha side) are dropped; they
// do not move the argmax, and the true regularized objective is evaluated
// separately where it matters.
inline LpProblem apply_lq_linearization(const LpProblem& base, const VariableLayout& layout,
                                        const IrmWeights& weights, bool include_alpha_terms) {
    if (static_cast<int>(weights.W.size()) != layout.M * layout.M * layout.B)
        throw std::invalid_argument("apply_lq_linearization: weight size mismatch");
    LpProblem p = base;
    for (int i = 0; i < layout.M; ++i)
        for (int j = 0; j < layout.M; ++j) {
            if (i == j) continue;
            for (int b = 0; b < layout.B; ++b) {
                const int col = layout.x_col(i, j, b);
                p.c[col] -= weights.rho1 * weights.q * weights.W[col];
            }
        }
    if (include_alpha_terms) {
        for (int i = 0; i < layout.M; ++i)
            p.c[layout.alpha_col(i)] -=
                weights.rho2 * weights.q * (weights.wa[i] - weights.wb[i]);
    }
    return p;
}

}  // namespace fdmmf
