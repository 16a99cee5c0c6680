#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "fdmmf/core.hpp"
#include "fdmmf/lp.hpp"
#include "fdmmf/relax.hpp"

// Transmission-direction assignment and user-pairing algorithms: the plain
// relaxation-and-round method (SR), its two-stage variant (2S-SR), two-stage
// with iterative greedy rounding (2S-SRGR), the reweighted-l_q variant
// (2S-IRMGR) for the full-load case, and the sequential average-rate
// heuristic baseline.

namespace fdmmf {

struct IrmParams {
    double q = 0.5;
    double rho1 = 1.0;
    double rho2 = 1.0;
    double eps1 = 0.1;
    double eps2 = 0.1;
    double sigma1 = 1e-3;  // inner stop on ||X - X_prev||_1
    double sigma2 = 0.1;   // inner stop on ||alpha - alpha_prev||_1 and binariness test
    double kappa = 1.5;
    int max_inner = 50;
    int max_outer = 20;

    void validate() const {
        if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("IrmParams: q must be in (0,1)");
        if (!(sigma1 > 0.0 && sigma1 < 1.0) || !(sigma2 > 0.0 && sigma2 < 1.0))
            throw std::invalid_argument("IrmParams: sigma must be in (0,1)");
        if (!(kappa > 1.0)) throw std::invalid_argument("IrmParams: kappa must be > 1");
        if (!(eps1 > 0.0 && eps1 < 1.0) || !(eps2 > 0.0 && eps2 < 1.0))
            throw std::invalid_argument("IrmParams: eps must be in (0,1)");
        if (rho1 < 0.0 || rho2 < 0.0) throw std::invalid_argument("IrmParams: rho must be >= 0");
        if (max_inner < 1 || max_outer < 1) throw std::invalid_argument("IrmParams: bad caps");
    }
};

struct SchedulerDiagnostics {
    int lp_solves = 0;
    int irm_inner_iterations = 0;
    int irm_outer_iterations = 0;
    int greedy_steps = 0;
    bool iteration_cap_hit = false;
    bool pairing_cut_dropped = false;  // redundant-pairing cuts removed after infeasible pin
    double wall_ms = 0.0;
};

struct SchedulerResult {
    Schedule schedule;
    FeasibilityReport report;
    double mmf_value = 0.0;  // recomputed from the final schedule, never cached
    SchedulerDiagnostics diagnostics;
};

// Nearest-integer rounding of the fractional TDA vector with repairs:
// cardinality on both sides (at most B downlink and B uplink UEs) and a
// final guard so neither side ends up empty. 0.5 rounds to downlink.
inline std::vector<std::uint8_t> round_alpha(const std::vector<double>& alpha_frac, int B) {
    const int M = static_cast<int>(alpha_frac.size());
    std::vector<std::uint8_t> a(M, 0);
    for (int i = 0; i < M; ++i) a[i] = alpha_frac[i] >= 0.5 ? 1 : 0;

    auto count_ones = [&] { return static_cast<int>(std::count(a.begin(), a.end(), 1)); };

    int ones = count_ones();
    if (ones > B) {
        std::vector<int> idx;
        for (int i = 0; i < M; ++i)
            if (a[i]) idx.push_back(i);
        std::stable_sort(idx.begin(), idx.end(), [&](int l, int r) {
            return alpha_frac[l] < alpha_frac[r];  // flip the least committed first
        });
        for (int k = 0; k < ones - B; ++k) a[idx[k]] = 0;
    }
    ones = count_ones();
    if (M - ones > B) {
        std::vector<int> idx;
        for (int i = 0; i < M; ++i)
            if (!a[i]) idx.push_back(i);
        std::stable_sort(idx.begin(), idx.end(), [&](int l, int r) {
            return alpha_frac[l] > alpha_frac[r];
        });
        for (int k = 0; k < (M - ones) - B; ++k) a[idx[k]] = 1;
    }
    ones = count_ones();
    if (ones == 0 || ones == M) {
        int flip = 0;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < M; ++i) {
            const double d = std::fabs(alpha_frac[i] - 0.5);
            if (d < best) {
                best = d;
                flip = i;
            }
        }
        a[flip] = ones == 0 ? 1 : 0;
    }
    return a;
}

// Per-RB rounding: the largest off-diagonal entry of each X_b becomes the
// RB's pair; ties go to the lexicographically first (i, j).
inline std::vector<std::uint8_t> round_x_per_rb(const std::vector<double>& x_frac, int M, int B) {
    if (static_cast<int>(x_frac.size()) != M * M * B)
        throw std::invalid_argument("round_x_per_rb: size mismatch");
    std::vector<std::uint8_t> x(static_cast<size_t>(M) * M * B, 0);
    for (int b = 0; b < B; ++b) {
        int bi = -1, bj = -1;
        double best = -1.0;
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) {
                if (i == j) continue;
                const double v = x_frac[(static_cast<size_t>(i) * M + j) * B + b];
                if (v > best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        x[(static_cast<size_t>(bi) * M + bj) * B + b] = 1;
    }
    return x;
}

namespace scheddetail {

class StopWatch {
public:
    StopWatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline std::vector<double> slice_x(const LpSolution& sol, const VariableLayout& lay) {
    return std::vector<double>(sol.v.begin(), sol.v.begin() + lay.M * lay.M * lay.B);
}

inline std::vector<double> slice_alpha(const LpSolution& sol, const VariableLayout& lay) {
    return std::vector<double>(sol.v.begin() + lay.M * lay.M * lay.B,
                               sol.v.begin() + lay.M * lay.M * lay.B + lay.M);
}

inline std::vector<double> slice_tau(const LpSolution& sol, const VariableLayout& lay) {
    return std::vector<double>(sol.v.begin() + lay.M * lay.M * lay.B + lay.M, sol.v.end());
}

// Greedy pick: largest fractional x over free RBs and alpha-consistent
// pairs, lexicographic on (i, j, b) for ties; falls back to the first valid
// pair when the block is all zero.
inline std::tuple<int, int, int> argmax_free(const std::vector<double>& x, int M, int B,
                                             const std::vector<std::uint8_t>& alpha,
                                             const std::map<int, std::pair<int, int>>& pins) {
    int bi = -1, bj = -1, bb = -1;
    double best = -1.0;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            if (i == j || alpha[i] != 1 || alpha[j] != 0) continue;
            for (int b = 0; b < B; ++b) {
                if (pins.count(b)) continue;
                const double v = x[(static_cast<size_t>(i) * M + j) * B + b];
                if (v > best) {
                    best = v;
                    bi = i;
                    bj = j;
                    bb = b;
                }
            }
        }
    if (bb < 0) throw std::logic_error("argmax_free: no free RB or no valid pair");
    return {bi, bj, bb};
}

inline Schedule assemble(const std::vector<std::uint8_t>& alpha,
                         const std::vector<std::uint8_t>& x, int M, int B) {
    Schedule s(M, B);
    s.alpha = alpha;
    s.x = x;
    return s;
}

inline Schedule assemble_from_pins(const std::vector<std::uint8_t>& alpha,
                                   const std::map<int, std::pair<int, int>>& pins, int M, int B) {
    Schedule s(M, B);
    s.alpha = alpha;
    for (const auto& [b, pair] : pins) s.set_x(pair.first, pair.second, b, true);
    return s;
}

inline void finalize(SchedulerResult& res, const Instance& instance, const PowerProfile& power,
                     const StopWatch& watch) {
    res.report = check_schedule(res.schedule, instance.config);
    res.mmf_value = mmf_objective(res.schedule, instance, power);
    res.diagnostics.wall_ms = watch.ms();
}

}  // namespace scheddetail

// Simple relaxation: solve the stage-1 LP once and round X and alpha
// independently. Both constraint families can break, and that is reported,
// not repaired.
inline SchedulerResult solve_sr(const Instance& instance, const PowerProfile& power,
                                const StageOptions& options = {},
                                const RateTable* table = nullptr) {
    scheddetail::StopWatch watch;
    auto [lp, lay] = build_stage1_lp(instance, power, options, table);
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw LpError("solve_sr: stage-1 LP not optimal");

    SchedulerResult res;
    res.diagnostics.lp_solves = 1;
    const std::vector<std::uint8_t> alpha = round_alpha(scheddetail::slice_alpha(sol, lay), lay.B);
    const std::vector<std::uint8_t> x =
        round_x_per_rb(scheddetail::slice_x(sol, lay), lay.M, lay.B);
    res.schedule = scheddetail::assemble(alpha, x, lay.M, lay.B);
    scheddetail::finalize(res, instance, power, watch);
    return res;
}

// Two-stage SR: round only alpha from stage 1, re-solve with alpha pinned,
// then round X per RB. The HD couplings hold by construction.
inline SchedulerResult solve_2s_sr(const Instance& instance, const PowerProfile& power,
                                   const StageOptions& options = {},
                                   const RateTable* table = nullptr) {
    scheddetail::StopWatch watch;
    RateTable local;
    if (!table) {
        local = make_rate_table(instance, power);
        table = &local;
    }
    auto [lp1, lay] = build_stage1_lp(instance, power, options, table);
    const LpSolution sol1 = solve_lp(lp1);
    if (sol1.status != LpStatus::Optimal) throw LpError("solve_2s_sr: stage-1 LP not optimal");
    const std::vector<std::uint8_t> alpha = round_alpha(scheddetail::slice_alpha(sol1, lay), lay.B);

    SchedulerResult res;
    res.diagnostics.lp_solves = 1;
    StageOptions opt2 = options;
    auto [lp2, lay2] = build_stage2_lp(instance, power, alpha, {}, opt2, table);
    LpSolution sol2 = solve_lp(lp2);
    ++res.diagnostics.lp_solves;
    if (sol2.status != LpStatus::Optimal) {
        // Cannot cover every UE with this alpha; drop the pairing cuts and
        // keep going so the violation is recorded honestly downstream.
        opt2.include_pairing = false;
        auto [lp2b, lay2b] = build_stage2_lp(instance, power, alpha, {}, opt2, table);
        sol2 = solve_lp(lp2b);
        ++res.diagnostics.lp_solves;
        res.diagnostics.pairing_cut_dropped = true;
        if (sol2.status != LpStatus::Optimal) throw LpError("solve_2s_sr: stage-2 LP not optimal");
    }
    const std::vector<std::uint8_t> x =
        round_x_per_rb(scheddetail::slice_x(sol2, lay), lay.M, lay.B);
    res.schedule = scheddetail::assemble(alpha, x, lay.M, lay.B);
    scheddetail::finalize(res, instance, power, watch);
    return res;
}

// Two-stage SR with iterative greedy rounding: pin the single largest
// fractional pair, re-solve over the remaining RBs, repeat until every RB is
// pinned. An infeasible re-solve drops the pairing cuts for the remainder.
inline SchedulerResult solve_2s_srgr(const Instance& instance, const PowerProfile& power,
                                     const StageOptions& options = {},
                                     const RateTable* table = nullptr) {
    scheddetail::StopWatch watch;
    RateTable local;
    if (!table) {
        local = make_rate_table(instance, power);
        table = &local;
    }
    auto [lp1, lay] = build_stage1_lp(instance, power, options, table);
    const LpSolution sol1 = solve_lp(lp1);
    if (sol1.status != LpStatus::Optimal) throw LpError("solve_2s_srgr: stage-1 LP not optimal");
    const std::vector<std::uint8_t> alpha = round_alpha(scheddetail::slice_alpha(sol1, lay), lay.B);

    SchedulerResult res;
    res.diagnostics.lp_solves = 1;
    StageOptions opt2 = options;
    std::map<int, std::pair<int, int>> pins;
    while (static_cast<int>(pins.size()) < lay.B) {
        auto [lp2, lay2] = build_stage2_lp(instance, power, alpha, pins, opt2, table);
        LpSolution sol2 = solve_lp(lp2);
        ++res.diagnostics.lp_solves;
        if (sol2.status != LpStatus::Optimal) {
            if (!opt2.include_pairing)
                throw LpError("solve_2s_srgr: stage-2 LP infeasible without pairing cuts");
            opt2.include_pairing = false;
            res.diagnostics.pairing_cut_dropped = true;
            continue;
        }
        const std::vector<double> x = scheddetail::slice_x(sol2, lay);
        const auto [pi, pj, pb] = scheddetail::argmax_free(x, lay.M, lay.B, alpha, pins);
        pins[pb] = {pi, pj};
        ++res.diagnostics.greedy_steps;
    }
    res.schedule = scheddetail::assemble_from_pins(alpha, pins, lay.M, lay.B);
    scheddetail::finalize(res, instance, power, watch);
    return res;
}

enum class IrmStage { One, Two };

struct IrmResult {
    std::vector<double> x;      // fractional M*M*B
    std::vector<double> alpha;  // fractional M
    std::vector<double> tau;    // T
    int lp_solves = 0;
    int inner_iterations = 0;
    int outer_iterations = 0;
    bool cap_hit = false;
    bool init_infeasible = false;
    // True regularized objective evaluated at the entry point and after each
    // inner solve, one trace per outer pass (rho/eps are constant inside).
    std::vector<std::vector<double>> objective_traces;
};

namespace scheddetail {

inline double regularized_objective(const std::vector<double>& x, const std::vector<double>& alpha,
                                    const std::vector<double>& tau, double rho1, double rho2,
                                    double eps1, double eps2, double q, bool alpha_terms) {
    double obj = 0.0;
    for (double t : tau) obj += t;
    obj /= static_cast<double>(tau.size());
    double xq = 0.0;
    for (double v : x) xq += std::pow(std::max(v, 0.0) + eps1, q);
    obj -= rho1 * xq;
    if (alpha_terms) {
        double aq = 0.0;
        for (double a : alpha)
            aq += std::pow(std::max(a, 0.0) + eps2, q) + std::pow(std::max(1.0 - a, 0.0) + eps2, q);
        obj -= rho2 * aq;
    }
    return obj;
}

inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) s += std::fabs(a[k] - b[k]);
    return s;
}

}  // namespace scheddetail

// Iterative reweighted minimization for the l_q-regularized relaxation.
// Stage one keeps alpha free and regularizes it toward {0,1}; stage two runs
// with alpha pinned (and optionally RBs pinned) and regularizes only X. The
// inner loop repeats linearize-solve-reweight until the iterate stalls; the
// outer loop sharpens rho/eps until the relevant block is near-binary.
inline IrmResult irm_solve(const Instance& instance, const PowerProfile& power,
                           const IrmParams& params, IrmStage stage,
                           const std::vector<std::uint8_t>& alpha_fixed = {},
                           const std::map<int, std::pair<int, int>>& fixed_rbs = {},
                           const StageOptions& options = {}, const RateTable* table = nullptr) {
    params.validate();
    if (stage == IrmStage::Two && alpha_fixed.empty())
        throw std::invalid_argument("irm_solve: stage two needs a fixed alpha");

    RateTable local;
    if (!table) {
        local = make_rate_table(instance, power);
        table = &local;
    }

    LpProblem base;
    VariableLayout lay;
    if (stage == IrmStage::One) {
        std::tie(base, lay) = build_stage1_lp(instance, power, options, table);
    } else {
        std::tie(base, lay) = build_stage2_lp(instance, power, alpha_fixed, fixed_rbs, options, table);
    }

    IrmResult res;
    const LpSolution init = solve_lp(base);
    ++res.lp_solves;
    if (init.status != LpStatus::Optimal) {
        res.init_infeasible = true;
        return res;
    }
    std::vector<double> x_prev = scheddetail::slice_x(init, lay);
    std::vector<double> a_prev = scheddetail::slice_alpha(init, lay);
    std::vector<double> tau_prev = scheddetail::slice_tau(init, lay);

    const bool alpha_terms = stage == IrmStage::One;
    double rho1 = params.rho1, rho2 = params.rho2;
    double eps1 = params.eps1, eps2 = params.eps2;
    IrmWeights w = IrmWeights::from_point(lay.M, lay.B, x_prev, a_prev, rho1, rho2, eps1, eps2,
                                          params.q);

    auto is_free_x = [&](int i, int j, int b) {
        if (i == j) return false;
        if (stage == IrmStage::One) return true;
        return alpha_fixed[i] == 1 && alpha_fixed[j] == 0 && fixed_rbs.count(b) == 0;
    };

    bool done = false;
    for (int outer = 0; outer < params.max_outer && !done; ++outer) {
        ++res.outer_iterations;
        std::vector<double> trace;
        trace.push_back(scheddetail::regularized_objective(x_prev, a_prev, tau_prev, rho1, rho2,
                                                           eps1, eps2, params.q, alpha_terms));
        bool inner_converged = false;
        for (int r = 0; r < params.max_inner; ++r) {
            const LpProblem reg = apply_lq_linearization(base, lay, w, alpha_terms);
            const LpSolution sol = solve_lp(reg);
            ++res.lp_solves;
            ++res.inner_iterations;
            if (sol.status != LpStatus::Optimal)
                throw LpError("irm_solve: regularized LP not optimal");
            std::vector<double> x_new = scheddetail::slice_x(sol, lay);
            std::vector<double> a_new = scheddetail::slice_alpha(sol, lay);
            std::vector<double> tau_new = scheddetail::slice_tau(sol, lay);
            w = IrmWeights::from_point(lay.M, lay.B, x_new, a_new, rho1, rho2, eps1, eps2,
                                       params.q);
            const double dx = scheddetail::l1_distance(x_new, x_prev);
            const double da = scheddetail::l1_distance(a_new, a_prev);
            x_prev = std::move(x_new);
            a_prev = std::move(a_new);
            tau_prev = std::move(tau_new);
            trace.push_back(scheddetail::regularized_objective(x_prev, a_prev, tau_prev, rho1,
                                                               rho2, eps1, eps2, params.q,
                                                               alpha_terms));
            if (dx <= params.sigma1 && (stage == IrmStage::Two || da <= params.sigma2)) {
                inner_converged = true;
                break;
            }
        }
        if (!inner_converged) res.cap_hit = true;
        res.objective_traces.push_back(std::move(trace));

        rho1 *= params.kappa;
        rho2 *= params.kappa;
        eps1 /= params.kappa;
        eps2 /= params.kappa;

        if (stage == IrmStage::One) {
            double worst = 0.0;
            for (double a : a_prev) worst = std::max(worst, std::min(a, 1.0 - a));
            done = worst <= params.sigma2;
        } else {
            double worst = 0.0;
            for (int i = 0; i < lay.M; ++i)
                for (int j = 0; j < lay.M; ++j)
                    for (int b = 0; b < lay.B; ++b)
                        if (is_free_x(i, j, b)) {
                            const double v = x_prev[(static_cast<size_t>(i) * lay.M + j) * lay.B + b];
                            worst = std::max(worst, std::min(v, 1.0 - v));
                        }
            done = worst <= params.sigma2;
        }
    }
    if (!done) res.cap_hit = true;

    res.x = std::move(x_prev);
    res.alpha = std::move(a_prev);
    res.tau = std::move(tau_prev);
    return res;
}

// Two-stage IRM with greedy rounding: stage one rounds alpha from the
// regularized relaxation, stage two pins one RB per step, each step solving
// the stage-two l_q problem with the current pins.
inline SchedulerResult solve_2s_irmgr(const Instance& instance, const PowerProfile& power,
                                      const IrmParams& params = {},
                                      const StageOptions& options = {},
                                      const RateTable* table = nullptr) {
    scheddetail::StopWatch watch;
    RateTable local;
    if (!table) {
        local = make_rate_table(instance, power);
        table = &local;
    }
    SchedulerResult res;

    const IrmResult stage1 = irm_solve(instance, power, params, IrmStage::One, {}, {}, options, table);
    if (stage1.init_infeasible) throw LpError("solve_2s_irmgr: stage-1 relaxation infeasible");
    res.diagnostics.lp_solves += stage1.lp_solves;
    res.diagnostics.irm_inner_iterations += stage1.inner_iterations;
    res.diagnostics.irm_outer_iterations += stage1.outer_iterations;
    res.diagnostics.iteration_cap_hit = res.diagnostics.iteration_cap_hit || stage1.cap_hit;
    const std::vector<std::uint8_t> alpha = round_alpha(stage1.alpha, instance.config.num_rbs);

    StageOptions opt2 = options;
    std::map<int, std::pair<int, int>> pins;
    const int M = instance.config.num_ues;
    const int B = instance.config.num_rbs;
    while (static_cast<int>(pins.size()) < B) {
        IrmResult r2 = irm_solve(instance, power, params, IrmStage::Two, alpha, pins, opt2, table);
        res.diagnostics.lp_solves += r2.lp_solves;
        res.diagnostics.irm_inner_iterations += r2.inner_iterations;
        res.diagnostics.irm_outer_iterations += r2.outer_iterations;
        if (r2.init_infeasible) {
            if (!opt2.include_pairing)
                throw LpError("solve_2s_irmgr: stage-2 LP infeasible without pairing cuts");
            opt2.include_pairing = false;
            res.diagnostics.pairing_cut_dropped = true;
            continue;
        }
        res.diagnostics.iteration_cap_hit = res.diagnostics.iteration_cap_hit || r2.cap_hit;
        const auto [pi, pj, pb] = scheddetail::argmax_free(r2.x, M, B, alpha, pins);
        pins[pb] = {pi, pj};
        ++res.diagnostics.greedy_steps;
    }
    res.schedule = scheddetail::assemble_from_pins(alpha, pins, M, B);
    scheddetail::finalize(res, instance, power, watch);
    return res;
}

// Average-rate heuristic: direction from per-UE mean downlink/uplink rates
// (capped at B per side, flipping the weakest), then RB-by-RB greedy pairing
// that prefers pairs covering a still-unserved UE and maximizes the running
// sample-average MMF over the UEs covered so far.
inline SchedulerResult heuristic_schedule(const Instance& instance, const PowerProfile& power,
                                          const RateTable* table = nullptr) {
    scheddetail::StopWatch watch;
    RateTable local;
    if (!table) {
        local = make_rate_table(instance, power);
        table = &local;
    }
    const RateTable& tab = *table;
    const SystemConfig& cfg = instance.config;
    const int M = cfg.num_ues, B = cfg.num_rbs, T = cfg.num_samples;

    std::vector<double> rbar_d(M, 0.0), rbar_u(M, 0.0);
    const double denom = static_cast<double>(M - 1) * B * T;
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            if (j == i) continue;
            for (int b = 0; b < B; ++b)
                for (int t = 0; t < T; ++t) {
                    rbar_d[i] += tab.rd_at(i, j, b, t);
                    rbar_u[i] += tab.ru_at(j, i, b, t);
                }
        }
        rbar_d[i] /= denom;
        rbar_u[i] /= denom;
    }

    std::vector<std::uint8_t> alpha(M, 0);
    for (int i = 0; i < M; ++i) alpha[i] = rbar_d[i] >= rbar_u[i] ? 1 : 0;

    auto cap_side = [&](std::uint8_t side_value, const std::vector<double>& score) {
        std::vector<int> members;
        for (int i = 0; i < M; ++i)
            if (alpha[i] == side_value) members.push_back(i);
        if (static_cast<int>(members.size()) <= B) return;
        std::stable_sort(members.begin(), members.end(),
                         [&](int l, int r) { return score[l] > score[r]; });
        for (size_t k = B; k < members.size(); ++k) alpha[members[k]] = side_value ? 0 : 1;
    };
    cap_side(1, rbar_d);
    cap_side(0, rbar_u);

    {
        int ones = static_cast<int>(std::count(alpha.begin(), alpha.end(), 1));
        if (ones == 0 || ones == M) {
            int flip = 0;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < M; ++i) {
                const double margin = std::fabs(rbar_d[i] - rbar_u[i]);
                if (margin < best) {
                    best = margin;
                    flip = i;
                }
            }
            alpha[flip] = ones == 0 ? 1 : 0;
        }
    }

    std::vector<int> dls, uls;
    for (int i = 0; i < M; ++i) (alpha[i] ? dls : uls).push_back(i);

    SchedulerResult res;
    Schedule sch(M, B);
    sch.alpha = alpha;
    std::vector<double> acc(static_cast<size_t>(M) * T, 0.0);  // accumulated per-sample rates
    std::vector<char> covered(M, 0);
    int covered_count = 0;

    for (int b = 0; b < B; ++b) {
        int best_i = -1, best_j = -1;
        double best_score = -1.0;
        const bool require_fresh = covered_count < M;
        for (int i : dls) {
            for (int j : uls) {
                if (require_fresh && covered[i] && covered[j]) continue;
                // score: mean over samples of the min weighted rate among the
                // UEs covered once this pair is added
                double score = 0.0;
                for (int t = 0; t < T; ++t) {
                    double worst = std::numeric_limits<double>::infinity();
                    for (int u = 0; u < M; ++u) {
                        if (!covered[u] && u != i && u != j) continue;
                        double r = acc[static_cast<size_t>(u) * T + t];
                        if (u == i) r += tab.rd_at(i, j, b, t);
                        if (u == j) r += tab.ru_at(i, j, b, t);
                        worst = std::min(worst, r / cfg.weights[u]);
                    }
                    score += worst;
                }
                score /= T;
                if (score > best_score) {
                    best_score = score;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_i < 0) throw std::logic_error("heuristic_schedule: no candidate pair");
        sch.set_x(best_i, best_j, b, true);
        for (int t = 0; t < T; ++t) {
            acc[static_cast<size_t>(best_i) * T + t] += tab.rd_at(best_i, best_j, b, t);
            acc[static_cast<size_t>(best_j) * T + t] += tab.ru_at(best_i, best_j, b, t);
        }
        for (int u : {best_i, best_j})
            if (!covered[u]) {
                covered[u] = 1;
                ++covered_count;
            }
    }

    res.schedule = std::move(sch);
    scheddetail::finalize(res, instance, power, watch);
    return res;
}

}  // namespace fdmmf
