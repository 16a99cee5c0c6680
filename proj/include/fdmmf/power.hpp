#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fdmmf/core.hpp"

// Power allocation for a fixed feasible schedule. The per-sample max-min
// problem is non-concave; it is ascended by successive concave approximation:
// each rate log2(s(p)) - log2(z(p)) (both arguments affine) is lower-bounded
// by linearizing the subtracted term at the current point, the resulting
// concave max-min subproblem is solved by bisection on the target rate with
// a projected-supergradient feasibility check, and the loop repeats from the
// improved point. Initialized at uniform power, so the achieved value never
// drops below the uniform baseline.

namespace fdmmf {

inline PowerProfile uniform_power(const SystemConfig& config) {
    config.validate();
    PowerProfile p(config.num_samples, config.num_ues, config.num_rbs);
    const double pd = config.p_bs_max / config.num_rbs;
    const double pu = config.p_ue_max / config.num_rbs;
    for (int t = 0; t < config.num_samples; ++t) {
        for (int b = 0; b < config.num_rbs; ++b) p.dl_at(t, b) = pd;
        for (int j = 0; j < config.num_ues; ++j)
            for (int b = 0; b < config.num_rbs; ++b) p.ul_at(t, j, b) = pu;
    }
    return p;
}

struct ScaParams {
    double improvement_tol = 1e-4;  // stop when the MMF gain per round drops below this
    int max_iterations = 30;
    double bisection_tol = 1e-5;
    int ascent_iterations = 500;

    void validate() const {
        if (!(improvement_tol > 0.0) || !(bisection_tol > 0.0) || max_iterations < 1 ||
            ascent_iterations < 1)
            throw std::invalid_argument("ScaParams: all knobs must be positive");
    }
};

struct ScaResult {
    std::vector<double> p_dl;  // B
    std::vector<double> p_ul;  // M*B (nonzero only where the schedule uses them)
    double mmf = 0.0;          // true achieved min weighted rate at sample t
    int iterations = 0;
    bool converged = false;
    std::vector<double> mmf_trace;  // true MMF after each SCA round, starting at uniform
};

namespace scadetail {

// Projection of v onto {w >= 0, sum w <= budget}: clip, then if the clipped
// sum still exceeds the budget project onto the simplex sum = budget.
inline void project_budget(std::vector<double>& v, const std::vector<int>& idx, double budget) {
    double sum = 0.0;
    for (int k : idx) {
        if (v[k] < 0.0) v[k] = 0.0;
        sum += v[k];
    }
    if (sum <= budget) return;
    std::vector<double> u;
    u.reserve(idx.size());
    for (int k : idx) u.push_back(v[k]);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    int rho = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        const double t = (css - budget) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            rho = static_cast<int>(i + 1);
            theta = t;
        }
    }
    (void)rho;
    for (int k : idx) v[k] = std::max(0.0, v[k] - theta);
}

struct PairView {
    int dl_ue = 0;
    int ul_ue = 0;
    double h = 0.0;    // |h_ib|^2 of the downlink UE
    double g = 0.0;    // |g_jb|^2 of the uplink UE
    double f = 0.0;    // |f_jib|^2 between them
    double eta = 0.0;  // residual SI gain on this RB
    double sd = 0.0;   // sigma_i^2 at the downlink UE
    double su = 0.0;   // sigma_0^2 at the BS
};

}  // namespace scadetail

// Per-sample SCA power optimization for one feasible schedule. Variables are
// the B downlink powers and the B uplink powers (one uplink UE per RB; a UE
// on several RBs shares one budget).
inline ScaResult sca_power(const Instance& instance, const Schedule& schedule, int t,
                           const ScaParams& params = {}) {
    params.validate();
    instance.validate();
    const SystemConfig& cfg = instance.config;
    if (t < 0 || t >= cfg.num_samples) throw std::invalid_argument("sca_power: bad sample index");
    const FeasibilityReport rep = check_schedule(schedule, cfg);
    if (!rep.all_ok()) throw std::invalid_argument("sca_power: schedule must be feasible");

    const int M = cfg.num_ues, B = cfg.num_rbs;
    const ChannelSample& s = instance.samples[t];

    std::vector<scadetail::PairView> pairs(B);
    std::vector<std::vector<int>> ue_dl_rbs(M), ue_ul_rbs(M);
    for (int b = 0; b < B; ++b) {
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j)
                if (i != j && schedule.x_at(i, j, b)) {
                    pairs[b] = {i,
                                j,
                                s.h_at(i, b),
                                s.g_at(j, b),
                                s.f_at(j, i, b),
                                cfg.si_gain[b],
                                cfg.noise_ue[i],
                                cfg.noise_bs};
                    ue_dl_rbs[i].push_back(b);
                    ue_ul_rbs[j].push_back(b);
                }
    }

    // Power vector layout: pd[0..B) then pu[0..B) (pu[b] belongs to the
    // uplink UE of RB b).
    std::vector<double> p(2 * B, 0.0);
    for (int b = 0; b < B; ++b) {
        p[b] = cfg.p_bs_max / B;
        p[B + b] = cfg.p_ue_max / B;
    }
    std::vector<int> dl_idx(B);
    for (int b = 0; b < B; ++b) dl_idx[b] = b;
    std::vector<std::vector<int>> ul_groups;  // budget groups, one per uplink UE in use
    for (int j = 0; j < M; ++j) {
        if (ue_ul_rbs[j].empty()) continue;
        std::vector<int> grp;
        for (int b : ue_ul_rbs[j]) grp.push_back(B + b);
        ul_groups.push_back(std::move(grp));
    }
    auto project = [&](std::vector<double>& v) {
        scadetail::project_budget(v, dl_idx, cfg.p_bs_max);
        for (const auto& grp : ul_groups) scadetail::project_budget(v, grp, cfg.p_ue_max);
    };

    auto true_rates = [&](const std::vector<double>& v, std::vector<double>& rates) {
        rates.assign(M, 0.0);
        for (int b = 0; b < B; ++b) {
            const auto& pv = pairs[b];
            const double pd = v[b], pu = v[B + b];
            rates[pv.dl_ue] += std::log2(1.0 + pd * pv.h / (pu * pv.f + pv.sd));
            rates[pv.ul_ue] += std::log2(1.0 + pu * pv.g / (pd * pv.eta + pv.su));
        }
    };
    auto true_mmf = [&](const std::vector<double>& v) {
        std::vector<double> rates;
        true_rates(v, rates);
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 0; i < M; ++i) worst = std::min(worst, rates[i] / cfg.weights[i]);
        return worst;
    };

    // Interference-free cap: every UE's rate with the whole budget on each of
    // its RBs and no cross terms.
    double tau_ub = std::numeric_limits<double>::infinity();
    for (int i = 0; i < M; ++i) {
        double cap = 0.0;
        for (int b : ue_dl_rbs[i]) cap += std::log2(1.0 + cfg.p_bs_max * pairs[b].h / pairs[b].sd);
        for (int b : ue_ul_rbs[i]) cap += std::log2(1.0 + cfg.p_ue_max * pairs[b].g / pairs[b].su);
        tau_ub = std::min(tau_ub, cap / cfg.weights[i]);
    }

    ScaResult res;
    res.mmf = true_mmf(p);
    res.mmf_trace.push_back(res.mmf);

    const double ln2 = std::log(2.0);
    const double step_scale = std::max(cfg.p_bs_max, cfg.p_ue_max);

    for (int iter = 0; iter < params.max_iterations; ++iter) {
        ++res.iterations;
        // Linearization point: the subtracted log terms freeze here.
        std::vector<double> zbar_d(B), zbar_u(B);
        for (int b = 0; b < B; ++b) {
            const auto& pv = pairs[b];
            zbar_d[b] = p[B + b] * pv.f + pv.sd;
            zbar_u[b] = p[b] * pv.eta + pv.su;
        }
        // Concave lower bounds of the two per-RB rates and their gradients.
        auto surrogate = [&](const std::vector<double>& v, std::vector<double>& li) {
            li.assign(M, 0.0);
            for (int b = 0; b < B; ++b) {
                const auto& pv = pairs[b];
                const double pd = v[b], pu = v[B + b];
                const double zd = pu * pv.f + pv.sd;
                const double zu = pd * pv.eta + pv.su;
                li[pv.dl_ue] += std::log2(pd * pv.h + zd) - std::log2(zbar_d[b]) -
                                (zd - zbar_d[b]) / (zbar_d[b] * ln2);
                li[pv.ul_ue] += std::log2(pu * pv.g + zu) - std::log2(zbar_u[b]) -
                                (zu - zbar_u[b]) / (zbar_u[b] * ln2);
            }
        };
        auto psi = [&](const std::vector<double>& v, double tau) {
            std::vector<double> li;
            surrogate(v, li);
            double worst = std::numeric_limits<double>::infinity();
            for (int i = 0; i < M; ++i) worst = std::min(worst, li[i] - tau * cfg.weights[i]);
            return worst;
        };
        auto psi_supergradient = [&](const std::vector<double>& v, double tau,
                                     std::vector<double>& grad) {
            std::vector<double> li;
            surrogate(v, li);
            int worst_i = 0;
            double worst = std::numeric_limits<double>::infinity();
            for (int i = 0; i < M; ++i) {
                const double val = li[i] - tau * cfg.weights[i];
                if (val < worst) {
                    worst = val;
                    worst_i = i;
                }
            }
            grad.assign(2 * B, 0.0);
            for (int b : ue_dl_rbs[worst_i]) {
                const auto& pv = pairs[b];
                const double sd = v[b] * pv.h + v[B + b] * pv.f + pv.sd;
                grad[b] += pv.h / (sd * ln2);
                grad[B + b] += pv.f / (sd * ln2) - pv.f / (zbar_d[b] * ln2);
            }
            for (int b : ue_ul_rbs[worst_i]) {
                const auto& pv = pairs[b];
                const double su = v[B + b] * pv.g + v[b] * pv.eta + pv.su;
                grad[B + b] += pv.g / (su * ln2);
                grad[b] += pv.eta / (su * ln2) - pv.eta / (zbar_u[b] * ln2);
            }
            return worst;
        };

        // Feasibility check for a target tau: projected supergradient ascent
        // from the incumbent, stopping early once psi >= 0 certifies it.
        auto reach = [&](double tau, const std::vector<double>& start, std::vector<double>& found) {
            std::vector<double> v = start;
            std::vector<double> best_v = v;
            double best = psi(v, tau);
            if (best >= 0.0) {
                found = v;
                return true;
            }
            std::vector<double> grad;
            int since_improved = 0;
            for (int k = 1; k <= params.ascent_iterations; ++k) {
                psi_supergradient(v, tau, grad);
                double norm = 0.0;
                for (double gk : grad) norm += gk * gk;
                norm = std::sqrt(norm);
                if (norm < 1e-14) break;
                const double step = step_scale / (std::sqrt(static_cast<double>(k)) * norm);
                for (int d = 0; d < 2 * B; ++d) v[d] += step * grad[d];
                project(v);
                const double val = psi(v, tau);
                if (val > best) {
                    best = val;
                    best_v = v;
                    since_improved = 0;
                    if (best >= 0.0) {
                        found = best_v;
                        return true;
                    }
                } else if (++since_improved > 60) {
                    break;
                }
            }
            found = best_v;
            return best >= 0.0;
        };

        // Bisection on tau. The current point certifies its own surrogate
        // value, which equals the true MMF at the linearization point.
        double lo = std::max(0.0, true_mmf(p));
        double hi = std::max(lo, tau_ub) + params.bisection_tol;
        std::vector<double> incumbent = p;
        while (hi - lo > params.bisection_tol) {
            const double mid = 0.5 * (lo + hi);
            std::vector<double> found;
            if (reach(mid, incumbent, found)) {
                incumbent = found;
                lo = mid;
            } else {
                hi = mid;
            }
        }

        const double candidate = true_mmf(incumbent);
        const double previous = res.mmf;
        if (candidate > previous) {
            p = incumbent;
            res.mmf = candidate;
        }
        res.mmf_trace.push_back(res.mmf);
        if (res.mmf - previous < params.improvement_tol) {
            res.converged = true;
            break;
        }
    }

    res.p_dl.assign(B, 0.0);
    res.p_ul.assign(static_cast<size_t>(M) * B, 0.0);
    for (int b = 0; b < B; ++b) {
        res.p_dl[b] = p[b];
        res.p_ul[static_cast<size_t>(pairs[b].ul_ue) * B + b] = p[B + b];
    }
    return res;
}

// Runs sca_power for every sample and assembles the profile.
inline PowerProfile optimize_powers_sca(const Instance& instance, const Schedule& schedule,
                                        const ScaParams& params = {}, int* total_iterations = nullptr) {
    const SystemConfig& cfg = instance.config;
    PowerProfile prof(cfg.num_samples, cfg.num_ues, cfg.num_rbs);
    for (int t = 0; t < cfg.num_samples; ++t) {
        const ScaResult r = sca_power(instance, schedule, t, params);
        for (int b = 0; b < cfg.num_rbs; ++b) prof.dl_at(t, b) = r.p_dl[b];
        for (int j = 0; j < cfg.num_ues; ++j)
            for (int b = 0; b < cfg.num_rbs; ++b)
                prof.ul_at(t, j, b) = r.p_ul[static_cast<size_t>(j) * cfg.num_rbs + b];
        if (total_iterations) *total_iterations += r.iterations;
    }
    return prof;
}

}  // namespace fdmmf
