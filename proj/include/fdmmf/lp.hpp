#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Self-contained linear-program solver: maximize c'v subject to equality
// rows, upper-bound rows (a'v <= rhs) and box bounds. The algorithm is a
// bounded-variable revised simplex with a dense basis inverse, Dantzig
// pricing and a Bland's-rule fallback that guarantees termination on the
// highly degenerate scheduling LPs. Inequality rows are activated lazily:
// rows with few nonzeros (the per-triple coupling cuts) enter the working
// set only once violated, which keeps the basis small.

namespace fdmmf {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpRow {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
};

struct LpProblem {
    int num_vars = 0;
    std::vector<double> c;          // maximize c'v
    std::vector<LpRow> eq_rows;     // a'v == rhs
    std::vector<LpRow> ub_rows;     // a'v <= rhs
    std::vector<double> lower;      // -inf allowed
    std::vector<double> upper;      // +inf allowed

    void check() const {
        if (static_cast<int>(c.size()) != num_vars ||
            static_cast<int>(lower.size()) != num_vars ||
            static_cast<int>(upper.size()) != num_vars)
            throw std::invalid_argument("LpProblem: vector sizes do not match num_vars");
        for (int j = 0; j < num_vars; ++j)
            if (lower[j] > upper[j]) throw std::invalid_argument("LpProblem: lower > upper bound");
        auto check_rows = [&](const std::vector<LpRow>& rows) {
            for (const LpRow& r : rows)
                for (const auto& [col, coef] : r.terms) {
                    if (col < 0 || col >= num_vars)
                        throw std::invalid_argument("LpProblem: row references unknown column");
                    if (!std::isfinite(coef) || !std::isfinite(r.rhs))
                        throw std::invalid_argument("LpProblem: non-finite row data");
                }
        };
        check_rows(eq_rows);
        check_rows(ub_rows);
    }
};

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    std::vector<double> v;
    double objective_value = 0.0;
    int iterations = 0;
};

class LpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace lpdetail {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-9;
constexpr double kPivotTol = 1e-10;
constexpr int kRefactorEvery = 128;

class Simplex {
public:
    explicit Simplex(const LpProblem& p) : p_(p), n_(p.num_vars) {
        cols_.resize(n_);
        lb_.assign(p.lower.begin(), p.lower.end());
        ub_.assign(p.upper.begin(), p.upper.end());
        xval_.resize(n_);
        for (int j = 0; j < n_; ++j) {
            if (std::isfinite(lb_[j]))
                xval_[j] = lb_[j];
            else if (std::isfinite(ub_[j]))
                xval_[j] = ub_[j];
            else
                xval_[j] = 0.0;
        }
        at_upper_.assign(n_, 0);
        for (int j = 0; j < n_; ++j)
            if (!std::isfinite(lb_[j]) && std::isfinite(ub_[j])) at_upper_[j] = 1;
        pos_in_basis_.assign(n_, -1);
        double cmax = 1.0;
        for (double v : p.c) cmax = std::max(cmax, std::fabs(v));
        dual_tol_ = 1e-9 * cmax;
    }

    // Appends rows to the working set; new logicals become basic. The basis
    // inverse extends exactly: B_new = [[B,0],[C,I]] => Binv_new =
    // [[Binv,0],[-C*Binv,I]].
    void add_rows(const std::vector<int>& eq_idx, const std::vector<int>& ub_idx) {
        const int m_old = m_;
        std::vector<const LpRow*> added;
        for (int k : eq_idx) {
            added.push_back(&p_.eq_rows[k]);
            row_is_eq_.push_back(1);
        }
        for (int k : ub_idx) {
            added.push_back(&p_.ub_rows[k]);
            row_is_eq_.push_back(0);
            ub_active_[k] = 1;
        }
        const int k_new = static_cast<int>(added.size());
        if (k_new == 0) return;
        const int m_new = m_old + k_new;

        for (int r = 0; r < k_new; ++r) {
            rows_.push_back(added[r]);
            rhs_.push_back(added[r]->rhs);
            for (const auto& [col, coef] : added[r]->terms)
                cols_[col].emplace_back(m_old + r, coef);
        }

        // Grow Binv.
        std::vector<double> nb(static_cast<size_t>(m_new) * m_new, 0.0);
        for (int r = 0; r < m_old; ++r)
            std::copy(binv_.begin() + static_cast<size_t>(r) * m_old,
                      binv_.begin() + static_cast<size_t>(r) * m_old + m_old,
                      nb.begin() + static_cast<size_t>(r) * m_new);
        for (int r = 0; r < k_new; ++r) {
            double* dst = nb.data() + static_cast<size_t>(m_old + r) * m_new;
            dst[m_old + r] = 1.0;
            for (const auto& [col, coef] : added[r]->terms) {
                const int pos = pos_in_basis_[col];
                if (pos >= 0) {
                    const double* src = nb.data() + 0;
                    for (int k = 0; k < m_old; ++k)
                        dst[k] -= coef * src[static_cast<size_t>(pos) * m_new + k];
                }
            }
        }
        binv_ = std::move(nb);
        m_ = m_new;

        // Logical variables for the new rows.
        for (int r = 0; r < k_new; ++r) {
            const bool eq = row_is_eq_[m_old + r] != 0;
            lb_.push_back(0.0);
            ub_.push_back(eq ? 0.0 : kInf);
            at_upper_.push_back(0);
            const int var = n_ + m_old + r;
            pos_in_basis_.push_back(m_old + r);
            basis_.push_back(var);
            double v = added[r]->rhs;
            for (const auto& [col, coef] : added[r]->terms) v -= coef * xval_[col];
            xval_.push_back(v);
        }
        feasible_ = false;
    }

    LpStatus optimize(int* iterations) {
        if (!feasible_) {
            const LpStatus st = phase1();
            if (st != LpStatus::Optimal) {
                if (iterations) *iterations = iters_;
                return st;
            }
            feasible_ = true;
        }
        const LpStatus st = phase2();
        if (iterations) *iterations = iters_;
        return st;
    }

    // Structural solution values clamped to their boxes.
    std::vector<double> solution() const {
        std::vector<double> v(xval_.begin(), xval_.begin() + n_);
        for (int j = 0; j < n_; ++j) {
            if (std::isfinite(lb_[j])) v[j] = std::max(v[j], lb_[j]);
            if (std::isfinite(ub_[j])) v[j] = std::min(v[j], ub_[j]);
        }
        return v;
    }

    bool ub_row_active(int k) const { return ub_active_[k] != 0; }
    void mark_all_inactive() { ub_active_.assign(p_.ub_rows.size(), 0); }

    // Along the last unbounded ray, activates every inactive row the ray
    // eventually violates. Returns false when no such row exists (the LP is
    // genuinely unbounded).
    bool cut_unbounded_ray() {
        if (ray_.empty()) return false;
        std::vector<int> cut;
        for (int k = 0; k < static_cast<int>(p_.ub_rows.size()); ++k) {
            if (ub_active_[k]) continue;
            double rate = 0.0;
            for (const auto& [col, coef] : p_.ub_rows[k].terms) rate += coef * ray_[col];
            if (rate > 1e-9) cut.push_back(k);
        }
        if (cut.empty()) return false;
        add_rows({}, cut);
        return true;
    }

    std::vector<int> violated_inactive_rows(double tol, int max_rows) const {
        std::vector<std::pair<double, int>> v;
        for (int k = 0; k < static_cast<int>(p_.ub_rows.size()); ++k) {
            if (ub_active_[k]) continue;
            const LpRow& row = p_.ub_rows[k];
            double lhs = 0.0;
            for (const auto& [col, coef] : row.terms) lhs += coef * xval_[col];
            if (lhs - row.rhs > tol) v.emplace_back(row.rhs - lhs, k);
        }
        if (static_cast<int>(v.size()) > max_rows) {
            std::nth_element(v.begin(), v.begin() + max_rows, v.end());
            v.resize(max_rows);
        }
        std::vector<int> idx;
        idx.reserve(v.size());
        for (auto& [viol, k] : v) idx.push_back(k);
        return idx;
    }

    void init_ub_flags() { ub_active_.assign(p_.ub_rows.size(), 0); }

private:
    int logical_var(int row) const { return n_ + row; }
    bool is_logical(int var) const { return var >= n_; }

    double col_dot(int var, const std::vector<double>& y) const {
        if (is_logical(var)) return y[var - n_];
        double s = 0.0;
        for (const auto& [r, a] : cols_[var]) s += a * y[r];
        return s;
    }

    void ftran(int var, std::vector<double>& w) const {
        w.assign(m_, 0.0);
        if (is_logical(var)) {
            const int r = var - n_;
            for (int i = 0; i < m_; ++i) w[i] = binv_[static_cast<size_t>(i) * m_ + r];
            return;
        }
        for (const auto& [k, a] : cols_[var]) {
            const double av = a;
            for (int i = 0; i < m_; ++i) w[i] += av * binv_[static_cast<size_t>(i) * m_ + k];
        }
    }

    void btran(const std::vector<double>& cb, std::vector<double>& y) const {
        y.assign(m_, 0.0);
        for (int r = 0; r < m_; ++r) {
            const double cr = cb[r];
            if (cr == 0.0) continue;
            const double* row = binv_.data() + static_cast<size_t>(r) * m_;
            for (int k = 0; k < m_; ++k) y[k] += cr * row[k];
        }
    }

    double infeasibility() const {
        double z = 0.0;
        for (int r = 0; r < m_; ++r) {
            const int var = basis_[r];
            const double x = xval_[var];
            if (x < lb_[var]) z += lb_[var] - x;
            if (x > ub_[var]) z += x - ub_[var];
        }
        return z;
    }

    void refactorize() {
        // Rebuild the basis inverse by Gauss-Jordan with partial pivoting,
        // then recompute basic values from the nonbasic point.
        std::vector<double> mat(static_cast<size_t>(m_) * 2 * m_, 0.0);
        for (int r = 0; r < m_; ++r) {
            const int var = basis_[r];
            if (is_logical(var)) {
                mat[static_cast<size_t>(var - n_) * 2 * m_ + r] = 1.0;
            } else {
                for (const auto& [k, a] : cols_[var]) mat[static_cast<size_t>(k) * 2 * m_ + r] = a;
            }
        }
        for (int r = 0; r < m_; ++r) mat[static_cast<size_t>(r) * 2 * m_ + m_ + r] = 1.0;
        for (int col = 0; col < m_; ++col) {
            int piv = -1;
            double best = 0.0;
            for (int r = col; r < m_; ++r) {
                const double v = std::fabs(mat[static_cast<size_t>(r) * 2 * m_ + col]);
                if (v > best) {
                    best = v;
                    piv = r;
                }
            }
            if (piv < 0 || best < 1e-12) throw LpError("singular basis during refactorization");
            if (piv != col)
                for (int k = 0; k < 2 * m_; ++k)
                    std::swap(mat[static_cast<size_t>(piv) * 2 * m_ + k],
                              mat[static_cast<size_t>(col) * 2 * m_ + k]);
            const double inv = 1.0 / mat[static_cast<size_t>(col) * 2 * m_ + col];
            for (int k = 0; k < 2 * m_; ++k) mat[static_cast<size_t>(col) * 2 * m_ + k] *= inv;
            for (int r = 0; r < m_; ++r) {
                if (r == col) continue;
                const double f = mat[static_cast<size_t>(r) * 2 * m_ + col];
                if (f == 0.0) continue;
                for (int k = 0; k < 2 * m_; ++k)
                    mat[static_cast<size_t>(r) * 2 * m_ + k] -=
                        f * mat[static_cast<size_t>(col) * 2 * m_ + k];
            }
        }
        for (int r = 0; r < m_; ++r)
            for (int k = 0; k < m_; ++k)
                binv_[static_cast<size_t>(r) * m_ + k] = mat[static_cast<size_t>(r) * 2 * m_ + m_ + k];
        recompute_basics();
        pivots_since_refactor_ = 0;
    }

    void recompute_basics() {
        std::vector<double> resid(rhs_);
        for (int j = 0; j < n_; ++j) {
            if (pos_in_basis_[j] >= 0) continue;
            const double xj = xval_[j];
            if (xj == 0.0) continue;
            for (const auto& [r, a] : cols_[j]) resid[r] -= a * xj;
        }
        for (int r = 0; r < m_; ++r) {
            const int lv = logical_var(r);
            if (pos_in_basis_[lv] < 0 && xval_[lv] != 0.0) resid[r] -= xval_[lv];
        }
        for (int r = 0; r < m_; ++r) {
            double s = 0.0;
            const double* row = binv_.data() + static_cast<size_t>(r) * m_;
            for (int k = 0; k < m_; ++k) s += row[k] * resid[k];
            xval_[basis_[r]] = s;
        }
    }

    // Shared pivoting step. Returns false when no eligible entering variable
    // exists at the current (phase-dependent) costs.
    template <typename CostFn>
    bool pivot_step(CostFn&& reduced_cost_source, bool phase_one, bool* made_progress) {
        // y = cb' * Binv
        std::vector<double> cb(m_);
        for (int r = 0; r < m_; ++r) cb[r] = reduced_cost_source(basis_[r], r);
        std::vector<double> y;
        btran(cb, y);

        const int total = n_ + m_;
        int enter = -1;
        int enter_dir = +1;
        double best_score = 0.0;
        for (int j = 0; j < total; ++j) {
            if (pos_in_basis_[j] >= 0) continue;
            if (lb_[j] == ub_[j]) continue;  // fixed, never enters
            // Phase 1 maximizes -infeasibility, whose reduced profit is
            // +y'A_j; phase 2 uses the ordinary reduced cost.
            const double d = phase_one ? col_dot(j, y) : objective_coef(j) - col_dot(j, y);
            int dir = 0;
            const bool has_lb = std::isfinite(lb_[j]);
            const bool has_ub = std::isfinite(ub_[j]);
            const bool at_up = at_upper_[j] != 0;
            if (!has_lb && !has_ub) {
                if (std::fabs(d) > dual_tol_) dir = d > 0 ? +1 : -1;
            } else if (at_up) {
                if (d < -dual_tol_) dir = -1;
            } else {
                if (d > dual_tol_) dir = +1;
            }
            if (dir == 0) continue;
            const double score = std::fabs(d);
            if (bland_mode_) {
                enter = j;
                enter_dir = dir;
                break;
            }
            if (score > best_score) {
                best_score = score;
                enter = j;
                enter_dir = dir;
            }
        }
        if (enter < 0) return false;

        std::vector<double> w;
        ftran(enter, w);

        // Ratio test; rate of change of basic r per unit step is -dir*w[r].
        double limit = ub_[enter] - lb_[enter];  // bound flip distance
        if (!std::isfinite(limit)) limit = kInf;
        int leave_row = -1;
        double leave_bound = 0.0;
        double best_delta = limit;
        double best_piv = 0.0;
        for (int r = 0; r < m_; ++r) {
            const double rate = -enter_dir * w[r];
            if (std::fabs(rate) <= kPivotTol) continue;
            const int var = basis_[r];
            const double x = xval_[var];
            double delta = kInf;
            double target = 0.0;
            if (phase_one && x < lb_[var] - kFeasTol) {
                // infeasible below; blocks when climbing back to lb
                if (rate > 0.0) {
                    delta = (lb_[var] - x) / rate;
                    target = lb_[var];
                } else
                    continue;
            } else if (phase_one && x > ub_[var] + kFeasTol) {
                if (rate < 0.0) {
                    delta = (ub_[var] - x) / rate;
                    target = ub_[var];
                } else
                    continue;
            } else if (rate > 0.0) {
                if (!std::isfinite(ub_[var])) continue;
                delta = (ub_[var] - x) / rate;
                target = ub_[var];
            } else {
                if (!std::isfinite(lb_[var])) continue;
                delta = (lb_[var] - x) / rate;
                target = lb_[var];
            }
            if (delta < -1e-12) delta = 0.0;
            const bool better =
                delta < best_delta - 1e-12 ||
                (delta < best_delta + 1e-12 &&
                 (bland_mode_ ? (leave_row < 0 || basis_[r] < basis_[leave_row])
                              : std::fabs(w[r]) > std::fabs(best_piv)));
            if (better) {
                best_delta = delta;
                leave_row = r;
                leave_bound = target;
                best_piv = w[r];
            }
        }

        if (leave_row < 0 && !std::isfinite(best_delta)) {
            // Unbounded direction; remember the structural ray.
            ray_.assign(n_, 0.0);
            if (!is_logical(enter)) ray_[enter] = enter_dir;
            for (int r = 0; r < m_; ++r) {
                const int var = basis_[r];
                if (!is_logical(var)) ray_[var] = -enter_dir * w[r];
            }
            unbounded_ = true;
            return false;
        }

        const double delta = std::max(0.0, best_delta);
        if (made_progress) *made_progress = delta > 1e-12;

        // Move entering variable and all basics.
        const double step = enter_dir * delta;
        xval_[enter] += step;
        for (int r = 0; r < m_; ++r) {
            if (w[r] == 0.0) continue;
            xval_[basis_[r]] -= step * w[r];
        }

        if (leave_row < 0) {
            // Bound flip, basis unchanged.
            at_upper_[enter] = at_upper_[enter] ? 0 : 1;
            xval_[enter] = at_upper_[enter] ? ub_[enter] : lb_[enter];
        } else {
            const int leave_var = basis_[leave_row];
            xval_[leave_var] = leave_bound;
            at_upper_[leave_var] =
                (std::isfinite(ub_[leave_var]) && leave_bound == ub_[leave_var] &&
                 lb_[leave_var] != ub_[leave_var])
                    ? 1
                    : 0;
            pos_in_basis_[leave_var] = -1;
            basis_[leave_row] = enter;
            pos_in_basis_[enter] = leave_row;

            // Binv <- E * Binv with eta column from w.
            const double piv = w[leave_row];
            if (std::fabs(piv) < 1e-11) {
                refactorize();
            } else {
                double* prow = binv_.data() + static_cast<size_t>(leave_row) * m_;
                const double inv = 1.0 / piv;
                for (int k = 0; k < m_; ++k) prow[k] *= inv;
                for (int r = 0; r < m_; ++r) {
                    if (r == leave_row) continue;
                    const double f = w[r];
                    if (f == 0.0) continue;
                    double* row = binv_.data() + static_cast<size_t>(r) * m_;
                    for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
                }
                if (++pivots_since_refactor_ >= kRefactorEvery) refactorize();
            }
        }
        return true;
    }

    double objective_coef(int var) const { return is_logical(var) ? 0.0 : p_.c[var]; }

    LpStatus phase1() {
        int degenerate_streak = 0;
        while (true) {
            if (infeasibility() <= kFeasTol * (1.0 + m_)) return LpStatus::Optimal;
            if (++iters_ > kMaxIters) throw LpError("simplex iteration limit (phase 1)");
            bool progress = false;
            auto cost = [&](int var, int /*row*/) -> double {
                const double x = xval_[var];
                if (x < lb_[var] - kFeasTol) return -1.0;
                if (x > ub_[var] + kFeasTol) return 1.0;
                return 0.0;
            };
            const bool moved = pivot_step(cost, true, &progress);
            if (!moved) {
                if (infeasibility() <= 1e-7 * (1.0 + m_)) return LpStatus::Optimal;
                return LpStatus::Infeasible;
            }
            degenerate_streak = progress ? 0 : degenerate_streak + 1;
            bland_mode_ = degenerate_streak > 64 + m_;
        }
    }

    LpStatus phase2() {
        unbounded_ = false;
        int degenerate_streak = 0;
        while (true) {
            if (++iters_ > kMaxIters) throw LpError("simplex iteration limit (phase 2)");
            bool progress = false;
            auto cost = [&](int var, int /*row*/) -> double { return objective_coef(var); };
            const bool moved = pivot_step(cost, false, &progress);
            if (!moved) return unbounded_ ? LpStatus::Unbounded : LpStatus::Optimal;
            // A pivot can push a basic value out of bounds only through
            // accumulated roundoff; fall back to phase 1 when that happens.
            degenerate_streak = progress ? 0 : degenerate_streak + 1;
            bland_mode_ = degenerate_streak > 64 + m_;
            if (pivots_since_refactor_ == 0 && infeasibility() > 1e-7) {
                const LpStatus st = phase1();
                if (st != LpStatus::Optimal) return st;
            }
        }
    }

    const LpProblem& p_;
    int n_ = 0;
    int m_ = 0;
    std::vector<const LpRow*> rows_;
    std::vector<double> rhs_;
    std::vector<char> row_is_eq_;
    std::vector<char> ub_active_;
    std::vector<std::vector<std::pair<int, double>>> cols_;
    std::vector<double> lb_, ub_, xval_;
    std::vector<char> at_upper_;
    std::vector<int> basis_;
    std::vector<int> pos_in_basis_;
    std::vector<double> binv_;
    std::vector<double> ray_;
    bool feasible_ = false;
    bool unbounded_ = false;
    bool bland_mode_ = false;
    int pivots_since_refactor_ = 0;
    int iters_ = 0;
    double dual_tol_ = 1e-9;
    static constexpr int kMaxIters = 2000000;
};

}  // namespace lpdetail

// Solves the LP to optimality. Optimal solutions satisfy every row within
// 1e-7 absolute; infeasibility and unboundedness are detected exactly.
// Numerical failure raises LpError instead of returning a wrong answer.
inline LpSolution solve_lp(const LpProblem& problem) {
    problem.check();
    lpdetail::Simplex s(problem);
    s.init_ub_flags();

    // Seed the working set: small problems enter whole; for large ones the
    // dense structural rows go in up front and the 2-3 term coupling rows
    // wait until violated.
    std::vector<int> eq_all(problem.eq_rows.size());
    for (size_t k = 0; k < eq_all.size(); ++k) eq_all[k] = static_cast<int>(k);
    std::vector<int> ub_seed;
    if (static_cast<int>(problem.ub_rows.size()) <= 512) {
        ub_seed.resize(problem.ub_rows.size());
        for (size_t k = 0; k < ub_seed.size(); ++k) ub_seed[k] = static_cast<int>(k);
    } else {
        for (size_t k = 0; k < problem.ub_rows.size(); ++k)
            if (problem.ub_rows[k].terms.size() >= 4) ub_seed.push_back(static_cast<int>(k));
    }
    s.add_rows(eq_all, ub_seed);

    LpSolution sol;
    for (int round = 0; round < 1000; ++round) {
        const LpStatus st = s.optimize(&sol.iterations);
        if (st == LpStatus::Infeasible) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        if (st == LpStatus::Unbounded) {
            if (s.cut_unbounded_ray()) continue;
            sol.status = LpStatus::Unbounded;
            sol.objective_value = std::numeric_limits<double>::infinity();
            return sol;
        }
        const std::vector<int> viol = s.violated_inactive_rows(lpdetail::kFeasTol, 2048);
        if (viol.empty()) {
            sol.status = LpStatus::Optimal;
            sol.v = s.solution();
            sol.objective_value = 0.0;
            for (int j = 0; j < problem.num_vars; ++j) sol.objective_value += problem.c[j] * sol.v[j];
            return sol;
        }
        s.add_rows({}, viol);
    }
    throw LpError("row activation did not converge");
}

// Debug dump in fixed-column MPS format, for cross-checks with external
// solvers. Objective is written as a minimization of -c (MPS convention).
inline void write_mps(const LpProblem& p, std::ostream& os, const std::string& name = "FDMMF") {
    p.check();
    os << "NAME          " << name << "\n";
    os << "ROWS\n";
    os << " N  COST\n";
    for (size_t k = 0; k < p.eq_rows.size(); ++k) os << " E  EQ" << k << "\n";
    for (size_t k = 0; k < p.ub_rows.size(); ++k) os << " L  UB" << k << "\n";

    // column-major gather
    std::vector<std::vector<std::pair<std::string, double>>> entries(p.num_vars);
    for (int j = 0; j < p.num_vars; ++j)
        if (p.c[j] != 0.0) entries[j].emplace_back("COST", -p.c[j]);
    for (size_t k = 0; k < p.eq_rows.size(); ++k)
        for (const auto& [col, coef] : p.eq_rows[k].terms)
            entries[col].emplace_back("EQ" + std::to_string(k), coef);
    for (size_t k = 0; k < p.ub_rows.size(); ++k)
        for (const auto& [col, coef] : p.ub_rows[k].terms)
            entries[col].emplace_back("UB" + std::to_string(k), coef);

    auto field = [](const std::string& s, size_t width) {
        std::string out = s;
        if (out.size() < width) out.append(width - out.size(), ' ');
        return out;
    };
    os << "COLUMNS\n";
    for (int j = 0; j < p.num_vars; ++j) {
        const std::string cname = "X" + std::to_string(j);
        for (const auto& [row, coef] : entries[j]) {
            std::ostringstream val;
            val << std::setprecision(12) << coef;
            os << "    " << field(cname, 10) << field(row, 10) << val.str() << "\n";
        }
    }
    os << "RHS\n";
    for (size_t k = 0; k < p.eq_rows.size(); ++k)
        if (p.eq_rows[k].rhs != 0.0)
            os << "    " << field("RHS", 10) << field("EQ" + std::to_string(k), 10)
               << p.eq_rows[k].rhs << "\n";
    for (size_t k = 0; k < p.ub_rows.size(); ++k)
        if (p.ub_rows[k].rhs != 0.0)
            os << "    " << field("RHS", 10) << field("UB" + std::to_string(k), 10)
               << p.ub_rows[k].rhs << "\n";
    os << "BOUNDS\n";
    for (int j = 0; j < p.num_vars; ++j) {
        const std::string cname = "X" + std::to_string(j);
        if (std::isfinite(p.lower[j]) && p.lower[j] != 0.0)
            os << " LO " << field("BND", 10) << field(cname, 10) << p.lower[j] << "\n";
        if (!std::isfinite(p.lower[j])) os << " MI " << field("BND", 10) << field(cname, 10) << "\n";
        if (std::isfinite(p.upper[j]))
            os << " UP " << field("BND", 10) << field(cname, 10) << p.upper[j] << "\n";
    }
    os << "ENDATA\n";
}

}  // namespace fdmmf
