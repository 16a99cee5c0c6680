#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "fdmmf/lp.hpp"
#include "fdmmf/rng.hpp"

using namespace fdmmf;

namespace {

LpProblem box_problem(int n, std::vector<double> c, double lo = 0.0, double hi = 1.0) {
    LpProblem p;
    p.num_vars = n;
    p.c = std::move(c);
    p.lower.assign(n, lo);
    p.upper.assign(n, hi);
    return p;
}

// Independent reference for small LPs: enumerate candidate vertices as
// solutions of n active constraints drawn from {eq rows, ub rows, bounds},
// keep the feasible ones, return the best objective. Exponential, test-only.
double brute_force_lp(const LpProblem& p, bool* feasible) {
    const int n = p.num_vars;
    struct Con {
        std::vector<double> a;
        double rhs;
    };
    std::vector<Con> cons;  // treated as equalities when active
    std::vector<int> forced;  // indices of eq rows (always active)
    for (const LpRow& r : p.eq_rows) {
        Con c{std::vector<double>(n, 0.0), r.rhs};
        for (auto& [j, v] : r.terms) c.a[j] = v;
        forced.push_back(static_cast<int>(cons.size()));
        cons.push_back(std::move(c));
    }
    for (const LpRow& r : p.ub_rows) {
        Con c{std::vector<double>(n, 0.0), r.rhs};
        for (auto& [j, v] : r.terms) c.a[j] = v;
        cons.push_back(std::move(c));
    }
    for (int j = 0; j < n; ++j) {
        if (std::isfinite(p.lower[j])) {
            Con c{std::vector<double>(n, 0.0), p.lower[j]};
            c.a[j] = 1.0;
            cons.push_back(std::move(c));
        }
        if (std::isfinite(p.upper[j])) {
            Con c{std::vector<double>(n, 0.0), p.upper[j]};
            c.a[j] = 1.0;
            cons.push_back(std::move(c));
        }
    }
    const int total = static_cast<int>(cons.size());
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;

    std::vector<int> pick(n);
    auto feasible_point = [&](const std::vector<double>& x) {
        for (int j = 0; j < n; ++j) {
            if (x[j] < p.lower[j] - 1e-7 || x[j] > p.upper[j] + 1e-7) return false;
        }
        for (const LpRow& r : p.eq_rows) {
            double lhs = 0.0;
            for (auto& [jj, v] : r.terms) lhs += v * x[jj];
            if (std::fabs(lhs - r.rhs) > 1e-7) return false;
        }
        for (const LpRow& r : p.ub_rows) {
            double lhs = 0.0;
            for (auto& [jj, v] : r.terms) lhs += v * x[jj];
            if (lhs > r.rhs + 1e-7) return false;
        }
        return true;
    };

    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n) {
            // solve the n x n active system by Gaussian elimination
            std::vector<double> mat(static_cast<size_t>(n) * (n + 1), 0.0);
            for (int r = 0; r < n; ++r) {
                for (int j = 0; j < n; ++j) mat[r * (n + 1) + j] = cons[pick[r]].a[j];
                mat[r * (n + 1) + n] = cons[pick[r]].rhs;
            }
            for (int col = 0; col < n; ++col) {
                int piv = -1;
                double bestv = 1e-9;
                for (int r = col; r < n; ++r)
                    if (std::fabs(mat[r * (n + 1) + col]) > bestv) {
                        bestv = std::fabs(mat[r * (n + 1) + col]);
                        piv = r;
                    }
                if (piv < 0) return;
                for (int k = 0; k <= n; ++k) std::swap(mat[piv * (n + 1) + k], mat[col * (n + 1) + k]);
                const double inv = 1.0 / mat[col * (n + 1) + col];
                for (int k = 0; k <= n; ++k) mat[col * (n + 1) + k] *= inv;
                for (int r = 0; r < n; ++r) {
                    if (r == col) continue;
                    const double f = mat[r * (n + 1) + col];
                    for (int k = 0; k <= n; ++k) mat[r * (n + 1) + k] -= f * mat[col * (n + 1) + k];
                }
            }
            std::vector<double> x(n);
            for (int j = 0; j < n; ++j) x[j] = mat[j * (n + 1) + n];
            if (!feasible_point(x)) return;
            any = true;
            double val = 0.0;
            for (int j = 0; j < n; ++j) val += p.c[j] * x[j];
            best = std::max(best, val);
            return;
        }
        if (depth < static_cast<int>(forced.size())) {
            pick[depth] = forced[depth];
            rec(start, depth + 1);
            return;
        }
        for (int k = start; k < total; ++k) {
            bool used = false;
            for (int d = 0; d < depth; ++d) used = used || pick[d] == k;
            if (used) continue;
            pick[depth] = k;
            rec(k + 1, depth + 1);
        }
    };
    rec(0, 0);
    if (feasible) *feasible = any;
    return best;
}

}  // namespace

TEST_CASE("solve_lp basics") {
    SECTION("single variable capped by a row") {
        LpProblem p = box_problem(1, {1.0}, 0.0, 10.0);
        p.ub_rows.push_back({{{0, 1.0}}, 1.0});
        const LpSolution s = solve_lp(p);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.v[0] == Catch::Approx(1.0).margin(1e-9));
        CHECK(s.objective_value == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("contradictory bounds are infeasible") {
        LpProblem p;
        p.num_vars = 2;
        p.c = {1.0, 1.0};
        p.lower = {2.0, 0.0};
        p.upper = {lpdetail::kInf, lpdetail::kInf};
        p.ub_rows.push_back({{{0, 1.0}, {1, 1.0}}, 1.0});
        CHECK(solve_lp(p).status == LpStatus::Infeasible);
    }
    SECTION("two-constraint vertex") {
        LpProblem p;
        p.num_vars = 2;
        p.c = {3.0, 2.0};
        p.lower = {0.0, 0.0};
        p.upper = {lpdetail::kInf, lpdetail::kInf};
        p.ub_rows.push_back({{{0, 1.0}, {1, 1.0}}, 4.0});
        p.ub_rows.push_back({{{0, 1.0}, {1, 3.0}}, 6.0});
        const LpSolution s = solve_lp(p);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.objective_value == Catch::Approx(12.0).margin(1e-8));
        CHECK(s.v[0] == Catch::Approx(4.0).margin(1e-8));
        CHECK(s.v[1] == Catch::Approx(0.0).margin(1e-8));
    }
    SECTION("unbounded detection") {
        LpProblem p;
        p.num_vars = 1;
        p.c = {1.0};
        p.lower = {0.0};
        p.upper = {lpdetail::kInf};
        CHECK(solve_lp(p).status == LpStatus::Unbounded);
    }
    SECTION("equality rows") {
        LpProblem p = box_problem(2, {1.0, -1.0});
        p.eq_rows.push_back({{{0, 1.0}, {1, 1.0}}, 1.0});
        const LpSolution s = solve_lp(p);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.v[0] == Catch::Approx(1.0).margin(1e-9));
        CHECK(s.v[1] == Catch::Approx(0.0).margin(1e-9));
    }
}

TEST_CASE("weak duality certificates bound the reported optimum") {
    // max 3x+2y st x+y<=4, x+3y<=6; dual feasible y must satisfy
    // u+w>=3, u+3w>=2, u,w>=0 and then 4u+6w >= optimum.
    LpProblem p;
    p.num_vars = 2;
    p.c = {3.0, 2.0};
    p.lower = {0.0, 0.0};
    p.upper = {lpdetail::kInf, lpdetail::kInf};
    p.ub_rows.push_back({{{0, 1.0}, {1, 1.0}}, 4.0});
    p.ub_rows.push_back({{{0, 1.0}, {1, 3.0}}, 6.0});
    const LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    for (const auto& [u, w] : std::vector<std::pair<double, double>>{{3.0, 0.0}, {3.5, 0.5}}) {
        REQUIRE(u + w >= 3.0 - 1e-12);
        REQUIRE(u + 3 * w >= 2.0 - 1e-12);
        CHECK(4 * u + 6 * w >= s.objective_value - 1e-8);
    }
}

TEST_CASE("objective scaling leaves the optimizer unchanged") {
    LpProblem p;
    p.num_vars = 2;
    p.c = {3.0, 2.0};
    p.lower = {0.0, 0.0};
    p.upper = {lpdetail::kInf, lpdetail::kInf};
    p.ub_rows.push_back({{{0, 1.0}, {1, 1.0}}, 4.0});
    p.ub_rows.push_back({{{0, 1.0}, {1, 3.0}}, 6.0});
    const LpSolution a = solve_lp(p);
    for (double& v : p.c) v *= 17.0;
    const LpSolution b = solve_lp(p);
    REQUIRE(a.status == LpStatus::Optimal);
    REQUIRE(b.status == LpStatus::Optimal);
    CHECK(a.v[0] == Catch::Approx(b.v[0]).margin(1e-8));
    CHECK(a.v[1] == Catch::Approx(b.v[1]).margin(1e-8));
}

TEST_CASE("random LPs against vertex enumeration") {
    RandomStream rng(2024);
    int optimal_seen = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 3);  // 2..4
        LpProblem p;
        p.num_vars = n;
        p.c.resize(n);
        for (double& v : p.c) v = 2.0 * rng.next_double() - 1.0;
        p.lower.assign(n, 0.0);
        p.upper.assign(n, 1.0 + 2.0 * rng.next_double());
        const int rows = 1 + static_cast<int>(rng.next_u64() % 4);
        for (int r = 0; r < rows; ++r) {
            LpRow row;
            for (int j = 0; j < n; ++j) {
                if (rng.next_double() < 0.7) {
                    const double a = 2.0 * rng.next_double() - 0.6;
                    if (a != 0.0) row.terms.push_back({j, a});
                }
            }
            row.rhs = 2.0 * rng.next_double() - 0.3;
            if (!row.terms.empty()) p.ub_rows.push_back(std::move(row));
        }
        if (trial % 3 == 0) {
            LpRow eq;
            eq.terms = {{0, 1.0}, {n - 1, 1.0}};
            eq.rhs = rng.next_double();
            p.eq_rows.push_back(std::move(eq));
        }

        bool ref_feasible = false;
        const double ref = brute_force_lp(p, &ref_feasible);
        const LpSolution s = solve_lp(p);
        if (!ref_feasible) {
            CHECK(s.status == LpStatus::Infeasible);
            continue;
        }
        REQUIRE(s.status == LpStatus::Optimal);
        ++optimal_seen;
        CHECK(s.objective_value ==
              Catch::Approx(ref).margin(1e-6 * std::max(1.0, std::fabs(ref))));
        // primal feasibility of the reported point
        for (int j = 0; j < n; ++j) {
            CHECK(s.v[j] >= p.lower[j] - 1e-7);
            CHECK(s.v[j] <= p.upper[j] + 1e-7);
        }
        for (const LpRow& r : p.ub_rows) {
            double lhs = 0.0;
            for (auto& [j, a] : r.terms) lhs += a * s.v[j];
            CHECK(lhs <= r.rhs + 1e-7);
        }
        for (const LpRow& r : p.eq_rows) {
            double lhs = 0.0;
            for (auto& [j, a] : r.terms) lhs += a * s.v[j];
            CHECK(lhs == Catch::Approx(r.rhs).margin(1e-7));
        }
    }
    CHECK(optimal_seen > 100);  // the generator must exercise the optimal path
}

TEST_CASE("degenerate assignment-style LP") {
    // max sum x_j with sum x_j <= 1 repeated; heavily degenerate.
    LpProblem p = box_problem(6, std::vector<double>(6, 1.0));
    for (int r = 0; r < 8; ++r) {
        LpRow row;
        for (int j = 0; j < 6; ++j) row.terms.push_back({j, 1.0});
        row.rhs = 1.0;
        p.ub_rows.push_back(std::move(row));
    }
    const LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective_value == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("mps dump has the standard sections") {
    LpProblem p = box_problem(2, {1.0, 2.0});
    p.eq_rows.push_back({{{0, 1.0}, {1, 1.0}}, 1.0});
    p.ub_rows.push_back({{{0, 1.0}}, 0.7});
    std::ostringstream os;
    write_mps(p, os, "TESTLP");
    const std::string mps = os.str();
    CHECK(mps.find("NAME") == 0);
    CHECK(mps.find("ROWS") != std::string::npos);
    CHECK(mps.find("COLUMNS") != std::string::npos);
    CHECK(mps.find("RHS") != std::string::npos);
    CHECK(mps.find("BOUNDS") != std::string::npos);
    CHECK(mps.find("ENDATA") != std::string::npos);
    CHECK(mps.find(" E  EQ0") != std::string::npos);
    CHECK(mps.find(" L  UB0") != std::string::npos);
}
