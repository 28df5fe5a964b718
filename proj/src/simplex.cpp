#include "ctx/simplex.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ctx {

void LinearProgram::check_shape() const {
    const std::size_t n = objective.size();
    if (eq.cols != n && !(eq.rows == 0 && eq.cols == 0))
        throw std::invalid_argument("LinearProgram: matrix width != variable count");
    if (rhs.size() != eq.rows)
        throw std::invalid_argument("LinearProgram: rhs length != equality row count");
    if (!nonneg.empty() && nonneg.size() != n)
        throw std::invalid_argument("LinearProgram: nonneg flag count != variable count");
}

namespace {

// Dense simplex tableau. Row layout: m constraint rows of width ncols+1
// (last entry is the rhs), kept in canonical form with respect to `basis`.
struct Tableau {
    std::vector<RationalVector> row;
    RationalVector cost;  // reduced-cost row, same width; rhs slot = -objective
    std::vector<std::size_t> basis;
    std::size_t width = 0;

    std::size_t rhs_col() const { return width - 1; }

    void pivot(std::size_t r, std::size_t c) {
        const Rational inv = Rational(1) / row[r][c];
        for (auto& v : row[r]) v *= inv;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i == r || row[i][c] == 0) continue;
            const Rational f = row[i][c];
            for (std::size_t j = 0; j < width; ++j) row[i][j] -= f * row[r][j];
        }
        if (cost[c] != 0) {
            const Rational f = cost[c];
            for (std::size_t j = 0; j < width; ++j) cost[j] -= f * row[r][j];
        }
        basis[r] = c;
    }

    // Bland: entering = lowest column index with negative reduced cost;
    // leaving = min ratio, ties broken by lowest basic variable index.
    // Returns false when optimal, throws Unbounded via status out-param.
    enum class Step { Optimal, Pivoted, Unbounded };
    Step step(std::size_t usable_cols) {
        std::size_t enter = usable_cols;
        for (std::size_t j = 0; j < usable_cols; ++j)
            if (cost[j] < 0) { enter = j; break; }
        if (enter == usable_cols) return Step::Optimal;

        std::size_t leave = row.size();
        Rational best_ratio;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i][enter] <= 0) continue;
            Rational ratio = row[i][rhs_col()] / row[i][enter];
            if (leave == row.size() || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == row.size()) return Step::Unbounded;
        pivot(leave, enter);
        return Step::Pivoted;
    }
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp, LpSense sense) {
    lp.check_shape();
    const std::size_t n = lp.objective.size();
    const std::size_t m = lp.eq.rows;

    auto is_nonneg = [&](std::size_t j) { return lp.nonneg.empty() || lp.nonneg[j]; };

    // Split free variables x = u - w so every tableau variable is >= 0.
    // col_var[c] = (original var, sign).
    std::vector<std::pair<std::size_t, int>> col_var;
    for (std::size_t j = 0; j < n; ++j) {
        col_var.emplace_back(j, +1);
        if (!is_nonneg(j)) col_var.emplace_back(j, -1);
    }
    const std::size_t nc = col_var.size();

    // Minimize internally.
    RationalVector obj(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        obj[c] = lp.objective[col_var[c].first] * col_var[c].second;
        if (sense == LpSense::Max) obj[c] = -obj[c];
    }

    Tableau t;
    t.width = nc + m + 1;  // structural + artificial + rhs
    t.row.assign(m, RationalVector(t.width, Rational(0)));
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = lp.rhs[i] < 0;
        for (std::size_t c = 0; c < nc; ++c) {
            Rational a = lp.eq.at(i, col_var[c].first) * col_var[c].second;
            t.row[i][c] = flip ? -a : a;
        }
        t.row[i][nc + i] = 1;
        t.row[i][t.rhs_col()] = flip ? -lp.rhs[i] : lp.rhs[i];
        t.basis[i] = nc + i;
    }

    // Phase 1: drive the artificial variables to zero.
    t.cost.assign(t.width, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < t.width; ++j) t.cost[j] -= t.row[i][j];
    for (std::size_t i = 0; i < m; ++i) t.cost[nc + i] = 0;

    while (t.step(nc) == Tableau::Step::Pivoted) {}
    if (t.cost[t.rhs_col()] != 0) return {LpStatus::Infeasible, {}, {}};

    // Pivot leftover artificials out of the basis; a row where no structural
    // column survives is redundant and gets dropped.
    for (std::size_t i = 0; i < t.row.size();) {
        if (t.basis[i] < nc) { ++i; continue; }
        std::size_t c = 0;
        while (c < nc && t.row[i][c] == 0) ++c;
        if (c < nc) {
            t.pivot(i, c);
            ++i;
        } else {
            t.row.erase(t.row.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    // Phase 2 with the real objective, reduced against the current basis.
    t.cost.assign(t.width, Rational(0));
    for (std::size_t c = 0; c < nc; ++c) t.cost[c] = obj[c];
    for (std::size_t i = 0; i < t.row.size(); ++i) {
        const Rational cb = obj[t.basis[i]];
        if (cb == 0) continue;
        for (std::size_t j = 0; j < t.width; ++j) t.cost[j] -= cb * t.row[i][j];
    }

    Tableau::Step s;
    while ((s = t.step(nc)) == Tableau::Step::Pivoted) {}
    if (s == Tableau::Step::Unbounded) return {LpStatus::Unbounded, {}, {}};

    RationalVector point(n, Rational(0));
    for (std::size_t i = 0; i < t.row.size(); ++i) {
        const auto [var, sign] = col_var[t.basis[i]];
        point[var] += Rational(sign) * t.row[i][t.rhs_col()];
    }
    Rational value = 0;
    for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * point[j];
    return {LpStatus::Optimal, value, std::move(point)};
}

}  // namespace ctx
