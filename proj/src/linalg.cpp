#include "ctx/linalg.hpp"

#include <algorithm>

namespace ctx {

namespace {

// Reduced row echelon form in place. Returns the pivot column per pivot row.
std::vector<std::size_t> rref(RationalMatrix& M) {
    std::vector<std::size_t> pivot_cols;
    std::size_t pr = 0;  // next pivot row
    for (std::size_t c = 0; c < M.cols && pr < M.rows; ++c) {
        std::size_t sel = pr;
        while (sel < M.rows && M.at(sel, c) == 0) ++sel;
        if (sel == M.rows) continue;
        if (sel != pr)
            for (std::size_t j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(pr, j));
        const Rational inv = Rational(1) / M.at(pr, c);
        for (std::size_t j = c; j < M.cols; ++j) M.at(pr, j) *= inv;
        for (std::size_t r = 0; r < M.rows; ++r) {
            if (r == pr || M.at(r, c) == 0) continue;
            const Rational f = M.at(r, c);
            for (std::size_t j = c; j < M.cols; ++j) M.at(r, j) -= f * M.at(pr, j);
        }
        pivot_cols.push_back(c);
        ++pr;
    }
    return pivot_cols;
}

}  // namespace

std::vector<RationalVector> null_space(const RationalMatrix& A) {
    RationalMatrix M = A;
    const auto pivots = rref(M);
    std::vector<bool> is_pivot(A.cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < A.cols; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(A.cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -M.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(RationalMatrix A) { return rref(A).size(); }

SolveResult solve_unique(const RationalMatrix& A, const RationalVector& b) {
    if (b.size() != A.rows) throw std::invalid_argument("solve_unique: rhs size mismatch");
    RationalMatrix M(A.rows, A.cols + 1);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
        M.at(i, A.cols) = b[i];
    }
    const auto pivots = rref(M);
    // A pivot in the augmented column means 0 = 1 somewhere.
    if (!pivots.empty() && pivots.back() == A.cols) return {SolveStatus::Inconsistent, {}};
    if (pivots.size() < A.cols) return {SolveStatus::Underdetermined, {}};
    RationalVector x(A.cols);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = M.at(r, A.cols);
    return {SolveStatus::Unique, std::move(x)};
}

}  // namespace ctx
