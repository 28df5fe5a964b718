#ifndef CTX_SIMPLEX_HPP
#define CTX_SIMPLEX_HPP

#include "ctx/rational.hpp"

namespace ctx {

/// Equality-form program: optimize objective . x subject to eq x = rhs,
/// with x[j] >= 0 wherever nonneg[j] is set (free otherwise).
struct LinearProgram {
    RationalVector objective;
    RationalMatrix eq;
    RationalVector rhs;
    std::vector<bool> nonneg;  // empty means "all nonnegative"

    void check_shape() const;
};

enum class LpSense { Min, Max };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    RationalVector point;
};

/// Exact two-phase simplex with Bland's rule (lowest-index pivoting), so it
/// terminates on degenerate bases and is fully deterministic.
LpResult lp_solve(const LinearProgram& lp, LpSense sense);

}  // namespace ctx

#endif
