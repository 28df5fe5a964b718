#ifndef CTX_LINALG_HPP
#define CTX_LINALG_HPP

#include "ctx/rational.hpp"

#include <optional>

namespace ctx {

/// Exact basis of {x : Ax = 0}. Empty result iff the kernel is trivial.
/// Basis vectors come from the reduced row echelon form, one per free column,
/// in ascending free-column order.
std::vector<RationalVector> null_space(const RationalMatrix& A);

std::size_t rank(RationalMatrix A);

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct SolveResult {
    SolveStatus status;
    RationalVector x;  // meaningful only when status == Unique
};

/// Solves Ax = b exactly. Underdetermined means consistent with a nontrivial
/// kernel; in that case no particular solution is reported.
SolveResult solve_unique(const RationalMatrix& A, const RationalVector& b);

}  // namespace ctx

#endif
