#ifndef CTX_DOUBLE_DESCRIPTION_HPP
#define CTX_DOUBLE_DESCRIPTION_HPP

#include "ctx/rational.hpp"

namespace ctx {

/// All vertices of {x >= 0 : equalities . x = rhs}, enumerated exactly by the
/// double description method on the homogenization cone. Constraints are
/// processed in input order; candidate ray pairs are screened by a zero-set
/// cardinality bound and decided by an algebraic rank test. Output is sorted
/// lexicographically. Returns the empty set for an empty polytope; throws
/// std::domain_error if the polyhedron turns out to be unbounded.
std::vector<RationalVector> dd_vertices(const RationalMatrix& equalities,
                                        const RationalVector& rhs);

}  // namespace ctx

#endif
