#ifndef CTX_ANALYSIS_HPP
#define CTX_ANALYSIS_HPP

#include "ctx/scenario.hpp"

#include <optional>

namespace ctx {

/// A {0,1}-valued model, stored as its support: a vertex set hitting every
/// edge exactly once.
struct DeterministicModel {
    std::vector<std::size_t> support;  // ascending

    bool operator==(const DeterministicModel&) const = default;
};

ProbabilisticModel deterministic_to_model(const ContextualityScenario& H,
                                          const DeterministicModel& d);

/// All deterministic models, found by backtracking over edges in ascending
/// size order. Canonical (lexicographic support) order; possibly empty.
std::vector<DeterministicModel> enumerate_deterministic(const ContextualityScenario& H);

/// Exact convex decomposition of p into deterministic models.
struct ClassicalDecomposition {
    RationalVector weights;                     // > 0, summing to 1
    std::vector<DeterministicModel> components; // matching weights
};

/// Feasibility LP over the deterministic models; one certificate (the first
/// simplex-feasible basis) or nothing. A scenario without deterministic
/// models has no classical models at all.
std::optional<ClassicalDecomposition> is_classical(const ContextualityScenario& H,
                                                   const ProbabilisticModel& p);

struct UniquenessResult {
    enum class Status { None, Unique, Multiple };
    Status status = Status::None;
    std::optional<ProbabilisticModel> model;  // Unique
    std::optional<std::pair<ProbabilisticModel, ProbabilisticModel>> witnesses;  // Multiple
};

/// Decides |G(H)| = 0, 1 or more. Kernel of the incidence matrix gives the
/// fast path; otherwise per-coordinate min/max LPs settle it, producing two
/// witness models when they disagree.
UniquenessResult has_unique_model(const ContextualityScenario& H);

/// Extremality test: p is extremal iff the subscenario induced by its
/// support has a unique model equal to p there.
struct ExtremalityCertificate {
    bool extremal = false;
    std::vector<std::size_t> support;
    UniquenessResult subscenario;
};

ExtremalityCertificate is_extremal(const ContextualityScenario& H, const ProbabilisticModel& p);

enum class ExtremalMethod { DoubleDescription, Support };

/// Vertices of the model polytope, by either route. Both return the same
/// canonically ordered set: DoubleDescription enumerates {A p = 1, p >= 0}
/// directly; Support backtracks over edge-hitting vertex subsets and keeps
/// those whose induced subscenario has a unique, strictly positive model.
std::vector<ProbabilisticModel> enumerate_extremal(const ContextualityScenario& H,
                                                   ExtremalMethod method);

struct ClassificationReport {
    bool valid = false;
    bool deterministic = false;
    bool classical = false;
    bool extremal = false;
    bool indeterministic = false;
    std::vector<std::size_t> support;
    std::optional<ClassicalDecomposition> decomposition;
};

ClassificationReport classify_model(const ContextualityScenario& H, const ProbabilisticModel& p);

}  // namespace ctx

#endif
