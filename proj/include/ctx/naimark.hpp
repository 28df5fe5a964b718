#ifndef CTX_NAIMARK_HPP
#define CTX_NAIMARK_HPP

#include "ctx/quantum.hpp"

namespace ctx {

/// Canonical dilation of an n-outcome POVM on dimension d into n*d: the
/// isometry stacks the effect square roots, and each outcome projector picks
/// out one d-block. V^dagger V = I and V^dagger Pi_a V = E_a.
struct NaimarkDilation {
    CMat isometry;                 // (n*d) x d
    std::vector<CMat> projectors;  // n of them, (n*d) x (n*d)
};

/// Throws std::invalid_argument if the effects do not sum to the identity
/// within sum_tol or fail PSD within psd_tol.
NaimarkDilation naimark_dilate(const std::vector<CMat>& effects, double sum_tol = 1e-9,
                               double psd_tol = 1e-9);

/// Per-edge canonical dilations of a realization, compared on shared
/// vertices after zero-padding all dilation spaces to a common dimension.
/// outcome_order fixes, per edge, which outcome block each vertex occupies;
/// the mismatch magnitudes depend on that choice, so it is caller input.
/// A disagreement illustrates the cross-edge obstruction; it proves nothing
/// by itself.
struct DilationMismatch {
    std::size_t vertex = 0;
    std::size_t edge_a = 0;
    std::size_t edge_b = 0;
    double mismatch = 0.0;  // ||Pi_v^(a) - Pi_v^(b)||_F
    bool consistent = false;
};

struct DilationConsistencyReport {
    std::size_t common_dim = 0;
    std::vector<DilationMismatch> shared;  // one entry per shared vertex and edge pair
    bool all_consistent = true;
};

/// Vertices of each edge in scenario vertex order; the default convention.
std::vector<std::vector<std::size_t>> canonical_outcome_order(const ContextualityScenario& H);

DilationConsistencyReport check_dilation_consistency(
    const ContextualityScenario& H, const QuantumRealization& R,
    const std::vector<std::vector<std::size_t>>& outcome_order, double tol = 1e-9);

}  // namespace ctx

#endif
