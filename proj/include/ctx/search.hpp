#ifndef CTX_SEARCH_HPP
#define CTX_SEARCH_HPP

#include "ctx/quantum.hpp"

#include <cstdint>
#include <memory>

namespace ctx {

enum class StateChoice { MaximallyMixed, Spectrum, Matrix };

struct SearchConfig {
    std::size_t dim = 2;
    StateChoice state = StateChoice::MaximallyMixed;
    std::vector<double> spectrum;  // StateChoice::Spectrum: d eigenvalues, sum 1
    CMat rho;                      // StateChoice::Matrix
    int max_iterations = 20000;
    double tolerance = 1e-8;
    std::uint64_t seed = 0;
};

struct SearchResult {
    QuantumRealization realization;
    int iterations = 0;
    double affine_residual = 0.0;  // max edge-completeness / Born violation
    double psd_residual = 0.0;     // most negative effect eigenvalue magnitude
    bool converged = false;
    std::vector<double> affine_history;  // distance to the affine set, per cycle
};

/// Dykstra alternating projections between the affine set of effect tuples
/// (per-edge completeness plus Born-rule equalities for the fixed state) and
/// the product of PSD cones. The state is fixed per run, never optimized.
///
/// The affine projector is precomputed from the normal equations on the real
/// parametrization of Hermitian tuples (dimension |V| d^2), so one instance
/// can be reused across seeds cheaply.
class RealizationSearch {
public:
    RealizationSearch(const ContextualityScenario& H, const ProbabilisticModel& p,
                      const SearchConfig& config);
    ~RealizationSearch();
    RealizationSearch(RealizationSearch&&) noexcept;
    RealizationSearch& operator=(RealizationSearch&&) noexcept;

    SearchResult run(std::uint64_t seed) const;
    const CMat& state() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper. Non-convergence is reported in the result,
/// not thrown.
SearchResult dykstra_find_realization(const ContextualityScenario& H,
                                      const ProbabilisticModel& p, const SearchConfig& config);

}  // namespace ctx

#endif
