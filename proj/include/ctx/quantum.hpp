#ifndef CTX_QUANTUM_HPP
#define CTX_QUANTUM_HPP

#include "ctx/cmatrix.hpp"
#include "ctx/scenario.hpp"

#include <optional>

namespace ctx {

struct QuantumTolerances {
    double herm = 1e-9;  // Hermiticity gap
    double psd = 1e-9;   // admissible negative eigenvalue magnitude
    double sum = 1e-9;   // completeness / trace-one / isometry residuals
    double rank = 1e-9;  // rank cut, relative to the largest eigenvalue
    double cert = 1e-6;  // triviality certificate residual bound
};

/// State plus one effect per vertex (in scenario vertex order); every edge
/// must sum to the identity.
struct QuantumRealization {
    std::size_t dim = 0;
    CMat rho;
    std::vector<CMat> effects;
};

/// Hermiticity, positive semidefiniteness, per-edge completeness, and the
/// unit-trace state, each reported with its residual.
ValidationReport validate_realization(const ContextualityScenario& H,
                                      const QuantumRealization& R,
                                      const QuantumTolerances& tol = {});

/// Born-rule probabilities tr(rho E_v), in vertex order.
std::vector<double> realized_model(const ContextualityScenario& H, const QuantumRealization& R);

std::vector<double> model_to_doubles(const ProbabilisticModel& p);

/// Block realization rho = diag(spectrum) (+) 0, E_v = p(v) I_r (+) L_v.
/// The spectrum defaults to uniform weight on the support; the lower blocks
/// default to p(v) I_{d-r}. Caller-supplied lower blocks must themselves be
/// PSD and edge-complete on dimension d-r; the result is re-validated and
/// rejected otherwise.
QuantumRealization make_trivial_realization(const ContextualityScenario& H,
                                            const ProbabilisticModel& p, std::size_t dim,
                                            std::size_t rank,
                                            const std::vector<double>& spectrum = {},
                                            const std::vector<CMat>& lower_blocks = {});

/// Decomposition of every effect in the eigenbasis of rho: the support block
/// must equal p(v) I_r and the off-diagonal block must vanish. Vertices with
/// p(v) = 0 additionally require a vanishing support block, which the same
/// residual already measures; they are flagged for reporting.
struct TrivialityCertificate {
    std::size_t rank = 0;
    CMat basis;  // columns: support eigenvectors (descending eigenvalue), then kernel
    std::vector<double> support_dev;  // ||(E_v)_11 - p(v) I_r||_F
    std::vector<double> offdiag_dev;  // ||(E_v)_12||_F
    std::vector<bool> zero_vertex;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool trivial = false;
    // Set when the spectrum has no clean gap at the rank cut (within a
    // factor of 100), so rank deserves a second look rather than trust.
    bool borderline_rank = false;
};

TrivialityCertificate certify_trivial(const ContextualityScenario& H,
                                      const std::vector<double>& target,
                                      const QuantumRealization& R, double tau_cert = 1e-6,
                                      double tau_rank = 1e-9);

TrivialityCertificate certify_trivial(const ContextualityScenario& H,
                                      const ProbabilisticModel& target,
                                      const QuantumRealization& R, double tau_cert = 1e-6,
                                      double tau_rank = 1e-9);

/// Same, but with the support rank forced by the caller (the way out when
/// the certificate flags a borderline spectrum).
TrivialityCertificate certify_trivial_with_rank(const ContextualityScenario& H,
                                                const std::vector<double>& target,
                                                const QuantumRealization& R, std::size_t rank,
                                                double tau_cert = 1e-6);

struct ProjectivityReport {
    std::vector<double> residuals;  // ||E_v^2 - E_v||_F
    std::vector<bool> projective;
    bool all = true;
};

ProjectivityReport is_projective_realization(const QuantumRealization& R, double tau = 1e-9);

/// If tr(rho E) vanishes (within tau) for PSD rho and E, then rho E = 0 and,
/// in the eigenbasis of rho, the support row of E vanishes entirely. The
/// numerical bound scales with the conditioning 1/lambda_min of the support.
struct ZeroTraceReport {
    bool applicable = false;  // |tr(rho E)| <= tau
    double trace_value = 0.0;
    double product_norm = 0.0;  // ||rho E||_F
    double support_block = 0.0;  // ||E_11||_F
    double cross_block = 0.0;    // ||E_12||_F
    double bound = 0.0;          // tau * kappa
    bool holds = true;
};

ZeroTraceReport check_zero_trace_structure(const CMat& rho, const CMat& E, double tau = 1e-9,
                                           double tau_rank = 1e-9);

/// Probes tr(rho E) = alpha on the d basis states plus the d(d-1) real and
/// imaginary pairwise superpositions. All probes within tau iff E is within
/// d*tau of alpha*I in Frobenius norm.
bool trivial_effect_probe(const CMat& E, double alpha, double tau);

}  // namespace ctx

#endif
