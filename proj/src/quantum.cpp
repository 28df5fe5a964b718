#include "ctx/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ctx {

ValidationReport validate_realization(const ContextualityScenario& H,
                                      const QuantumRealization& R,
                                      const QuantumTolerances& tol) {
    ValidationReport report;
    const std::size_t d = R.dim;

    if (R.rho.rows() != d || R.rho.cols() != d) {
        report.fail("state has wrong shape");
        return report;
    }
    if (R.effects.size() != H.vertex_count()) {
        report.fail("effect count " + std::to_string(R.effects.size()) + " != vertex count " +
                    std::to_string(H.vertex_count()));
        return report;
    }
    for (const CMat& E : R.effects)
        if (E.rows() != d || E.cols() != d) {
            report.fail("effect has wrong shape");
            return report;
        }

    if (double g = hermiticity_gap(R.rho); g > tol.herm * std::max(1.0, R.rho.frobenius()))
        report.fail("state not Hermitian, gap " + std::to_string(g));
    else {
        if (double tr = std::abs(R.rho.trace() - Complex(1.0)); tr > tol.sum)
            report.fail("state trace differs from 1 by " + std::to_string(tr));
        if (double mn = min_eigenvalue(R.rho, tol.herm); mn < -tol.psd)
            report.fail("state has eigenvalue " + std::to_string(mn));
    }

    for (std::size_t v = 0; v < R.effects.size(); ++v) {
        const CMat& E = R.effects[v];
        if (double g = hermiticity_gap(E); g > tol.herm * std::max(1.0, E.frobenius())) {
            report.fail("effect \"" + H.vertices[v] + "\" not Hermitian, gap " +
                        std::to_string(g));
            continue;
        }
        if (double mn = min_eigenvalue(E, tol.herm); mn < -tol.psd)
            report.fail("effect \"" + H.vertices[v] + "\" has eigenvalue " + std::to_string(mn));
    }
    if (!report.ok) return report;

    for (std::size_t i = 0; i < H.edges.size(); ++i) {
        CMat sum(d, d);
        for (auto v : H.edges[i]) sum += R.effects[v];
        sum -= CMat::identity(d);
        if (double r = sum.frobenius(); r > tol.sum)
            report.fail("edge " + std::to_string(i) + " completeness residual " +
                        std::to_string(r));
    }
    return report;
}

std::vector<double> realized_model(const ContextualityScenario& H, const QuantumRealization& R) {
    std::vector<double> p;
    p.reserve(H.vertex_count());
    for (std::size_t v = 0; v < H.vertex_count(); ++v)
        p.push_back((R.rho * R.effects[v]).trace().real());
    return p;
}

std::vector<double> model_to_doubles(const ProbabilisticModel& p) {
    std::vector<double> out;
    out.reserve(p.values.size());
    for (const auto& q : p.values)
        out.push_back(static_cast<double>(numerator(q)) / static_cast<double>(denominator(q)));
    return out;
}

QuantumRealization make_trivial_realization(const ContextualityScenario& H,
                                            const ProbabilisticModel& p, std::size_t dim,
                                            std::size_t rank,
                                            const std::vector<double>& spectrum,
                                            const std::vector<CMat>& lower_blocks) {
    if (rank < 1 || rank > dim)
        throw std::invalid_argument("make_trivial_realization: need 1 <= rank <= dim");
    const ValidationReport pok = validate_model(H, p);
    if (!pok.ok)
        throw std::invalid_argument("make_trivial_realization: invalid model: " +
                                    pok.problems.front());

    std::vector<double> lam = spectrum;
    if (lam.empty()) lam.assign(rank, 1.0 / static_cast<double>(rank));
    if (lam.size() != rank)
        throw std::invalid_argument("make_trivial_realization: spectrum length != rank");
    double total = 0;
    for (double l : lam) {
        if (l <= 0) throw std::invalid_argument("make_trivial_realization: spectrum must be > 0");
        total += l;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("make_trivial_realization: spectrum must sum to 1");

    if (!lower_blocks.empty() && lower_blocks.size() != H.vertex_count())
        throw std::invalid_argument("make_trivial_realization: lower block count mismatch");

    const std::size_t free_dim = dim - rank;
    const std::vector<double> pv = model_to_doubles(p);

    QuantumRealization R;
    R.dim = dim;
    R.rho = CMat(dim, dim);
    for (std::size_t i = 0; i < rank; ++i) R.rho(i, i) = lam[i];

    for (std::size_t v = 0; v < H.vertex_count(); ++v) {
        CMat upper = CMat::identity(rank) * Complex(pv[v]);
        CMat lower = lower_blocks.empty() ? CMat::identity(free_dim) * Complex(pv[v])
                                          : lower_blocks[v];
        if (lower.rows() != free_dim || lower.cols() != free_dim)
            throw std::invalid_argument("make_trivial_realization: lower block has wrong shape");
        R.effects.push_back(direct_sum(upper, lower));
    }

    const ValidationReport ok = validate_realization(H, R);
    if (!ok.ok)
        throw std::invalid_argument("make_trivial_realization: inconsistent lower blocks: " +
                                    ok.problems.front());
    return R;
}

namespace {

TrivialityCertificate certify_impl(const ContextualityScenario& H,
                                   const std::vector<double>& target,
                                   const QuantumRealization& R, double tau_cert,
                                   double tau_rank, std::size_t forced_rank, bool use_forced) {
    if (target.size() != H.vertex_count())
        throw std::invalid_argument("certify_trivial: target length != vertex count");

    const std::size_t d = R.dim;
    const EigResult eig = hermitian_eig(R.rho);

    // Support eigenvectors first, in descending eigenvalue order.
    const double lam_max = eig.values.empty() ? 0.0 : eig.values.back();
    const double cut = tau_rank * std::max(lam_max, 0.0);

    TrivialityCertificate cert;
    cert.tolerance = tau_cert;
    cert.basis = CMat(d, d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i) cert.basis(i, k) = eig.vectors(i, d - 1 - k);

    if (use_forced) {
        if (forced_rank < 1 || forced_rank > d)
            throw std::invalid_argument("certify_trivial: forced rank out of range");
        cert.rank = forced_rank;
    } else {
        std::size_t r = 0;
        while (r < d && eig.values[d - 1 - r] > cut) ++r;
        cert.rank = r;
    }
    if (cert.rank < d) {
        const double smallest_kept = cert.rank > 0 ? eig.values[d - cert.rank] : 0.0;
        const double largest_dropped = std::abs(eig.values[d - 1 - cert.rank]);
        cert.borderline_rank =
            largest_dropped > 0 && smallest_kept < 100.0 * largest_dropped;
    }

    const std::size_t r = cert.rank;
    const CMat U_adj = cert.basis.adjoint();
    for (std::size_t v = 0; v < H.vertex_count(); ++v) {
        const CMat E = U_adj * R.effects[v] * cert.basis;
        CMat dev = E.block(0, 0, r, r) - CMat::identity(r) * Complex(target[v]);
        const double sdev = dev.frobenius();
        const double odev = r < d ? E.block(0, r, r, d - r).frobenius() : 0.0;
        cert.support_dev.push_back(sdev);
        cert.offdiag_dev.push_back(odev);
        cert.zero_vertex.push_back(target[v] == 0.0);
        cert.max_residual = std::max({cert.max_residual, sdev, odev});
    }
    cert.trivial = cert.max_residual <= tau_cert;
    return cert;
}

}  // namespace

TrivialityCertificate certify_trivial(const ContextualityScenario& H,
                                      const std::vector<double>& target,
                                      const QuantumRealization& R, double tau_cert,
                                      double tau_rank) {
    return certify_impl(H, target, R, tau_cert, tau_rank, 0, false);
}

TrivialityCertificate certify_trivial(const ContextualityScenario& H,
                                      const ProbabilisticModel& target,
                                      const QuantumRealization& R, double tau_cert,
                                      double tau_rank) {
    return certify_impl(H, model_to_doubles(target), R, tau_cert, tau_rank, 0, false);
}

TrivialityCertificate certify_trivial_with_rank(const ContextualityScenario& H,
                                                const std::vector<double>& target,
                                                const QuantumRealization& R, std::size_t rank,
                                                double tau_cert) {
    return certify_impl(H, target, R, tau_cert, 1e-9, rank, true);
}

ProjectivityReport is_projective_realization(const QuantumRealization& R, double tau) {
    ProjectivityReport rep;
    for (const CMat& E : R.effects) {
        const double res = (E * E - E).frobenius();
        rep.residuals.push_back(res);
        rep.projective.push_back(res <= tau);
        if (res > tau) rep.all = false;
    }
    return rep;
}

ZeroTraceReport check_zero_trace_structure(const CMat& rho, const CMat& E, double tau,
                                           double tau_rank) {
    ZeroTraceReport rep;
    rep.trace_value = (rho * E).trace().real();
    rep.applicable = std::abs(rep.trace_value) <= tau;
    if (!rep.applicable) return rep;

    const std::size_t d = rho.rows();
    const EigResult eig = hermitian_eig(rho);
    const double lam_max = eig.values.empty() ? 0.0 : eig.values.back();
    const double cut = tau_rank * std::max(lam_max, 0.0);

    // Support columns first (descending), as in the triviality certificate.
    CMat U(d, d);
    std::size_t col = 0;
    double lam_min_support = 0.0;
    for (std::size_t k = d; k-- > 0;)
        if (eig.values[k] > cut) {
            lam_min_support = eig.values[k];
            for (std::size_t i = 0; i < d; ++i) U(i, col) = eig.vectors(i, k);
            ++col;
        }
    const std::size_t r = col;
    for (std::size_t k = 0; k < d; ++k)
        if (eig.values[k] <= cut) {
            for (std::size_t i = 0; i < d; ++i) U(i, col) = eig.vectors(i, k);
            ++col;
        }

    rep.product_norm = (rho * E).frobenius();
    const CMat Eb = U.adjoint() * E * U;
    rep.support_block = r > 0 ? Eb.block(0, 0, r, r).frobenius() : 0.0;
    rep.cross_block = (r > 0 && r < d) ? Eb.block(0, r, r, d - r).frobenius() : 0.0;

    const double kappa = lam_min_support > 0 ? 1.0 / lam_min_support : 1.0;
    rep.bound = tau * kappa;
    rep.holds = rep.product_norm <= rep.bound && rep.support_block <= rep.bound &&
                rep.cross_block <= rep.bound;
    return rep;
}

bool trivial_effect_probe(const CMat& E, double alpha, double tau) {
    if (!E.square()) throw std::invalid_argument("trivial_effect_probe: square matrix expected");
    const std::size_t d = E.rows();
    for (std::size_t i = 0; i < d; ++i)
        if (std::abs(E(i, i).real() - alpha) > tau) return false;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            const double mean = 0.5 * (E(i, i).real() + E(j, j).real());
            // (|i> + |j>)/sqrt(2) and (|i> + i|j>)/sqrt(2)
            if (std::abs(mean + E(i, j).real() - alpha) > tau) return false;
            if (std::abs(mean - E(i, j).imag() - alpha) > tau) return false;
        }
    return true;
}

}  // namespace ctx
