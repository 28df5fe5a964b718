#include "ctx/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ctx {

namespace {

// Orthonormal basis of the Hermitian d x d matrices: the d diagonal units
// followed, for each i < j, by the sqrt(2)-scaled real and imaginary pair
// units. Frobenius inner products become Euclidean dot products.
struct HermCoords {
    std::size_t d = 0;

    std::size_t size() const { return d * d; }

    void vec(const CMat& E, double* out) const {
        std::size_t k = 0;
        for (std::size_t i = 0; i < d; ++i) out[k++] = E(i, i).real();
        static const double s2 = std::sqrt(2.0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) {
                out[k++] = s2 * E(i, j).real();
                out[k++] = s2 * E(i, j).imag();
            }
    }

    CMat unvec(const double* in) const {
        CMat E(d, d);
        std::size_t k = 0;
        for (std::size_t i = 0; i < d; ++i) E(i, i) = in[k++];
        static const double inv_s2 = 1.0 / std::sqrt(2.0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) {
                const double re = in[k++] * inv_s2;
                const double im = in[k++] * inv_s2;
                E(i, j) = Complex(re, im);
                E(j, i) = Complex(re, -im);
            }
        return E;
    }
};

CMat state_from_config(const SearchConfig& cfg) {
    const std::size_t d = cfg.dim;
    if (d < 1) throw std::invalid_argument("SearchConfig: dimension must be >= 1");
    switch (cfg.state) {
        case StateChoice::MaximallyMixed:
            return CMat::identity(d) * Complex(1.0 / static_cast<double>(d));
        case StateChoice::Spectrum: {
            if (cfg.spectrum.size() != d)
                throw std::invalid_argument("SearchConfig: spectrum length != dim");
            double sum = 0;
            for (double l : cfg.spectrum) {
                if (l < 0) throw std::invalid_argument("SearchConfig: negative spectrum entry");
                sum += l;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw std::invalid_argument("SearchConfig: spectrum must sum to 1");
            return CMat::diagonal(cfg.spectrum);
        }
        case StateChoice::Matrix: {
            if (cfg.rho.rows() != d || cfg.rho.cols() != d)
                throw std::invalid_argument("SearchConfig: rho has wrong shape");
            if (!is_hermitian(cfg.rho, 1e-9))
                throw std::invalid_argument("SearchConfig: rho not Hermitian");
            if (min_eigenvalue(cfg.rho) < -1e-9)
                throw std::invalid_argument("SearchConfig: rho not PSD");
            if (std::abs(cfg.rho.trace() - Complex(1.0)) > 1e-9)
                throw std::invalid_argument("SearchConfig: rho trace != 1");
            return cfg.rho;
        }
    }
    throw std::logic_error("SearchConfig: unknown state choice");
}

}  // namespace

struct RealizationSearch::Impl {
    ContextualityScenario H;
    SearchConfig cfg;
    CMat rho;
    HermCoords coords;

    std::size_t nvar = 0;  // |V| d^2
    std::size_t nrow = 0;  // |E| d^2 + |V|

    std::vector<double> A;     // nrow x nvar
    std::vector<double> b;     // nrow
    std::vector<double> P;     // nvar x nvar, projector onto the homogeneous part
    std::vector<double> shift; // particular solution offset: proj(x) = P x + shift

    // Row bookkeeping for the constraint gauge: rows [edge*dd, edge*dd+dd)
    // per edge, then one Born row per vertex.
    std::size_t dd = 0;

    void matvec_A(const double* x, double* out) const {
        for (std::size_t i = 0; i < nrow; ++i) {
            const double* row = &A[i * nvar];
            double acc = 0;
            for (std::size_t j = 0; j < nvar; ++j) acc += row[j] * x[j];
            out[i] = acc;
        }
    }

    void apply_projection(const double* x, double* out) const {
        for (std::size_t i = 0; i < nvar; ++i) {
            const double* row = &P[i * nvar];
            double acc = shift[i];
            for (std::size_t j = 0; j < nvar; ++j) acc += row[j] * x[j];
            out[i] = acc;
        }
    }

    // Max per-edge completeness Frobenius residual / Born deviation at x.
    double constraint_gauge(const double* x, std::vector<double>& scratch) const {
        matvec_A(x, scratch.data());
        for (std::size_t i = 0; i < nrow; ++i) scratch[i] -= b[i];
        double worst = 0;
        for (std::size_t e = 0; e < H.edge_count(); ++e) {
            double s = 0;
            for (std::size_t k = 0; k < dd; ++k) {
                const double r = scratch[e * dd + k];
                s += r * r;
            }
            worst = std::max(worst, std::sqrt(s));
        }
        for (std::size_t v = 0; v < H.vertex_count(); ++v)
            worst = std::max(worst, std::abs(scratch[H.edge_count() * dd + v]));
        return worst;
    }
};

RealizationSearch::RealizationSearch(const ContextualityScenario& H,
                                     const ProbabilisticModel& p, const SearchConfig& config) {
    if (config.tolerance <= 0) throw std::invalid_argument("SearchConfig: tolerance must be > 0");
    const ValidationReport pok = validate_model(H, p);
    if (!pok.ok)
        throw std::invalid_argument("RealizationSearch: invalid target model: " +
                                    pok.problems.front());

    impl_ = std::make_unique<Impl>();
    Impl& im = *impl_;
    im.H = H;
    im.cfg = config;
    im.rho = state_from_config(config);
    im.coords.d = config.dim;

    const std::size_t d = config.dim;
    const std::size_t dd = d * d;
    im.dd = dd;
    const std::size_t nv = H.vertex_count();
    im.nvar = nv * dd;
    im.nrow = H.edge_count() * dd + nv;

    im.A.assign(im.nrow * im.nvar, 0.0);
    im.b.assign(im.nrow, 0.0);

    std::vector<double> ident_vec(dd), rho_vec(dd);
    im.coords.vec(CMat::identity(d), ident_vec.data());
    im.coords.vec(im.rho, rho_vec.data());

    for (std::size_t e = 0; e < H.edge_count(); ++e)
        for (std::size_t k = 0; k < dd; ++k) {
            const std::size_t row = e * dd + k;
            for (auto v : H.edges[e]) im.A[row * im.nvar + v * dd + k] = 1.0;
            im.b[row] = ident_vec[k];
        }
    const std::vector<double> target = model_to_doubles(p);
    for (std::size_t v = 0; v < nv; ++v) {
        const std::size_t row = H.edge_count() * dd + v;
        for (std::size_t k = 0; k < dd; ++k) im.A[row * im.nvar + v * dd + k] = rho_vec[k];
        im.b[row] = target[v];
    }

    // Least-squares projector onto {x : Ax = b} through the normal equations:
    // P = I - A^T G^+ A and shift = A^T G^+ b, with G = A A^T pseudo-inverted
    // through its eigendecomposition (the rows carry exact structural
    // dependencies, so G is genuinely singular).
    const std::size_t m = im.nrow;
    CMat G(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            double acc = 0;
            const double* ri = &im.A[i * im.nvar];
            const double* rj = &im.A[j * im.nvar];
            for (std::size_t k = 0; k < im.nvar; ++k) acc += ri[k] * rj[k];
            G(i, j) = acc;
            G(j, i) = acc;
        }
    const EigResult eig = hermitian_eig(G);
    const double lam_max = eig.values.empty() ? 0.0 : eig.values.back();
    const double cut = 1e-10 * std::max(lam_max, 1e-300);

    std::vector<double> Gp(m * m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        if (eig.values[k] <= cut) continue;
        const double inv = 1.0 / eig.values[k];
        for (std::size_t i = 0; i < m; ++i) {
            const double uik = eig.vectors(i, k).real() * inv;
            if (uik == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) Gp[i * m + j] += uik * eig.vectors(j, k).real();
        }
    }

    // B = G^+ A (m x nvar), then P = I - A^T B, shift = A^T (G^+ b).
    std::vector<double> B(m * im.nvar, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            const double g = Gp[i * m + k];
            if (g == 0.0) continue;
            const double* row = &im.A[k * im.nvar];
            double* out = &B[i * im.nvar];
            for (std::size_t j = 0; j < im.nvar; ++j) out[j] += g * row[j];
        }

    im.P.assign(im.nvar * im.nvar, 0.0);
    for (std::size_t i = 0; i < im.nvar; ++i) im.P[i * im.nvar + i] = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double* arow = &im.A[k * im.nvar];
        const double* brow = &B[k * im.nvar];
        for (std::size_t i = 0; i < im.nvar; ++i) {
            const double a = arow[i];
            if (a == 0.0) continue;
            double* prow = &im.P[i * im.nvar];
            for (std::size_t j = 0; j < im.nvar; ++j) prow[j] -= a * brow[j];
        }
    }
    im.shift.assign(im.nvar, 0.0);
    std::vector<double> gb(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0;
        for (std::size_t k = 0; k < m; ++k) acc += Gp[i * m + k] * im.b[k];
        gb[i] = acc;
    }
    for (std::size_t k = 0; k < m; ++k) {
        const double g = gb[k];
        if (g == 0.0) continue;
        const double* arow = &im.A[k * im.nvar];
        for (std::size_t j = 0; j < im.nvar; ++j) im.shift[j] += g * arow[j];
    }
}

RealizationSearch::~RealizationSearch() = default;
RealizationSearch::RealizationSearch(RealizationSearch&&) noexcept = default;
RealizationSearch& RealizationSearch::operator=(RealizationSearch&&) noexcept = default;

const CMat& RealizationSearch::state() const { return impl_->rho; }

SearchResult RealizationSearch::run(std::uint64_t seed) const {
    const Impl& im = *impl_;
    const std::size_t d = im.cfg.dim;
    const std::size_t dd = im.dd;
    const std::size_t nv = im.H.vertex_count();
    const std::size_t n = im.nvar;

    // Random Hermitian start, entries of magnitude at most 1.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> mag(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::vector<double> x(n);
    for (std::size_t v = 0; v < nv; ++v) {
        CMat E(d, d);
        for (std::size_t i = 0; i < d; ++i) E(i, i) = unit(rng);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) {
                const double m = mag(rng), ph = phase(rng);
                E(i, j) = Complex(m * std::cos(ph), m * std::sin(ph));
                E(j, i) = std::conj(E(i, j));
            }
        im.coords.vec(E, &x[v * dd]);
    }

    std::vector<double> p_corr(n, 0.0), q_corr(n, 0.0);
    std::vector<double> y(n), z(n), tmp(n), rowscratch(im.nrow);

    SearchResult res;
    res.affine_history.reserve(static_cast<std::size_t>(im.cfg.max_iterations));

    auto project_psd_blocks = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (std::size_t v = 0; v < nv; ++v) {
            CMat E = im.coords.unvec(&in[v * dd]);
            const EigResult e = hermitian_eig(E);
            CMat proj(d, d);
            for (std::size_t k = 0; k < d; ++k) {
                if (e.values[k] <= 0) continue;
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j)
                        proj(i, j) +=
                            e.values[k] * e.vectors(i, k) * std::conj(e.vectors(j, k));
            }
            im.coords.vec(proj, &out[v * dd]);
        }
    };

    int iter = 0;
    for (; iter < im.cfg.max_iterations; ++iter) {
        // Affine projection with its Dykstra correction.
        for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + p_corr[j];
        im.apply_projection(tmp.data(), y.data());
        for (std::size_t j = 0; j < n; ++j) p_corr[j] = tmp[j] - y[j];

        // PSD projection with its correction.
        for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + q_corr[j];
        project_psd_blocks(tmp, z);
        for (std::size_t j = 0; j < n; ++j) q_corr[j] = tmp[j] - z[j];

        x = z;

        // Residuals: constraint gauge at the PSD point, PSD gap at the
        // affine point, plus the true distance to the affine set.
        res.affine_residual = im.constraint_gauge(z.data(), rowscratch);
        double psd_gap = 0;
        for (std::size_t v = 0; v < nv; ++v) {
            const CMat E = im.coords.unvec(&y[v * dd]);
            const EigResult e = hermitian_eig(E);
            if (!e.values.empty()) psd_gap = std::max(psd_gap, -e.values.front());
        }
        res.psd_residual = psd_gap;

        im.apply_projection(z.data(), tmp.data());
        double dist2 = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double dj = tmp[j] - z[j];
            dist2 += dj * dj;
        }
        res.affine_history.push_back(std::sqrt(dist2));

        if (res.affine_residual <= im.cfg.tolerance && res.psd_residual <= im.cfg.tolerance) {
            ++iter;
            res.converged = true;
            break;
        }
    }
    res.iterations = iter;

    res.realization.dim = d;
    res.realization.rho = im.rho;
    res.realization.effects.reserve(nv);
    for (std::size_t v = 0; v < nv; ++v) res.realization.effects.push_back(im.coords.unvec(&z[v * dd]));
    return res;
}

SearchResult dykstra_find_realization(const ContextualityScenario& H,
                                      const ProbabilisticModel& p, const SearchConfig& config) {
    const RealizationSearch search(H, p, config);
    return search.run(config.seed);
}

}  // namespace ctx
