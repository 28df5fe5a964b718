#include "ctx/naimark.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ctx {

NaimarkDilation naimark_dilate(const std::vector<CMat>& effects, double sum_tol,
                               double psd_tol) {
    if (effects.empty()) throw std::invalid_argument("naimark_dilate: no effects");
    const std::size_t d = effects[0].rows();
    const std::size_t n = effects.size();
    CMat sum(d, d);
    for (const CMat& E : effects) {
        if (E.rows() != d || E.cols() != d)
            throw std::invalid_argument("naimark_dilate: mixed dimensions");
        sum += E;
    }
    if ((sum - CMat::identity(d)).frobenius() > sum_tol)
        throw std::invalid_argument("naimark_dilate: effects do not sum to the identity");

    NaimarkDilation out;
    out.isometry = CMat(n * d, d);
    for (std::size_t a = 0; a < n; ++a)
        out.isometry.place(a * d, 0, psd_sqrt(effects[a], psd_tol));

    for (std::size_t a = 0; a < n; ++a) {
        CMat pi(n * d, n * d);
        for (std::size_t i = 0; i < d; ++i) pi(a * d + i, a * d + i) = 1.0;
        out.projectors.push_back(std::move(pi));
    }
    return out;
}

std::vector<std::vector<std::size_t>> canonical_outcome_order(const ContextualityScenario& H) {
    return H.edges;  // edges already hold ascending vertex indices
}

DilationConsistencyReport check_dilation_consistency(
    const ContextualityScenario& H, const QuantumRealization& R,
    const std::vector<std::vector<std::size_t>>& outcome_order, double tol) {
    if (outcome_order.size() != H.edge_count())
        throw std::invalid_argument("check_dilation_consistency: need one outcome order per edge");

    const std::size_t d = R.dim;
    DilationConsistencyReport rep;
    for (const auto& e : H.edges) rep.common_dim = std::max(rep.common_dim, e.size() * d);

    // Per edge: vertex -> projector, zero-padded to the common dimension.
    std::vector<std::map<std::size_t, CMat>> dilated(H.edge_count());
    for (std::size_t ei = 0; ei < H.edge_count(); ++ei) {
        const auto& order = outcome_order[ei];
        {
            auto sorted = order;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != H.edges[ei])
                throw std::invalid_argument(
                    "check_dilation_consistency: outcome order must permute edge " +
                    std::to_string(ei));
        }
        std::vector<CMat> povm;
        povm.reserve(order.size());
        for (auto v : order) povm.push_back(R.effects[v]);
        const NaimarkDilation nd = naimark_dilate(povm, tol, std::max(tol, 1e-9));
        for (std::size_t a = 0; a < order.size(); ++a) {
            CMat padded(rep.common_dim, rep.common_dim);
            padded.place(0, 0, nd.projectors[a]);
            dilated[ei].emplace(order[a], std::move(padded));
        }
    }

    for (std::size_t v = 0; v < H.vertex_count(); ++v) {
        std::vector<std::size_t> in_edges;
        for (std::size_t ei = 0; ei < H.edge_count(); ++ei)
            if (dilated[ei].count(v)) in_edges.push_back(ei);
        for (std::size_t a = 0; a < in_edges.size(); ++a)
            for (std::size_t b = a + 1; b < in_edges.size(); ++b) {
                DilationMismatch m;
                m.vertex = v;
                m.edge_a = in_edges[a];
                m.edge_b = in_edges[b];
                m.mismatch =
                    (dilated[in_edges[a]].at(v) - dilated[in_edges[b]].at(v)).frobenius();
                m.consistent = m.mismatch <= tol;
                if (!m.consistent) rep.all_consistent = false;
                rep.shared.push_back(std::move(m));
            }
    }
    return rep;
}

}  // namespace ctx
