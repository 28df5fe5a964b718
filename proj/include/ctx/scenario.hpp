#ifndef CTX_SCENARIO_HPP
#define CTX_SCENARIO_HPP

#include "ctx/rational.hpp"

#include <string>
#include <vector>

namespace ctx {

/// A finite hypergraph of measurement outcomes: vertices are outcomes, each
/// edge is one complete measurement. Vertex order is the declared order and
/// fixes the layout of every derived matrix and vector. Edges hold sorted
/// vertex indices. Immutable by convention once built.
struct ContextualityScenario {
    std::vector<std::string> vertices;
    std::vector<std::vector<std::size_t>> edges;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t edge_count() const { return edges.size(); }

    /// Index of a label; throws std::invalid_argument for unknown labels.
    std::size_t index_of(const std::string& label) const;

    bool operator==(const ContextualityScenario&) const = default;
};

/// Builds a scenario from labels. Throws on duplicate vertex labels or on an
/// edge naming an unknown vertex; structural defects (uncovered vertices,
/// empty or duplicate edges) are left to validate_scenario.
ContextualityScenario make_scenario(std::vector<std::string> vertex_labels,
                                    const std::vector<std::vector<std::string>>& edge_labels);

/// Same, with edges given as vertex indices.
ContextualityScenario make_scenario_indexed(std::vector<std::string> vertex_labels,
                                            std::vector<std::vector<std::size_t>> edges);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> problems;

    void fail(std::string what) {
        ok = false;
        problems.push_back(std::move(what));
    }
};

/// Covering condition, unique labels, nonempty and pairwise distinct edges.
ValidationReport validate_scenario(const ContextualityScenario& H);

/// 0/1 edge-by-vertex membership matrix, rows in edge order, columns in
/// vertex order. Every valid model p satisfies incidence_matrix(H) p = 1.
RationalMatrix incidence_matrix(const ContextualityScenario& H);

/// Subscenario induced by a vertex subset: edges are intersected with the
/// subset, duplicates collapsed. An intersection that comes out empty is not
/// stored; it sets empty_edge, and such a subscenario admits no model.
struct InducedScenario {
    ContextualityScenario scenario;
    bool empty_edge = false;
    std::vector<std::size_t> parent_vertices;  // subset, ascending parent indices
};

InducedScenario induce(const ContextualityScenario& H, std::vector<std::size_t> subset);
InducedScenario induce(const ContextualityScenario& H, const std::vector<std::string>& labels);

/// Probability per vertex, in scenario vertex order.
struct ProbabilisticModel {
    RationalVector values;

    bool operator==(const ProbabilisticModel&) const = default;
};

/// Values in [0,1] and every edge summing to exactly 1.
ValidationReport validate_model(const ContextualityScenario& H, const ProbabilisticModel& p);

/// p restricted to an ascending index subset.
RationalVector restrict_values(const ProbabilisticModel& p, const std::vector<std::size_t>& subset);

/// Zero-fills a model of the induced subscenario back onto H. Throws
/// std::invalid_argument if p_sub is not a valid model of induce(H, subset)
/// or if (defensively re-checked) the extension fails edge normalization.
ProbabilisticModel extend_model(const ContextualityScenario& H,
                                const std::vector<std::size_t>& subset,
                                const ProbabilisticModel& p_sub);

/// Indices where p is strictly positive.
std::vector<std::size_t> support_of(const ProbabilisticModel& p);

}  // namespace ctx

#endif
