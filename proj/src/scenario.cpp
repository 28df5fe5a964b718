#include "ctx/scenario.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ctx {

std::size_t ContextualityScenario::index_of(const std::string& label) const {
    const auto it = std::find(vertices.begin(), vertices.end(), label);
    if (it == vertices.end())
        throw std::invalid_argument("unknown vertex label: \"" + label + "\"");
    return static_cast<std::size_t>(it - vertices.begin());
}

ContextualityScenario make_scenario(std::vector<std::string> vertex_labels,
                                    const std::vector<std::vector<std::string>>& edge_labels) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vertex_labels.size(); ++i) {
        if (!index.emplace(vertex_labels[i], i).second)
            throw std::invalid_argument("duplicate vertex label: \"" + vertex_labels[i] + "\"");
    }
    std::vector<std::vector<std::size_t>> edges;
    edges.reserve(edge_labels.size());
    for (const auto& e : edge_labels) {
        std::vector<std::size_t> idx;
        for (const auto& label : e) {
            const auto it = index.find(label);
            if (it == index.end())
                throw std::invalid_argument("edge references unknown vertex: \"" + label + "\"");
            idx.push_back(it->second);
        }
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        edges.push_back(std::move(idx));
    }
    return {std::move(vertex_labels), std::move(edges)};
}

ContextualityScenario make_scenario_indexed(std::vector<std::string> vertex_labels,
                                            std::vector<std::vector<std::size_t>> edges) {
    for (auto& e : edges) {
        for (auto v : e)
            if (v >= vertex_labels.size())
                throw std::invalid_argument("edge vertex index out of range");
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
    }
    return {std::move(vertex_labels), std::move(edges)};
}

ValidationReport validate_scenario(const ContextualityScenario& H) {
    ValidationReport report;

    std::set<std::string> seen;
    for (const auto& label : H.vertices)
        if (!seen.insert(label).second) report.fail("duplicate vertex label \"" + label + "\"");

    std::vector<bool> covered(H.vertices.size(), false);
    std::set<std::vector<std::size_t>> edge_sets;
    for (std::size_t i = 0; i < H.edges.size(); ++i) {
        const auto& e = H.edges[i];
        if (e.empty()) {
            report.fail("edge " + std::to_string(i) + " is empty");
            continue;
        }
        if (!edge_sets.insert(e).second)
            report.fail("edge " + std::to_string(i) + " duplicates an earlier edge");
        for (auto v : e) covered[v] = true;
    }
    for (std::size_t v = 0; v < H.vertices.size(); ++v)
        if (!covered[v]) report.fail("vertex \"" + H.vertices[v] + "\" is not covered by any edge");

    return report;
}

RationalMatrix incidence_matrix(const ContextualityScenario& H) {
    RationalMatrix A(H.edge_count(), H.vertex_count());
    for (std::size_t i = 0; i < H.edges.size(); ++i)
        for (auto v : H.edges[i]) A.at(i, v) = 1;
    return A;
}

InducedScenario induce(const ContextualityScenario& H, std::vector<std::size_t> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    for (auto v : subset)
        if (v >= H.vertex_count())
            throw std::invalid_argument("induce: vertex index out of range");

    std::vector<std::size_t> new_index(H.vertex_count(), SIZE_MAX);
    std::vector<std::string> labels;
    labels.reserve(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
        new_index[subset[i]] = i;
        labels.push_back(H.vertices[subset[i]]);
    }

    InducedScenario out;
    out.parent_vertices = subset;
    std::set<std::vector<std::size_t>> distinct;
    std::vector<std::vector<std::size_t>> edges;
    for (const auto& e : H.edges) {
        std::vector<std::size_t> cut;
        for (auto v : e)
            if (new_index[v] != SIZE_MAX) cut.push_back(new_index[v]);
        if (cut.empty()) {
            out.empty_edge = true;
            continue;
        }
        if (distinct.insert(cut).second) edges.push_back(std::move(cut));
    }
    out.scenario = {std::move(labels), std::move(edges)};
    return out;
}

InducedScenario induce(const ContextualityScenario& H, const std::vector<std::string>& labels) {
    std::vector<std::size_t> subset;
    subset.reserve(labels.size());
    for (const auto& l : labels) subset.push_back(H.index_of(l));
    return induce(H, std::move(subset));
}

ValidationReport validate_model(const ContextualityScenario& H, const ProbabilisticModel& p) {
    ValidationReport report;
    if (p.values.size() != H.vertex_count()) {
        report.fail("model has " + std::to_string(p.values.size()) + " values for " +
                    std::to_string(H.vertex_count()) + " vertices");
        return report;
    }
    for (std::size_t v = 0; v < p.values.size(); ++v)
        if (p.values[v] < 0 || p.values[v] > 1)
            report.fail("p(\"" + H.vertices[v] + "\") = " + format_rational(p.values[v]) +
                        " is outside [0,1]");
    for (std::size_t i = 0; i < H.edges.size(); ++i) {
        Rational sum = 0;
        for (auto v : H.edges[i]) sum += p.values[v];
        if (sum != 1) {
            std::ostringstream os;
            os << "edge " << i << " {";
            for (std::size_t k = 0; k < H.edges[i].size(); ++k)
                os << (k ? "," : "") << H.vertices[H.edges[i][k]];
            os << "} sums to " << format_rational(sum);
            report.fail(os.str());
        }
    }
    return report;
}

RationalVector restrict_values(const ProbabilisticModel& p, const std::vector<std::size_t>& subset) {
    RationalVector out;
    out.reserve(subset.size());
    for (auto v : subset) out.push_back(p.values.at(v));
    return out;
}

ProbabilisticModel extend_model(const ContextualityScenario& H,
                                const std::vector<std::size_t>& subset,
                                const ProbabilisticModel& p_sub) {
    const InducedScenario ind = induce(H, subset);
    if (ind.empty_edge)
        throw std::invalid_argument(
            "extend_model: subset misses an edge entirely, the subscenario has no models");
    const ValidationReport sub_ok = validate_model(ind.scenario, p_sub);
    if (!sub_ok.ok)
        throw std::invalid_argument("extend_model: p_sub invalid on the induced subscenario: " +
                                    sub_ok.problems.front());

    ProbabilisticModel p;
    p.values.assign(H.vertex_count(), Rational(0));
    for (std::size_t i = 0; i < ind.parent_vertices.size(); ++i)
        p.values[ind.parent_vertices[i]] = p_sub.values[i];

    const ValidationReport ok = validate_model(H, p);
    if (!ok.ok)
        throw std::invalid_argument("extend_model: extension fails edge normalization on H: " +
                                    ok.problems.front());
    return p;
}

std::vector<std::size_t> support_of(const ProbabilisticModel& p) {
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < p.values.size(); ++v)
        if (p.values[v] > 0) s.push_back(v);
    return s;
}

}  // namespace ctx
