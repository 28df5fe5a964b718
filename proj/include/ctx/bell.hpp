#ifndef CTX_BELL_HPP
#define CTX_BELL_HPP

#include "ctx/scenario.hpp"

#include <map>
#include <optional>

namespace ctx {

/// Measurement layout of an N-party box: settings per party, outcome count
/// per (party, setting).
struct BellStructure {
    std::vector<int> settings;
    std::vector<std::vector<int>> outcomes;

    int parties() const { return static_cast<int>(settings.size()); }
    void check() const;  // throws std::invalid_argument on malformed layout

    bool operator==(const BellStructure&) const = default;
};

BellStructure uniform_structure(int parties, int settings, int outcomes);
inline BellStructure chsh_structure() { return uniform_structure(2, 2, 2); }

/// Bijection between hypergraph vertices and (outcomes | settings) pairs.
struct VertexLabeling {
    struct Entry {
        std::vector<int> outcomes;
        std::vector<int> settings;
    };
    std::vector<Entry> entries;  // aligned with scenario vertex order

    static std::string label(const Entry& e);
    std::size_t find(const std::vector<int>& outcomes, const std::vector<int>& settings) const;
};

/// One party's outcome hypergraph: one disjoint edge per setting, vertices
/// labeled "a|x".
ContextualityScenario single_party_scenario(const std::vector<int>& outcomes_per_setting);
ContextualityScenario single_party_scenario(int settings, int outcomes);

/// Foulis-Randall product. Vertices are the pairs (v,w) in row-major order;
/// edges are, for every edge e of one factor and every map f from e into the
/// other factor's edge set, the set {(v,w) : v in e, w in f(v)}, together
/// with the symmetric family, duplicates collapsed.
struct FrProduct {
    ContextualityScenario scenario;
    std::vector<std::pair<std::size_t, std::size_t>> factors;  // per product vertex
};

FrProduct fr_product(const ContextualityScenario& A, const ContextualityScenario& B);

/// An N-party Bell scenario assembled by left-associated FR products, with
/// vertices relabeled to their (a|x) meaning.
struct BellScenario {
    BellStructure structure;
    ContextualityScenario scenario;
    VertexLabeling labeling;
};

BellScenario bell_scenario(const BellStructure& structure);

/// Dense conditional table p(a|x). Rows follow the party-major mixed-radix
/// order of joint settings; entries within a row follow the mixed-radix
/// order of joint outcomes for that setting.
struct BellBehavior {
    BellStructure structure;
    std::vector<RationalVector> table;

    bool operator==(const BellBehavior&) const = default;
};

std::vector<std::vector<int>> enumerate_tuples(const std::vector<int>& radices);
std::vector<std::vector<int>> joint_settings(const BellStructure& s);
std::vector<int> outcome_radices(const BellStructure& s, const std::vector<int>& x);
std::size_t setting_index(const BellStructure& s, const std::vector<int>& x);
std::size_t outcome_index(const BellStructure& s, const std::vector<int>& x,
                          const std::vector<int>& a);

/// Normalization of every row plus the nonsignaling marginal equalities
/// (checked per party by direct summation; the first violation is reported
/// with its party, settings, and outcome assignment).
ValidationReport validate_behavior(const BellBehavior& b);

/// Relabeling between behaviors and hypergraph models. The forward direction
/// throws std::invalid_argument on signaling or unnormalized input, naming
/// the violated equality. Round-trips are exact.
ProbabilisticModel behavior_to_model(const BellScenario& bs, const BellBehavior& b);
BellBehavior model_to_behavior(const BellScenario& bs, const ProbabilisticModel& p);

/// p(ab|xy) = 1/2 when a xor b = x and y, else 0. Only the (2,2,2) structure
/// is accepted.
BellBehavior pr_box(const BellStructure& structure = chsh_structure());

/// Local single-party factors, per party / setting / outcome.
using LocalFactors = std::vector<std::vector<RationalVector>>;

/// True (with the factors) iff the behavior equals the product of its own
/// single-party marginals, exactly. Requires a nonsignaling behavior.
std::optional<LocalFactors> is_product_behavior(const BellBehavior& b);

}  // namespace ctx

#endif
