#include "ctx/bell.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ctx {

void BellStructure::check() const {
    if (settings.empty()) throw std::invalid_argument("BellStructure: no parties");
    if (outcomes.size() != settings.size())
        throw std::invalid_argument("BellStructure: outcomes list must match party count");
    for (std::size_t i = 0; i < settings.size(); ++i) {
        if (settings[i] < 1)
            throw std::invalid_argument("BellStructure: party needs at least one setting");
        if (outcomes[i].size() != static_cast<std::size_t>(settings[i]))
            throw std::invalid_argument("BellStructure: outcome counts must match setting count");
        for (int o : outcomes[i])
            if (o < 1) throw std::invalid_argument("BellStructure: setting needs an outcome");
    }
}

BellStructure uniform_structure(int parties, int settings, int outcomes) {
    BellStructure s;
    s.settings.assign(static_cast<std::size_t>(parties), settings);
    s.outcomes.assign(static_cast<std::size_t>(parties),
                      std::vector<int>(static_cast<std::size_t>(settings), outcomes));
    s.check();
    return s;
}

std::string VertexLabeling::label(const Entry& e) {
    std::ostringstream os;
    for (std::size_t i = 0; i < e.outcomes.size(); ++i) os << (i ? "," : "") << e.outcomes[i];
    os << "|";
    for (std::size_t i = 0; i < e.settings.size(); ++i) os << (i ? "," : "") << e.settings[i];
    return os.str();
}

std::size_t VertexLabeling::find(const std::vector<int>& outcomes,
                                 const std::vector<int>& settings) const {
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i].outcomes == outcomes && entries[i].settings == settings) return i;
    throw std::invalid_argument("VertexLabeling: no vertex for requested (a|x)");
}

ContextualityScenario single_party_scenario(const std::vector<int>& outcomes_per_setting) {
    if (outcomes_per_setting.empty())
        throw std::invalid_argument("single_party_scenario: need at least one setting");
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> edges;
    for (std::size_t x = 0; x < outcomes_per_setting.size(); ++x) {
        if (outcomes_per_setting[x] < 1)
            throw std::invalid_argument("single_party_scenario: setting needs an outcome");
        std::vector<std::size_t> edge;
        for (int a = 0; a < outcomes_per_setting[x]; ++a) {
            edge.push_back(labels.size());
            labels.push_back(std::to_string(a) + "|" + std::to_string(x));
        }
        edges.push_back(std::move(edge));
    }
    return make_scenario_indexed(std::move(labels), std::move(edges));
}

ContextualityScenario single_party_scenario(int settings, int outcomes) {
    if (settings < 1) throw std::invalid_argument("single_party_scenario: settings < 1");
    return single_party_scenario(
        std::vector<int>(static_cast<std::size_t>(settings), outcomes));
}

namespace {

// Appends every edge {(v, w) : v in e, w in f(v)} for f : e -> E(B), with the
// pair index computed by `pair_of`.
template <typename PairIndex>
void append_directed_edges(const std::vector<std::size_t>& e,
                           const std::vector<std::vector<std::size_t>>& other_edges,
                           PairIndex pair_of, std::set<std::vector<std::size_t>>& out) {
    const std::size_t choices = other_edges.size();
    if (choices == 0) return;
    double log_count = static_cast<double>(e.size()) * std::log2(static_cast<double>(choices));
    if (log_count > 24)
        throw std::domain_error("fr_product: edge family too large for dense enumeration");

    std::vector<std::size_t> pick(e.size(), 0);
    for (;;) {
        std::vector<std::size_t> edge;
        for (std::size_t k = 0; k < e.size(); ++k)
            for (auto w : other_edges[pick[k]]) edge.push_back(pair_of(e[k], w));
        std::sort(edge.begin(), edge.end());
        edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
        out.insert(std::move(edge));

        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == choices) pick[k++] = 0;
        if (k == pick.size()) break;
    }
}

}  // namespace

FrProduct fr_product(const ContextualityScenario& A, const ContextualityScenario& B) {
    const std::size_t nb = B.vertex_count();
    FrProduct out;
    std::vector<std::string> labels;
    labels.reserve(A.vertex_count() * nb);
    for (std::size_t v = 0; v < A.vertex_count(); ++v)
        for (std::size_t w = 0; w < nb; ++w) {
            labels.push_back("(" + A.vertices[v] + "," + B.vertices[w] + ")");
            out.factors.emplace_back(v, w);
        }

    std::set<std::vector<std::size_t>> edge_set;
    for (const auto& e : A.edges)
        append_directed_edges(
            e, B.edges, [nb](std::size_t v, std::size_t w) { return v * nb + w; }, edge_set);
    for (const auto& e : B.edges)
        append_directed_edges(
            e, A.edges, [nb](std::size_t w, std::size_t v) { return v * nb + w; }, edge_set);

    out.scenario = make_scenario_indexed(
        std::move(labels), {edge_set.begin(), edge_set.end()});
    return out;
}

BellScenario bell_scenario(const BellStructure& structure) {
    structure.check();

    BellScenario bs;
    bs.structure = structure;

    std::vector<VertexLabeling::Entry> entries;
    ContextualityScenario current = single_party_scenario(structure.outcomes[0]);
    for (std::size_t x = 0; x < structure.outcomes[0].size(); ++x)
        for (int a = 0; a < structure.outcomes[0][x]; ++a)
            entries.push_back({{a}, {static_cast<int>(x)}});

    for (int party = 1; party < structure.parties(); ++party) {
        const ContextualityScenario next =
            single_party_scenario(structure.outcomes[static_cast<std::size_t>(party)]);
        std::vector<VertexLabeling::Entry> next_entries;
        for (std::size_t x = 0; x < structure.outcomes[static_cast<std::size_t>(party)].size(); ++x)
            for (int a = 0; a < structure.outcomes[static_cast<std::size_t>(party)][x]; ++a)
                next_entries.push_back({{a}, {static_cast<int>(x)}});

        FrProduct prod = fr_product(current, next);
        std::vector<VertexLabeling::Entry> merged;
        merged.reserve(prod.factors.size());
        for (const auto& [u, w] : prod.factors) {
            VertexLabeling::Entry e = entries[u];
            e.outcomes.push_back(next_entries[w].outcomes[0]);
            e.settings.push_back(next_entries[w].settings[0]);
            merged.push_back(std::move(e));
        }
        current = std::move(prod.scenario);
        entries = std::move(merged);
    }

    std::vector<std::string> labels;
    labels.reserve(entries.size());
    for (const auto& e : entries) labels.push_back(VertexLabeling::label(e));
    bs.scenario = make_scenario_indexed(std::move(labels), std::move(current.edges));
    bs.labeling.entries = std::move(entries);
    return bs;
}

std::vector<std::vector<int>> enumerate_tuples(const std::vector<int>& radices) {
    for (int r : radices)
        if (r < 1) throw std::invalid_argument("enumerate_tuples: radix < 1");
    std::vector<std::vector<int>> out;
    std::vector<int> t(radices.size(), 0);
    for (;;) {
        out.push_back(t);
        std::size_t k = t.size();
        for (;;) {
            if (k == 0) return out;
            --k;
            if (++t[k] < radices[k]) break;
            t[k] = 0;
        }
    }
}

std::vector<std::vector<int>> joint_settings(const BellStructure& s) {
    return enumerate_tuples(s.settings);
}

std::vector<int> outcome_radices(const BellStructure& s, const std::vector<int>& x) {
    std::vector<int> r;
    r.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r.push_back(s.outcomes[i][static_cast<std::size_t>(x[i])]);
    return r;
}

std::size_t setting_index(const BellStructure& s, const std::vector<int>& x) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0 || x[i] >= s.settings[i])
            throw std::invalid_argument("setting_index: setting out of range");
        idx = idx * static_cast<std::size_t>(s.settings[i]) + static_cast<std::size_t>(x[i]);
    }
    return idx;
}

std::size_t outcome_index(const BellStructure& s, const std::vector<int>& x,
                          const std::vector<int>& a) {
    const std::vector<int> radices = outcome_radices(s, x);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 0 || a[i] >= radices[i])
            throw std::invalid_argument("outcome_index: outcome out of range");
        idx = idx * static_cast<std::size_t>(radices[i]) + static_cast<std::size_t>(a[i]);
    }
    return idx;
}

namespace {

std::string tuple_text(const std::vector<int>& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    return os.str();
}

}  // namespace

ValidationReport validate_behavior(const BellBehavior& b) {
    b.structure.check();
    ValidationReport report;

    const auto settings = joint_settings(b.structure);
    if (b.table.size() != settings.size()) {
        report.fail("table has " + std::to_string(b.table.size()) + " rows for " +
                    std::to_string(settings.size()) + " joint settings");
        return report;
    }

    for (std::size_t xi = 0; xi < settings.size(); ++xi) {
        const auto radices = outcome_radices(b.structure, settings[xi]);
        std::size_t expect = 1;
        for (int r : radices) expect *= static_cast<std::size_t>(r);
        if (b.table[xi].size() != expect) {
            report.fail("row x=(" + tuple_text(settings[xi]) + ") has wrong outcome count");
            return report;
        }
        Rational sum = 0;
        for (const auto& q : b.table[xi]) {
            if (q < 0 || q > 1)
                report.fail("entry outside [0,1] at x=(" + tuple_text(settings[xi]) + ")");
            sum += q;
        }
        if (sum != 1)
            report.fail("row x=(" + tuple_text(settings[xi]) + ") sums to " +
                        format_rational(sum));
    }
    if (!report.ok) return report;

    // Nonsignaling: for each party, the marginal over the rest must not
    // depend on that party's setting.
    const int n = b.structure.parties();
    for (int party = 0; party < n; ++party) {
        const std::size_t pi = static_cast<std::size_t>(party);
        for (const auto& x : settings) {
            if (x[pi] != 0) continue;  // compare every variant against x_party = 0
            for (int alt = 1; alt < b.structure.settings[pi]; ++alt) {
                std::vector<int> x2 = x;
                x2[pi] = alt;
                // Enumerate the other parties' outcomes for these settings.
                std::vector<int> rest_radices = outcome_radices(b.structure, x);
                rest_radices[pi] = 1;
                for (const auto& rest : enumerate_tuples(rest_radices)) {
                    Rational m1 = 0, m2 = 0;
                    std::vector<int> a = rest;
                    for (int ai = 0; ai < b.structure.outcomes[pi][static_cast<std::size_t>(x[pi])];
                         ++ai) {
                        a[pi] = ai;
                        m1 += b.table[setting_index(b.structure, x)][outcome_index(b.structure, x, a)];
                    }
                    a = rest;
                    for (int ai = 0;
                         ai < b.structure.outcomes[pi][static_cast<std::size_t>(x2[pi])]; ++ai) {
                        a[pi] = ai;
                        m2 += b.table[setting_index(b.structure, x2)][outcome_index(b.structure, x2, a)];
                    }
                    if (m1 != m2) {
                        std::vector<int> shown = rest;
                        shown[pi] = -1;
                        report.fail("signaling: party " + std::to_string(party) +
                                    " marginal differs between x=(" + tuple_text(x) +
                                    ") and x=(" + tuple_text(x2) + ") at outcomes (" +
                                    tuple_text(shown) + "): " + format_rational(m1) + " vs " +
                                    format_rational(m2));
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

ProbabilisticModel behavior_to_model(const BellScenario& bs, const BellBehavior& b) {
    if (!(b.structure == bs.structure))
        throw std::invalid_argument("behavior_to_model: structure mismatch");
    const ValidationReport ok = validate_behavior(b);
    if (!ok.ok) throw std::invalid_argument("behavior_to_model: " + ok.problems.front());

    ProbabilisticModel p;
    p.values.reserve(bs.labeling.entries.size());
    for (const auto& e : bs.labeling.entries)
        p.values.push_back(b.table[setting_index(bs.structure, e.settings)]
                                  [outcome_index(bs.structure, e.settings, e.outcomes)]);
    return p;
}

BellBehavior model_to_behavior(const BellScenario& bs, const ProbabilisticModel& p) {
    const ValidationReport ok = validate_model(bs.scenario, p);
    if (!ok.ok) throw std::invalid_argument("model_to_behavior: " + ok.problems.front());

    BellBehavior b;
    b.structure = bs.structure;
    const auto settings = joint_settings(b.structure);
    b.table.resize(settings.size());
    for (std::size_t xi = 0; xi < settings.size(); ++xi) {
        std::size_t count = 1;
        for (int r : outcome_radices(b.structure, settings[xi]))
            count *= static_cast<std::size_t>(r);
        b.table[xi].assign(count, Rational(0));
    }
    for (std::size_t v = 0; v < bs.labeling.entries.size(); ++v) {
        const auto& e = bs.labeling.entries[v];
        b.table[setting_index(b.structure, e.settings)]
               [outcome_index(b.structure, e.settings, e.outcomes)] = p.values[v];
    }
    return b;
}

BellBehavior pr_box(const BellStructure& structure) {
    if (!(structure == chsh_structure()))
        throw std::invalid_argument("pr_box: only the (2 parties, 2 settings, 2 outcomes) "
                                    "structure is defined");
    BellBehavior b;
    b.structure = structure;
    b.table.assign(4, RationalVector(4, Rational(0)));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb)
                    if ((a ^ bb) == (x & y))
                        b.table[setting_index(b.structure, {x, y})]
                               [outcome_index(b.structure, {x, y}, {a, bb})] = Rational(1, 2);
    return b;
}

std::optional<LocalFactors> is_product_behavior(const BellBehavior& b) {
    const ValidationReport ok = validate_behavior(b);
    if (!ok.ok) throw std::invalid_argument("is_product_behavior: " + ok.problems.front());

    const int n = b.structure.parties();
    LocalFactors factors(static_cast<std::size_t>(n));

    // Single-party marginals, evaluated with all other settings at 0 (any
    // choice agrees, by nonsignaling).
    for (int party = 0; party < n; ++party) {
        const std::size_t pi = static_cast<std::size_t>(party);
        factors[pi].resize(static_cast<std::size_t>(b.structure.settings[pi]));
        for (int x = 0; x < b.structure.settings[pi]; ++x) {
            std::vector<int> joint(static_cast<std::size_t>(n), 0);
            joint[pi] = x;
            const int na = b.structure.outcomes[pi][static_cast<std::size_t>(x)];
            RationalVector marg(static_cast<std::size_t>(na), Rational(0));
            std::vector<int> radices = outcome_radices(b.structure, joint);
            for (const auto& a : enumerate_tuples(radices))
                marg[static_cast<std::size_t>(a[pi])] +=
                    b.table[setting_index(b.structure, joint)][outcome_index(b.structure, joint, a)];
            factors[pi][static_cast<std::size_t>(x)] = std::move(marg);
        }
    }

    for (const auto& x : joint_settings(b.structure)) {
        const std::vector<int> radices = outcome_radices(b.structure, x);
        for (const auto& a : enumerate_tuples(radices)) {
            Rational prod = 1;
            for (int i = 0; i < n; ++i)
                prod *= factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(x[static_cast<std::size_t>(i)])]
                               [static_cast<std::size_t>(a[static_cast<std::size_t>(i)])];
            if (prod != b.table[setting_index(b.structure, x)][outcome_index(b.structure, x, a)])
                return std::nullopt;
        }
    }
    return factors;
}

}  // namespace ctx
