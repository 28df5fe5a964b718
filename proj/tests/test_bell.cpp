#include "ctx/bell.hpp"

#include "ctx/analysis.hpp"

#include "testutil.hpp"

#include <doctest.h>

using namespace ctx;
using testutil::Q;

TEST_SUITE_BEGIN("bell");

TEST_CASE("single_party_scenario") {
    auto s = single_party_scenario(2, 2);
    CHECK(s.vertex_count() == 4);
    CHECK(s.edge_count() == 2);

    s = single_party_scenario(1, 3);
    CHECK(s.vertex_count() == 3);
    CHECK(s.edge_count() == 1);

    s = single_party_scenario(3, 2);
    CHECK(s.vertex_count() == 6);
    CHECK(s.edge_count() == 3);
    CHECK(validate_scenario(s).ok);
}

TEST_CASE("fr_product structure counts") {
    auto h1 = make_scenario({"x"}, {{"x"}});
    auto p = fr_product(h1, h1);
    CHECK(p.scenario.vertex_count() == 1);
    CHECK(p.scenario.edge_count() == 1);

    auto b1 = single_party_scenario(2, 2);
    p = fr_product(b1, b1);
    CHECK(p.scenario.vertex_count() == 16);
    CHECK(p.scenario.edge_count() == 12);
    for (const auto& e : p.scenario.edges) CHECK(e.size() == 4);
    CHECK(validate_scenario(p.scenario).ok);

    // One-sided product against a single-measurement trivial party: the
    // edge map is forced, edges mirror the left factor.
    p = fr_product(b1, h1);
    CHECK(p.scenario.vertex_count() == 4);
    CHECK(p.scenario.edge_count() == 2);
}

TEST_CASE("bell_scenario") {
    auto single = bell_scenario(uniform_structure(1, 2, 2));
    CHECK(single.scenario == single_party_scenario(2, 2));

    const auto chsh = testutil::chsh();
    CHECK(chsh.scenario.vertex_count() == 16);
    CHECK(chsh.scenario.edge_count() == 12);
    CHECK(validate_scenario(chsh.scenario).ok);

    // Incidence: 12 x 16, each edge holding 4 outcomes.
    const auto A = incidence_matrix(chsh.scenario);
    CHECK(A.rows == 12);
    CHECK(A.cols == 16);
    for (std::size_t i = 0; i < A.rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < A.cols; ++j) s += A.at(i, j);
        CHECK(s == 4);
    }

    BellStructure lopsided;
    lopsided.settings = {2, 1};
    lopsided.outcomes = {{2, 2}, {2}};
    CHECK(bell_scenario(lopsided).scenario.vertex_count() == 8);
}

TEST_CASE("labeling is a bijection") {
    const auto chsh = testutil::chsh();
    for (std::size_t v = 0; v < chsh.scenario.vertex_count(); ++v) {
        const auto& e = chsh.labeling.entries[v];
        CHECK(chsh.labeling.find(e.outcomes, e.settings) == v);
        CHECK(chsh.scenario.vertices[v] == VertexLabeling::label(e));
    }
}

TEST_CASE("pr_box values") {
    const auto pr = pr_box();
    const auto& s = pr.structure;
    CHECK(pr.table[setting_index(s, {0, 0})][outcome_index(s, {0, 0}, {0, 0})] == Q(1, 2));
    CHECK(pr.table[setting_index(s, {1, 1})][outcome_index(s, {1, 1}, {0, 1})] == Q(1, 2));
    // 1 xor 1 = 0 = 0*1, so this entry is on the winning branch
    CHECK(pr.table[setting_index(s, {0, 1})][outcome_index(s, {0, 1}, {1, 1})] == Q(1, 2));
    CHECK(pr.table[setting_index(s, {1, 0})][outcome_index(s, {1, 0}, {0, 1})] == Q(0));
    CHECK(validate_behavior(pr).ok);

    CHECK_THROWS_AS(pr_box(uniform_structure(2, 3, 2)), std::invalid_argument);
}

TEST_CASE("behavior_to_model and back") {
    const auto chsh = testutil::chsh();

    BellBehavior uniform;
    uniform.structure = chsh.structure;
    uniform.table.assign(4, RationalVector(4, Q(1, 4)));
    auto p = behavior_to_model(chsh, uniform);
    CHECK(validate_model(chsh.scenario, p).ok);
    for (const auto& v : p.values) CHECK(v == Q(1, 4));

    const auto pr_model = behavior_to_model(chsh, pr_box());
    CHECK(validate_model(chsh.scenario, pr_model).ok);

    CHECK(model_to_behavior(chsh, p) == uniform);
    CHECK(model_to_behavior(chsh, pr_model) == pr_box());
    CHECK(behavior_to_model(chsh, model_to_behavior(chsh, pr_model)) == pr_model);
}

TEST_CASE("signaling behaviors are rejected by name") {
    const auto chsh = testutil::chsh();
    BellBehavior b;
    b.structure = chsh.structure;
    b.table.assign(4, RationalVector(4, Q(1, 4)));
    // Party 0's marginal at x=0 now depends on party 1's setting:
    // p(a=0|x=0) is 1 when y=0 but 1/2 when y=1.
    b.table[setting_index(b.structure, {0, 0})] = {Q(1, 2), Q(1, 2), Q(0), Q(0)};
    const auto r = validate_behavior(b);
    REQUIRE_FALSE(r.ok);
    CHECK(r.problems.front().find("signaling") != std::string::npos);
    CHECK_THROWS_WITH_AS(behavior_to_model(chsh, b),
                         doctest::Contains("signaling"), std::invalid_argument);
}

TEST_CASE("nonsignaling equivalence with edge normalization on (2,2,2)") {
    // Mixtures of extremal models are valid models; their behaviors must
    // pass the nonsignaling check. Perturbed tables that stay row-normalized
    // but signal must fail both gauges.
    const auto chsh = testutil::chsh();
    const auto vs = enumerate_extremal(chsh.scenario, ExtremalMethod::DoubleDescription);
    REQUIRE(vs.size() == 24);
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        RationalVector mix(chsh.scenario.vertex_count(), Q(0));
        Rational total = 0;
        for (int k = 0; k < 3; ++k) {
            const auto& v = vs[rng() % vs.size()];
            const Rational w = Q(1 + static_cast<long long>(rng() % 3));
            total += w;
            for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += w * v.values[i];
        }
        for (auto& q : mix) q /= total;
        ProbabilisticModel p{mix};
        REQUIRE(validate_model(chsh.scenario, p).ok);
        CHECK(validate_behavior(model_to_behavior(chsh, p)).ok);
    }

    // Row-normalized signaling table: model fails edge normalization too.
    BellBehavior bad;
    bad.structure = chsh.structure;
    bad.table.assign(4, RationalVector(4, Q(1, 4)));
    bad.table[0] = {Q(1), Q(0), Q(0), Q(0)};
    CHECK_FALSE(validate_behavior(bad).ok);
    ProbabilisticModel direct{RationalVector(16)};
    for (std::size_t v = 0; v < 16; ++v) {
        const auto& e = chsh.labeling.entries[v];
        direct.values[v] = bad.table[setting_index(bad.structure, e.settings)]
                                    [outcome_index(bad.structure, e.settings, e.outcomes)];
    }
    CHECK_FALSE(validate_model(chsh.scenario, direct).ok);
}

TEST_CASE("nonsignaling equivalence on the (2,2)x(1,2) scenario") {
    BellStructure s;
    s.settings = {2, 1};
    s.outcomes = {{2, 2}, {2}};
    const auto bs = bell_scenario(s);
    const auto vs = enumerate_extremal(bs.scenario, ExtremalMethod::DoubleDescription);
    for (const auto& v : vs) CHECK(validate_behavior(model_to_behavior(bs, v)).ok);
}

TEST_CASE("deterministic CHSH models are the 16 local assignments") {
    const auto chsh = testutil::chsh();
    const auto dets = enumerate_deterministic(chsh.scenario);
    REQUIRE(dets.size() == 16);

    // Independent construction: a(x), b(y) response functions.
    std::vector<ProbabilisticModel> local;
    for (int a0 = 0; a0 < 2; ++a0)
        for (int a1 = 0; a1 < 2; ++a1)
            for (int b0 = 0; b0 < 2; ++b0)
                for (int b1 = 0; b1 < 2; ++b1) {
                    const int a[2] = {a0, a1}, b[2] = {b0, b1};
                    ProbabilisticModel p{RationalVector(16, Q(0))};
                    for (std::size_t v = 0; v < 16; ++v) {
                        const auto& e = chsh.labeling.entries[v];
                        if (e.outcomes[0] == a[e.settings[0]] &&
                            e.outcomes[1] == b[e.settings[1]])
                            p.values[v] = 1;
                    }
                    local.push_back(std::move(p));
                }
    std::vector<ProbabilisticModel> from_dets;
    for (const auto& d : dets) from_dets.push_back(deterministic_to_model(chsh.scenario, d));
    CHECK(testutil::same_model_set(local, from_dets));

    // All of them are product behaviors.
    for (const auto& p : from_dets) {
        const auto f = is_product_behavior(model_to_behavior(chsh, p));
        CHECK(f.has_value());
    }
}

TEST_CASE("is_product_behavior") {
    const auto chsh = testutil::chsh();
    BellBehavior uniform;
    uniform.structure = chsh.structure;
    uniform.table.assign(4, RationalVector(4, Q(1, 4)));
    auto f = is_product_behavior(uniform);
    REQUIRE(f.has_value());
    for (const auto& per_setting : *f)
        for (const auto& marg : per_setting)
            for (const auto& q : marg) CHECK(q == Q(1, 2));

    CHECK_FALSE(is_product_behavior(pr_box()).has_value());
}

TEST_SUITE_END();
