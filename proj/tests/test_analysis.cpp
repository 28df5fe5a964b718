#include "ctx/analysis.hpp"

#include "ctx/linalg.hpp"

#include "testutil.hpp"

#include <doctest.h>

using namespace ctx;
using testutil::Q;

TEST_SUITE_BEGIN("analysis");

TEST_CASE("enumerate_deterministic") {
    auto dets = enumerate_deterministic(testutil::single_edge(2));
    REQUIRE(dets.size() == 2);
    CHECK(dets[0].support == std::vector<std::size_t>{0});
    CHECK(dets[1].support == std::vector<std::size_t>{1});

    CHECK(enumerate_deterministic(testutil::triangle()).empty());

    // CHSH: one deterministic model per local assignment (a(x), b(y)).
    CHECK(enumerate_deterministic(testutil::chsh().scenario).size() == 16);
}

TEST_CASE("deterministic models hit every edge exactly once") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        auto H = testutil::random_scenario(rng);
        for (const auto& d : enumerate_deterministic(H)) {
            const auto p = deterministic_to_model(H, d);
            CHECK(validate_model(H, p).ok);
            for (const auto& e : H.edges) {
                int hits = 0;
                for (auto v : e)
                    if (p.values[v] == 1) ++hits;
                CHECK(hits == 1);
            }
        }
    }
}

TEST_CASE("is_classical") {
    const auto edge = testutil::single_edge(2);
    auto dec = is_classical(edge, testutil::model_of({Q(1, 2), Q(1, 2)}));
    REQUIRE(dec.has_value());
    REQUIRE(dec->weights.size() == 2);
    CHECK(dec->weights[0] == Q(1, 2));
    CHECK(dec->weights[1] == Q(1, 2));

    // No deterministic models on the triangle, so nothing is classical.
    CHECK_FALSE(is_classical(testutil::triangle(),
                             testutil::model_of({Q(1, 2), Q(1, 2), Q(1, 2)}))
                    .has_value());
}

TEST_CASE("classical decompositions reproduce the model exactly") {
    std::mt19937_64 rng(37);
    const auto chsh = testutil::chsh().scenario;
    const auto dets = enumerate_deterministic(chsh);
    for (int trial = 0; trial < 6; ++trial) {
        // Random rational mixture of deterministic models.
        RationalVector weights;
        Rational total = 0;
        for (std::size_t k = 0; k < dets.size(); ++k) {
            weights.push_back(Q(static_cast<long long>(rng() % 4)));
            total += weights.back();
        }
        if (total == 0) continue;
        for (auto& w : weights) w /= total;
        ProbabilisticModel p{RationalVector(chsh.vertex_count(), Q(0))};
        for (std::size_t k = 0; k < dets.size(); ++k)
            for (auto v : dets[k].support) p.values[v] += weights[k];

        CHECK(validate_model(chsh, p).ok);  // classical models are models
        const auto dec = is_classical(chsh, p);
        REQUIRE(dec.has_value());
        RationalVector rebuilt(chsh.vertex_count(), Q(0));
        Rational wsum = 0;
        for (std::size_t k = 0; k < dec->weights.size(); ++k) {
            CHECK(dec->weights[k] > 0);
            wsum += dec->weights[k];
            for (auto v : dec->components[k].support) rebuilt[v] += dec->weights[k];
        }
        CHECK(wsum == 1);
        CHECK(rebuilt == p.values);
    }
}

TEST_CASE("has_unique_model") {
    auto r = has_unique_model(make_scenario({"0"}, {{"0"}}));
    REQUIRE(r.status == UniquenessResult::Status::Unique);
    CHECK(r.model->values == RationalVector{Q(1)});

    r = has_unique_model(testutil::single_edge(2));
    REQUIRE(r.status == UniquenessResult::Status::Multiple);
    REQUIRE(r.witnesses.has_value());
    const auto& [w1, w2] = *r.witnesses;
    CHECK(w1.values != w2.values);
    CHECK(validate_model(testutil::single_edge(2), w1).ok);
    CHECK(validate_model(testutil::single_edge(2), w2).ok);

    r = has_unique_model(testutil::triangle());
    REQUIRE(r.status == UniquenessResult::Status::Unique);
    CHECK(r.model->values == RationalVector{Q(1, 2), Q(1, 2), Q(1, 2)});

    // Infeasible: two singleton edges in one two-vertex measurement.
    auto none = make_scenario({"0", "1"}, {{"0"}, {"1"}, {"0", "1"}});
    CHECK(has_unique_model(none).status == UniquenessResult::Status::None);
}

TEST_CASE("is_extremal") {
    const auto edge = testutil::single_edge(2);
    auto cert = is_extremal(edge, testutil::model_of({Q(1), Q(0)}));
    CHECK(cert.extremal);
    CHECK(cert.support == std::vector<std::size_t>{0});

    cert = is_extremal(edge, testutil::model_of({Q(1, 2), Q(1, 2)}));
    CHECK_FALSE(cert.extremal);
    CHECK(cert.subscenario.status == UniquenessResult::Status::Multiple);

    CHECK(is_extremal(testutil::triangle(), testutil::model_of({Q(1, 2), Q(1, 2), Q(1, 2)}))
              .extremal);
}

TEST_CASE("enumerate_extremal: frozen small cases") {
    const auto edge = testutil::single_edge(2);
    auto dd = enumerate_extremal(edge, ExtremalMethod::DoubleDescription);
    auto sup = enumerate_extremal(edge, ExtremalMethod::Support);
    REQUIRE(dd.size() == 2);
    CHECK(testutil::same_model_set(dd, sup));

    auto tri_dd = enumerate_extremal(testutil::triangle(), ExtremalMethod::DoubleDescription);
    auto tri_sup = enumerate_extremal(testutil::triangle(), ExtremalMethod::Support);
    REQUIRE(tri_dd.size() == 1);
    CHECK(tri_dd[0].values == RationalVector{Q(1, 2), Q(1, 2), Q(1, 2)});
    CHECK(testutil::same_model_set(tri_dd, tri_sup));
}

TEST_CASE("method agreement on random hypergraphs") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 12; ++trial) {
        auto H = testutil::random_scenario(rng);
        auto dd = enumerate_extremal(H, ExtremalMethod::DoubleDescription);
        auto sup = enumerate_extremal(H, ExtremalMethod::Support);
        CAPTURE(trial);
        CHECK(testutil::same_model_set(dd, sup));
    }
}

TEST_CASE("every deterministic model is extremal") {
    std::mt19937_64 rng(97);
    std::vector<ContextualityScenario> corpus = {testutil::single_edge(2),
                                                 testutil::chsh().scenario};
    for (int trial = 0; trial < 6; ++trial) corpus.push_back(testutil::random_scenario(rng));
    for (const auto& H : corpus)
        for (const auto& d : enumerate_deterministic(H))
            CHECK(is_extremal(H, deterministic_to_model(H, d)).extremal);
}

TEST_CASE("is_extremal agrees with enumeration membership") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 6; ++trial) {
        auto H = testutil::random_scenario(rng);
        auto vs = enumerate_extremal(H, ExtremalMethod::DoubleDescription);
        for (const auto& p : vs) CHECK(is_extremal(H, p).extremal);
        if (vs.size() >= 2) {
            // A proper mixture of two distinct vertices is never extremal.
            ProbabilisticModel mix{RationalVector(H.vertex_count())};
            for (std::size_t v = 0; v < mix.values.size(); ++v)
                mix.values[v] = (vs[0].values[v] + vs[1].values[v]) / 2;
            CHECK_FALSE(is_extremal(H, mix).extremal);
        }
    }
}

TEST_CASE("unique strictly positive model forces an empty kernel") {
    // The checkable face of the incidence lemma, over scenarios whose unique
    // model is strictly positive.
    std::vector<ContextualityScenario> corpus = {testutil::triangle(),
                                                 make_scenario({"0"}, {{"0"}})};
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 20; ++trial) corpus.push_back(testutil::random_scenario(rng));
    int hits = 0;
    for (const auto& H : corpus) {
        const auto u = has_unique_model(H);
        if (u.status != UniquenessResult::Status::Unique) continue;
        bool positive = true;
        for (const auto& q : u.model->values)
            if (q == 0) positive = false;
        if (!positive) continue;
        ++hits;
        CHECK(null_space(incidence_matrix(H)).empty());
    }
    CHECK(hits >= 2);  // at least the two hand-built ones
}

TEST_CASE("classify_model") {
    auto rep = classify_model(testutil::triangle(),
                              testutil::model_of({Q(1, 2), Q(1, 2), Q(1, 2)}));
    CHECK(rep.valid);
    CHECK_FALSE(rep.deterministic);
    CHECK_FALSE(rep.classical);
    CHECK(rep.extremal);
    CHECK(rep.indeterministic);
    CHECK(rep.support == std::vector<std::size_t>{0, 1, 2});

    rep = classify_model(testutil::single_edge(2), testutil::model_of({Q(1, 3), Q(2, 3)}));
    CHECK(rep.valid);
    CHECK_FALSE(rep.deterministic);
    CHECK(rep.classical);
    REQUIRE(rep.decomposition.has_value());
    CHECK_FALSE(rep.extremal);
    CHECK(rep.indeterministic);

    rep = classify_model(testutil::triangle(), testutil::model_of({Q(1), Q(0), Q(0)}));
    CHECK_FALSE(rep.valid);
    CHECK_FALSE(rep.indeterministic);
}

TEST_CASE("classification flag implications") {
    std::mt19937_64 rng(53);
    int checked = 0;
    for (int trial = 0; trial < 8; ++trial) {
        auto H = testutil::random_scenario(rng);
        for (const auto& p : enumerate_extremal(H, ExtremalMethod::DoubleDescription)) {
            const auto rep = classify_model(H, p);
            ++checked;
            if (rep.deterministic) {
                CHECK(rep.classical);
                CHECK(rep.extremal);
            }
            if (rep.classical) CHECK(rep.valid);
            CHECK(rep.indeterministic == (rep.valid && !rep.deterministic));
        }
    }
    CHECK(checked > 0);
}

TEST_SUITE_END();
