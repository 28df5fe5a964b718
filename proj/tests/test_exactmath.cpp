#include "ctx/double_description.hpp"
#include "ctx/linalg.hpp"
#include "ctx/simplex.hpp"

#include "testutil.hpp"

#include <doctest.h>

using namespace ctx;
using testutil::Q;

TEST_SUITE_BEGIN("exactmath");

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("1/2") == Q(1, 2));
    CHECK(parse_rational("-3") == Q(-3));
    CHECK(parse_rational("4/6") == Q(2, 3));  // canonicalized
    CHECK(format_rational(Q(2, 4)) == "1/2");
    CHECK(format_rational(Q(-1, 2)) == "-1/2");
    CHECK(format_rational(Q(7)) == "7");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
}

TEST_CASE("rationals stay canonical under arithmetic") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Rational a = Q(static_cast<long long>(rng() % 41) - 20, 1 + rng() % 12);
        Rational b = Q(static_cast<long long>(rng() % 41) - 20, 1 + rng() % 12);
        for (const Rational& q : {Rational(a + b), Rational(a * b), Rational(a - b)}) {
            CHECK(denominator(q) > 0);
            CHECK(boost::multiprecision::gcd(numerator(q), denominator(q)) == 1);
        }
    }
}

TEST_CASE("null_space: frozen cases") {
    // Triangle incidence: full column rank, trivial kernel.
    RationalMatrix tri = matrix_from_rows({{Q(1), Q(1), Q(0)},
                                           {Q(0), Q(1), Q(1)},
                                           {Q(1), Q(0), Q(1)}});
    CHECK(null_space(tri).empty());

    auto basis = null_space(matrix_from_rows({{Q(1), Q(1)}}));
    REQUIRE(basis.size() == 1);
    // RREF basis: free column gets 1, pivot column the negated coefficient.
    CHECK(basis[0] == RationalVector{Q(-1), Q(1)});

    auto zero = null_space(matrix_from_rows({{Q(0)}}));
    REQUIRE(zero.size() == 1);
    CHECK(zero[0] == RationalVector{Q(1)});
}

TEST_CASE("null_space: exactness and dimension count") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 6;
        RationalMatrix A(rows, cols);
        for (auto& e : A.entries) e = Q(static_cast<long long>(rng() % 7) - 3);
        const auto basis = null_space(A);
        CHECK(basis.size() == cols - rank(A));
        for (const auto& x : basis) {
            const auto y = matvec(A, x);
            for (const auto& v : y) CHECK(v == 0);
        }
    }
}

TEST_CASE("lp_solve: frozen cases") {
    LinearProgram lp;
    lp.objective = {Q(1), Q(0)};
    lp.eq = matrix_from_rows({{Q(1), Q(1)}});
    lp.rhs = {Q(1)};

    auto r = lp_solve(lp, LpSense::Max);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == 1);
    CHECK(r.point == RationalVector{Q(1), Q(0)});

    // Triangle system pins the unique point (1/2,1/2,1/2).
    lp.objective = {Q(1), Q(0), Q(0)};
    lp.eq = matrix_from_rows({{Q(1), Q(1), Q(0)}, {Q(0), Q(1), Q(1)}, {Q(1), Q(0), Q(1)}});
    lp.rhs = {Q(1), Q(1), Q(1)};
    r = lp_solve(lp, LpSense::Max);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Q(1, 2));
    CHECK(r.point == RationalVector{Q(1, 2), Q(1, 2), Q(1, 2)});

    lp.objective = {Q(0), Q(0)};
    lp.eq = matrix_from_rows({{Q(1), Q(1)}, {Q(1), Q(1)}});
    lp.rhs = {Q(1), Q(2)};
    CHECK(lp_solve(lp, LpSense::Min).status == LpStatus::Infeasible);
}

TEST_CASE("lp_solve: unbounded and free variables") {
    LinearProgram lp;
    lp.objective = {Q(1)};
    lp.eq = RationalMatrix(0, 1);
    lp.rhs = {};
    CHECK(lp_solve(lp, LpSense::Max).status == LpStatus::Unbounded);
    auto r = lp_solve(lp, LpSense::Min);  // x >= 0, minimize x
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == 0);

    // Free variable: minimize x subject to x + y = 1, y >= 0 is unbounded.
    lp.objective = {Q(1), Q(0)};
    lp.eq = matrix_from_rows({{Q(1), Q(1)}});
    lp.rhs = {Q(1)};
    lp.nonneg = {false, true};
    CHECK(lp_solve(lp, LpSense::Min).status == LpStatus::Unbounded);
    r = lp_solve(lp, LpSense::Max);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == 1);  // y = 0, x = 1
}

TEST_CASE("lp_solve: solution satisfies constraints exactly") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = 1 + rng() % 3, cols = rows + rng() % 4;
        LinearProgram lp;
        lp.eq = RationalMatrix(rows, cols);
        for (auto& e : lp.eq.entries) e = Q(static_cast<long long>(rng() % 5) - 1);
        lp.rhs.assign(rows, Q(1));
        lp.objective.resize(cols);
        for (auto& c : lp.objective) c = Q(static_cast<long long>(rng() % 9) - 4);
        const auto r = lp_solve(lp, rng() % 2 ? LpSense::Max : LpSense::Min);
        if (r.status != LpStatus::Optimal) continue;
        const auto y = matvec(lp.eq, r.point);
        for (std::size_t i = 0; i < rows; ++i) CHECK(y[i] == lp.rhs[i]);
        for (const auto& x : r.point) CHECK(x >= 0);
    }
}

TEST_CASE("dd_vertices: frozen cases") {
    auto vs = dd_vertices(matrix_from_rows({{Q(1), Q(1)}}), {Q(1)});
    REQUIRE(vs.size() == 2);
    CHECK(vs[0] == RationalVector{Q(0), Q(1)});
    CHECK(vs[1] == RationalVector{Q(1), Q(0)});

    vs = dd_vertices(matrix_from_rows({{Q(1), Q(1), Q(0)},
                                       {Q(0), Q(1), Q(1)},
                                       {Q(1), Q(0), Q(1)}}),
                     {Q(1), Q(1), Q(1)});
    REQUIRE(vs.size() == 1);
    CHECK(vs[0] == RationalVector{Q(1, 2), Q(1, 2), Q(1, 2)});

    // Empty polytope.
    vs = dd_vertices(matrix_from_rows({{Q(1), Q(1)}, {Q(1), Q(1)}}), {Q(1), Q(2)});
    CHECK(vs.empty());
}

TEST_CASE("dd_vertices: unbounded detection") {
    // x0 - x1 = 0, x >= 0 is an unbounded ray through the vertex 0.
    CHECK_THROWS_AS(dd_vertices(matrix_from_rows({{Q(1), Q(-1)}}), {Q(0)}),
                    std::domain_error);
}

TEST_CASE("dd_vertices: every vertex satisfies the system exactly") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        auto H = testutil::random_scenario(rng);
        const RationalMatrix A = incidence_matrix(H);
        const RationalVector b(A.rows, Q(1));
        const auto vs = dd_vertices(A, b);
        for (const auto& v : vs) {
            for (const auto& x : v) CHECK(x >= 0);
            const auto y = matvec(A, v);
            for (const auto& e : y) CHECK(e == 1);
        }
        // pairwise distinct by construction
        for (std::size_t i = 1; i < vs.size(); ++i) CHECK(lex_less(vs[i - 1], vs[i]));
    }
}

TEST_CASE("lp optimum is attained at a dd vertex") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        auto H = testutil::random_scenario(rng);
        if (H.vertex_count() > 20) continue;
        const RationalMatrix A = incidence_matrix(H);
        const RationalVector b(A.rows, Q(1));
        const auto vs = dd_vertices(A, b);

        LinearProgram lp;
        lp.eq = A;
        lp.rhs = b;
        lp.objective.resize(A.cols);
        for (auto& c : lp.objective) c = Q(static_cast<long long>(rng() % 11) - 5);
        const auto r = lp_solve(lp, LpSense::Max);
        if (r.status != LpStatus::Optimal) {
            CHECK(vs.empty());
            continue;
        }
        bool attained = false;
        for (const auto& v : vs) {
            Rational val = 0;
            for (std::size_t j = 0; j < v.size(); ++j) val += lp.objective[j] * v[j];
            if (val == r.value) attained = true;
        }
        CHECK(attained);
    }
}

TEST_SUITE_END();
