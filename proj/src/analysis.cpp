#include "ctx/analysis.hpp"

#include "ctx/double_description.hpp"
#include "ctx/linalg.hpp"
#include "ctx/simplex.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace ctx {

ProbabilisticModel deterministic_to_model(const ContextualityScenario& H,
                                          const DeterministicModel& d) {
    ProbabilisticModel p;
    p.values.assign(H.vertex_count(), Rational(0));
    for (auto v : d.support) p.values.at(v) = 1;
    return p;
}

std::vector<DeterministicModel> enumerate_deterministic(const ContextualityScenario& H) {
    const std::size_t nv = H.vertex_count();
    std::vector<std::size_t> order(H.edge_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return H.edges[a].size() < H.edges[b].size();
    });

    // edges_at[v]: edges containing v; hit[e]: chosen vertices inside e.
    std::vector<std::vector<std::size_t>> edges_at(nv);
    for (std::size_t e = 0; e < H.edges.size(); ++e)
        for (auto v : H.edges[e]) edges_at[v].push_back(e);

    std::vector<int> hit(H.edge_count(), 0);
    std::vector<std::size_t> chosen;
    std::vector<DeterministicModel> out;

    auto choose_ok = [&](std::size_t v) {
        for (auto e : edges_at[v])
            if (hit[e] > 0) return false;
        return true;
    };

    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == order.size()) {
            DeterministicModel d{chosen};
            std::sort(d.support.begin(), d.support.end());
            out.push_back(std::move(d));
            return;
        }
        const auto& e = H.edges[order[k]];
        if (hit[order[k]] > 0) {
            self(self, k + 1);
            return;
        }
        for (auto v : e) {
            if (!choose_ok(v)) continue;
            chosen.push_back(v);
            for (auto f : edges_at[v]) ++hit[f];
            self(self, k + 1);
            for (auto f : edges_at[v]) --hit[f];
            chosen.pop_back();
        }
    };
    rec(rec, 0);

    std::sort(out.begin(), out.end(),
              [](const DeterministicModel& a, const DeterministicModel& b) {
                  return a.support < b.support;
              });
    return out;
}

std::optional<ClassicalDecomposition> is_classical(const ContextualityScenario& H,
                                                   const ProbabilisticModel& p) {
    const auto dets = enumerate_deterministic(H);
    if (dets.empty()) return std::nullopt;
    const std::size_t k = dets.size();
    const std::size_t nv = H.vertex_count();

    LinearProgram lp;
    lp.objective.assign(k, Rational(0));
    lp.eq = RationalMatrix(nv + 1, k);
    lp.rhs.resize(nv + 1);
    for (std::size_t j = 0; j < k; ++j)
        for (auto v : dets[j].support) lp.eq.at(v, j) = 1;
    for (std::size_t v = 0; v < nv; ++v) lp.rhs[v] = p.values[v];
    for (std::size_t j = 0; j < k; ++j) lp.eq.at(nv, j) = 1;
    lp.rhs[nv] = 1;

    const LpResult r = lp_solve(lp, LpSense::Min);
    if (r.status != LpStatus::Optimal) return std::nullopt;

    ClassicalDecomposition dec;
    for (std::size_t j = 0; j < k; ++j) {
        if (r.point[j] == 0) continue;
        dec.weights.push_back(r.point[j]);
        dec.components.push_back(dets[j]);
    }
    return dec;
}

UniquenessResult has_unique_model(const ContextualityScenario& H) {
    const std::size_t nv = H.vertex_count();
    const RationalMatrix A = incidence_matrix(H);
    const RationalVector ones(A.rows, Rational(1));

    LinearProgram lp;
    lp.objective.assign(nv, Rational(0));
    lp.eq = A;
    lp.rhs = ones;

    UniquenessResult res;
    const LpResult feas = lp_solve(lp, LpSense::Min);
    if (feas.status != LpStatus::Optimal) return res;  // None

    ProbabilisticModel witness{feas.point};
    if (null_space(A).empty()) {
        res.status = UniquenessResult::Status::Unique;
        res.model = std::move(witness);
        return res;
    }

    for (std::size_t v = 0; v < nv; ++v) {
        lp.objective.assign(nv, Rational(0));
        lp.objective[v] = 1;
        const LpResult hi = lp_solve(lp, LpSense::Max);
        const LpResult lo = lp_solve(lp, LpSense::Min);
        if (hi.value != lo.value) {
            res.status = UniquenessResult::Status::Multiple;
            res.witnesses = {ProbabilisticModel{hi.point}, ProbabilisticModel{lo.point}};
            return res;
        }
    }
    res.status = UniquenessResult::Status::Unique;
    res.model = std::move(witness);
    return res;
}

ExtremalityCertificate is_extremal(const ContextualityScenario& H, const ProbabilisticModel& p) {
    const ValidationReport ok = validate_model(H, p);
    if (!ok.ok) throw std::invalid_argument("is_extremal: model invalid: " + ok.problems.front());

    ExtremalityCertificate cert;
    cert.support = support_of(p);
    const InducedScenario ind = induce(H, cert.support);
    // A valid model cannot vanish on a whole edge.
    if (ind.empty_edge)
        throw std::logic_error("is_extremal: support misses an edge of a valid model");
    cert.subscenario = has_unique_model(ind.scenario);
    cert.extremal = cert.subscenario.status == UniquenessResult::Status::Unique &&
                    cert.subscenario.model->values == restrict_values(p, cert.support);
    return cert;
}

namespace {

// Support-method fast path. With incidence rows restricted to a candidate
// subset the system is all 0/1 with unit rhs, so fraction-free elimination
// stays in int64 (minors of such systems are tiny at desk scale); the exact
// rational back-substitution only runs for full-rank consistent candidates.
//
// Returns the unique strictly positive solution of A_S p = 1, or nothing.
// "Underdetermined" is a rejection too: a consistent system with a kernel
// either has multiple models or the single model touches zero, and both fail
// the strictly-positive uniqueness required of a support.
struct SupportCheck {
    std::vector<std::vector<std::int64_t>> M;  // k x (s+1), rhs last

    std::optional<RationalVector> unique_positive() {
        const std::size_t rows = M.size();
        if (rows == 0) return std::nullopt;
        const std::size_t s = M[0].size() - 1;

        std::vector<std::size_t> pivot_row_of;  // per pivot column, in order
        std::vector<std::size_t> pivot_col_of;
        std::int64_t prev = 1;
        std::size_t r = 0;
        for (std::size_t c = 0; c < s && r < rows; ++c) {
            std::size_t sel = r;
            while (sel < rows && M[sel][c] == 0) ++sel;
            if (sel == rows) continue;
            std::swap(M[sel], M[r]);
            for (std::size_t i = r + 1; i < rows; ++i) {
                const std::int64_t f = M[i][c];
                for (std::size_t j = c + 1; j <= s; ++j) {
                    const __int128 t = static_cast<__int128>(M[r][c]) * M[i][j] -
                                       static_cast<__int128>(f) * M[r][j];
                    const __int128 q = t / prev;
                    if (q > INT64_MAX / 2 || q < INT64_MIN / 2)
                        throw std::overflow_error("support check overflow");
                    M[i][j] = static_cast<std::int64_t>(q);
                }
                M[i][c] = 0;
            }
            prev = M[r][c];
            pivot_row_of.push_back(r);
            pivot_col_of.push_back(c);
            ++r;
        }

        if (r < s) return std::nullopt;  // rank-deficient: kernel or inconsistency
        for (std::size_t i = r; i < rows; ++i)
            if (M[i][s] != 0) return std::nullopt;  // inconsistent

        // Back-substitute exactly; entries are small so this is cheap.
        RationalVector x(s);
        for (std::size_t k = s; k-- > 0;) {
            const std::size_t row = pivot_row_of[k];
            const std::size_t col = pivot_col_of[k];
            Rational acc = M[row][s];
            for (std::size_t j = col + 1; j < s; ++j)
                if (M[row][j] != 0) acc -= Rational(M[row][j]) * x[j];
            x[col] = acc / M[row][col];
            if (x[col] <= 0) return std::nullopt;  // strict positivity required
        }
        return x;
    }
};

// Exact fallback used when the int64 path cannot be trusted.
std::optional<RationalVector> unique_positive_rational(const RationalMatrix& A) {
    const RationalVector ones(A.rows, Rational(1));
    const SolveResult sol = solve_unique(A, ones);
    if (sol.status != SolveStatus::Unique) return std::nullopt;
    for (const auto& q : sol.x)
        if (q <= 0) return std::nullopt;
    return sol.x;
}

std::vector<ProbabilisticModel> enumerate_extremal_support(const ContextualityScenario& H) {
    const std::size_t nv = H.vertex_count();
    std::vector<ProbabilisticModel> out;
    if (nv == 0) {
        out.push_back(ProbabilisticModel{{}});
        return out;
    }

    std::vector<std::vector<std::size_t>> edges_at(nv);
    for (std::size_t e = 0; e < H.edges.size(); ++e)
        for (auto v : H.edges[e]) edges_at[v].push_back(e);

    // remaining[e]: undecided members; included[e]: members already in S.
    std::vector<int> remaining(H.edge_count(), 0);
    std::vector<int> included(H.edge_count(), 0);
    for (std::size_t e = 0; e < H.edges.size(); ++e)
        remaining[e] = static_cast<int>(H.edges[e].size());

    std::vector<std::size_t> subset;

    auto test_candidate = [&]() {
        // Distinct nonempty edge intersections with the candidate subset.
        std::vector<std::size_t> pos_of(nv, SIZE_MAX);
        for (std::size_t i = 0; i < subset.size(); ++i) pos_of[subset[i]] = i;
        std::set<std::vector<std::size_t>> cuts;
        for (const auto& e : H.edges) {
            std::vector<std::size_t> cut;
            for (auto v : e)
                if (pos_of[v] != SIZE_MAX) cut.push_back(pos_of[v]);
            cuts.insert(std::move(cut));
        }

        std::optional<RationalVector> x;
        try {
            SupportCheck chk;
            chk.M.reserve(cuts.size());
            for (const auto& cut : cuts) {
                std::vector<std::int64_t> row(subset.size() + 1, 0);
                for (auto j : cut) row[j] = 1;
                row[subset.size()] = 1;
                chk.M.push_back(std::move(row));
            }
            x = chk.unique_positive();
        } catch (const std::overflow_error&) {
            std::vector<std::vector<std::size_t>> rows(cuts.begin(), cuts.end());
            RationalMatrix A(rows.size(), subset.size());
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (auto j : rows[i]) A.at(i, j) = 1;
            x = unique_positive_rational(A);
        }
        if (!x) return;

        ProbabilisticModel p;
        p.values.assign(nv, Rational(0));
        for (std::size_t i = 0; i < subset.size(); ++i) p.values[subset[i]] = (*x)[i];
        out.push_back(std::move(p));
    };

    auto rec = [&](auto&& self, std::size_t v) -> void {
        if (v == nv) {
            if (!subset.empty()) test_candidate();
            return;
        }
        // Include v.
        subset.push_back(v);
        for (auto e : edges_at[v]) ++included[e], --remaining[e];
        self(self, v + 1);
        subset.pop_back();
        for (auto e : edges_at[v]) --included[e], ++remaining[e];

        // Exclude v, unless that starves an edge.
        bool dead = false;
        for (auto e : edges_at[v])
            if (included[e] == 0 && remaining[e] == 1) { dead = true; break; }
        if (dead) return;
        for (auto e : edges_at[v]) --remaining[e];
        self(self, v + 1);
        for (auto e : edges_at[v]) ++remaining[e];
    };
    rec(rec, 0);

    std::sort(out.begin(), out.end(), [](const ProbabilisticModel& a, const ProbabilisticModel& b) {
        return lex_less(a.values, b.values);
    });
    return out;
}

}  // namespace

std::vector<ProbabilisticModel> enumerate_extremal(const ContextualityScenario& H,
                                                   ExtremalMethod method) {
    if (method == ExtremalMethod::Support) return enumerate_extremal_support(H);

    if (H.vertex_count() == 0) return {ProbabilisticModel{{}}};
    const RationalMatrix A = incidence_matrix(H);
    const RationalVector ones(A.rows, Rational(1));
    std::vector<ProbabilisticModel> out;
    for (auto& v : dd_vertices(A, ones)) out.push_back(ProbabilisticModel{std::move(v)});
    return out;
}

ClassificationReport classify_model(const ContextualityScenario& H, const ProbabilisticModel& p) {
    ClassificationReport rep;
    rep.valid = p.values.size() == H.vertex_count() && validate_model(H, p).ok;
    if (p.values.size() == H.vertex_count()) rep.support = support_of(p);
    if (!rep.valid) return rep;

    rep.deterministic = true;
    for (const auto& q : p.values)
        if (q != 0 && q != 1) { rep.deterministic = false; break; }

    rep.decomposition = is_classical(H, p);
    rep.classical = rep.decomposition.has_value();
    rep.extremal = is_extremal(H, p).extremal;
    rep.indeterministic = !rep.deterministic;
    return rep;
}

}  // namespace ctx
