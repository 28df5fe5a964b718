#include "ctx/double_description.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace ctx {

namespace {

using IntVec = std::vector<Int>;

// Zero-coordinate set of a ray, one bit per ambient coordinate.
struct Mask {
    std::vector<std::uint64_t> w;

    static Mask zeros_of(const IntVec& v) {
        Mask m;
        m.w.assign((v.size() + 63) / 64, 0);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] == 0) m.w[i / 64] |= std::uint64_t(1) << (i % 64);
        return m;
    }

    static std::size_t common_count(const Mask& a, const Mask& b) {
        std::size_t c = 0;
        for (std::size_t k = 0; k < a.w.size(); ++k) c += std::popcount(a.w[k] & b.w[k]);
        return c;
    }
};

struct Ray {
    IntVec v;
    Mask zeros;
};

void canonicalize(IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
    if (g > 1)
        for (Int& x : v) x /= g;
}

Ray make_ray(IntVec v) {
    canonicalize(v);
    Mask z = Mask::zeros_of(v);
    return {std::move(v), std::move(z)};
}

// Fraction-free (Bareiss) rank of an integer matrix.
std::size_t int_rank(std::vector<IntVec> M) {
    if (M.empty()) return 0;
    const std::size_t rows = M.size(), cols = M[0].size();
    std::size_t r = 0;
    Int prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && M[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(M[sel], M[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                M[i][j] = (M[r][c] * M[i][j] - M[i][c] * M[r][j]) / prev;
            M[i][c] = 0;
        }
        prev = M[r][c];
        ++r;
    }
    return r;
}

Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<RationalVector> dd_vertices(const RationalMatrix& equalities,
                                        const RationalVector& rhs) {
    if (rhs.size() != equalities.rows)
        throw std::invalid_argument("dd_vertices: rhs length != row count");
    const std::size_t n = equalities.cols;
    const std::size_t dim = n + 1;  // homogenizing coordinate last

    // Integer rows of [A | -b], each scaled by the lcm of its denominators.
    std::vector<IntVec> hrows(equalities.rows);
    for (std::size_t i = 0; i < equalities.rows; ++i) {
        Int scale = 1;
        for (std::size_t j = 0; j < n; ++j)
            scale = boost::multiprecision::lcm(scale, denominator(equalities.at(i, j)));
        scale = boost::multiprecision::lcm(scale, denominator(rhs[i]));
        IntVec row(dim);
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& q = equalities.at(i, j);
            row[j] = numerator(q) * (scale / denominator(q));
        }
        row[n] = -numerator(rhs[i]) * (scale / denominator(rhs[i]));
        hrows[i] = std::move(row);
    }

    // Start from the nonnegative orthant.
    std::vector<Ray> rays;
    for (std::size_t i = 0; i < dim; ++i) {
        IntVec e(dim, Int(0));
        e[i] = 1;
        rays.push_back(make_ray(std::move(e)));
    }

    std::vector<IntVec> processed;
    for (const IntVec& h : hrows) {
        std::vector<Int> d(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) d[i] = dot(h, rays[i].v);

        std::vector<std::size_t> pos, neg, zero;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (d[i] > 0) pos.push_back(i);
            else if (d[i] < 0) neg.push_back(i);
            else zero.push_back(i);
        }

        // Adjacency of r,s in the current cone: the constraints active at
        // both (processed rows plus shared zero coordinates) must have rank
        // dim-2.
        auto adjacent = [&](std::size_t a, std::size_t b) {
            const std::size_t shared = Mask::common_count(rays[a].zeros, rays[b].zeros);
            if (shared + processed.size() < dim - 2) return false;
            std::vector<std::size_t> live_cols;
            for (std::size_t j = 0; j < dim; ++j) {
                const bool za = (rays[a].zeros.w[j / 64] >> (j % 64)) & 1;
                const bool zb = (rays[b].zeros.w[j / 64] >> (j % 64)) & 1;
                if (!(za && zb)) live_cols.push_back(j);
            }
            std::vector<IntVec> sub(processed.size(), IntVec(live_cols.size()));
            for (std::size_t i = 0; i < processed.size(); ++i)
                for (std::size_t j = 0; j < live_cols.size(); ++j)
                    sub[i][j] = processed[i][live_cols[j]];
            return shared + int_rank(std::move(sub)) == dim - 2;
        };

        std::set<IntVec> kept;
        for (std::size_t i : zero) kept.insert(rays[i].v);

        std::set<IntVec> fresh;
        for (std::size_t a : pos)
            for (std::size_t b : neg) {
                if (!adjacent(a, b)) continue;
                IntVec combo(dim);
                for (std::size_t j = 0; j < dim; ++j)
                    combo[j] = d[a] * rays[b].v[j] - d[b] * rays[a].v[j];
                canonicalize(combo);
                if (!kept.count(combo)) fresh.insert(std::move(combo));
            }

        std::vector<Ray> next;
        next.reserve(zero.size() + fresh.size());
        for (std::size_t i : zero) next.push_back(std::move(rays[i]));
        for (const IntVec& v : fresh) next.push_back(make_ray(v));
        rays = std::move(next);
        processed.push_back(h);
    }

    std::vector<RationalVector> vertices;
    bool has_recession = false;
    for (const Ray& r : rays) {
        if (r.v[n] == 0) {
            has_recession = true;
            continue;
        }
        RationalVector x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = Rational(r.v[j], r.v[n]);
        vertices.push_back(std::move(x));
    }
    if (has_recession && !vertices.empty())
        throw std::domain_error("dd_vertices: polyhedron is unbounded");

    std::sort(vertices.begin(), vertices.end(), lex_less);
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

}  // namespace ctx
