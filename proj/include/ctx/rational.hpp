#ifndef CTX_RATIONAL_HPP
#define CTX_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctx {

// Exact arithmetic used by every combinatorial decision in the toolkit.
// boost keeps rationals in lowest terms with a positive denominator, which is
// exactly the canonical form all serialization and comparisons rely on.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using RationalVector = std::vector<Rational>;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Parses "num/den" or plain "num". Throws std::invalid_argument on malformed
/// text or a zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical text form: "num/den", or just "num" when the denominator is 1.
std::string format_rational(const Rational& q);

/// Dense row-major matrix of exact rationals.
struct RationalMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> entries;  // rows * cols, row-major

    RationalMatrix() = default;
    RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
    RationalMatrix(std::size_t r, std::size_t c, std::vector<Rational> e)
        : rows(r), cols(c), entries(std::move(e)) {
        if (entries.size() != rows * cols)
            throw std::invalid_argument("RationalMatrix: entry count != rows*cols");
    }

    Rational& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    RationalVector row(std::size_t i) const {
        return RationalVector(entries.begin() + static_cast<std::ptrdiff_t>(i * cols),
                              entries.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
    }

    bool operator==(const RationalMatrix& o) const = default;
};

/// Builds a matrix from nested initializer-style data (row-major).
RationalMatrix matrix_from_rows(const std::vector<RationalVector>& rows);

RationalVector matvec(const RationalMatrix& A, const RationalVector& x);

/// Strict lexicographic order on rational vectors; the canonical order for
/// vertex sets and model lists.
bool lex_less(const RationalVector& a, const RationalVector& b);

}  // namespace ctx

#endif
