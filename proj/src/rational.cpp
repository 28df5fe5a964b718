#include "ctx/rational.hpp"

namespace ctx {

Rational parse_rational(const std::string& text) {
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(text)) throw std::invalid_argument("");
            return Rational(Int(text));
        }
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) throw std::invalid_argument("");
        Int d(den);
        if (d == 0) throw std::invalid_argument("");
        return Rational(Int(num), d);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: \"" + text + "\"");
    }
}

std::string format_rational(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

RationalMatrix matrix_from_rows(const std::vector<RationalVector>& rows) {
    if (rows.empty()) return RationalMatrix(0, 0);
    RationalMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols)
            throw std::invalid_argument("matrix_from_rows: ragged rows");
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RationalVector matvec(const RationalMatrix& A, const RationalVector& x) {
    if (x.size() != A.cols) throw std::invalid_argument("matvec: size mismatch");
    RationalVector y(A.rows);
    for (std::size_t i = 0; i < A.rows; ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < A.cols; ++j)
            if (A.at(i, j) != 0) acc += A.at(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

bool lex_less(const RationalVector& a, const RationalVector& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
}

}  // namespace ctx
