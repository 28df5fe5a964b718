#include "ctx/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ctx {

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::diagonal(const std::vector<double>& d) {
    CMat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMat CMat::adjoint() const {
    CMat m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Complex CMat::trace() const {
    Complex t = 0;
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
}

double CMat::frobenius() const {
    double s = 0;
    for (const Complex& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

CMat CMat::operator+(const CMat& o) const {
    CMat m = *this;
    m += o;
    return m;
}

CMat CMat::operator-(const CMat& o) const {
    CMat m = *this;
    m -= o;
    return m;
}

CMat& CMat::operator+=(const CMat& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("CMat: shape mismatch in +");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

CMat& CMat::operator-=(const CMat& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("CMat: shape mismatch in -");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

CMat CMat::operator*(const CMat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("CMat: shape mismatch in *");
    CMat m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex(0)) continue;
            for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += aik * o(k, j);
        }
    return m;
}

CMat CMat::operator*(Complex s) const {
    CMat m = *this;
    for (Complex& z : m.a_) z *= s;
    return m;
}

CMat CMat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > r_ || c0 + nc > c_) throw std::invalid_argument("CMat: block out of range");
    CMat m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void CMat::place(std::size_t r0, std::size_t c0, const CMat& B) {
    if (r0 + B.rows() > r_ || c0 + B.cols() > c_)
        throw std::invalid_argument("CMat: place out of range");
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) (*this)(r0 + i, c0 + j) = B(i, j);
}

CMat direct_sum(const CMat& A, const CMat& B) {
    CMat m(A.rows() + B.rows(), A.cols() + B.cols());
    m.place(0, 0, A);
    m.place(A.rows(), A.cols(), B);
    return m;
}

double hermiticity_gap(const CMat& M) {
    if (!M.square()) return std::numeric_limits<double>::infinity();
    double s = 0;
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            s += std::norm(M(i, j) - std::conj(M(j, i)));
    return std::sqrt(s);
}

bool is_hermitian(const CMat& M, double tau) {
    return M.square() && hermiticity_gap(M) <= tau * std::max(1.0, M.frobenius());
}

EigResult hermitian_eig(const CMat& M, double herm_tol) {
    if (!is_hermitian(M, herm_tol))
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
    const std::size_t n = M.rows();

    CMat A = M;
    // Symmetrize away the sub-tolerance asymmetry so rotations see exact
    // Hermitian data.
    for (std::size_t i = 0; i < n; ++i) {
        A(i, i) = Complex(A(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (A(i, j) + std::conj(A(j, i)));
            A(i, j) = avg;
            A(j, i) = std::conj(avg);
        }
    }
    CMat V = CMat::identity(n);

    const double target = 1e-12 * M.frobenius();
    // Entries this small cannot lift the off-diagonal mass above target, and
    // rotating on them is numerically pointless (|beta|^2 would denormalize).
    const double negligible = target / (10.0 * static_cast<double>(n) + 10.0);
    auto off_norm = [&]() {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(A(i, j));
        return std::sqrt(s);
    };

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex beta = A(p, q);
                const double ab = std::abs(beta);
                if (ab <= negligible) continue;
                const double alpha = A(p, p).real();
                const double gamma = A(q, q).real();
                // Small-angle rotation from the block eigenvalue closer to
                // alpha. Everything is parametrized by u = -t/|beta| in
                // [-1,1] (cancellation-free root of the 2x2 characteristic
                // equation), so no quantity ever under- or overflows.
                const double delta = 0.5 * (gamma - alpha);
                const double rad = std::hypot(delta, ab);
                const double denom = delta >= 0 ? delta + rad : delta - rad;
                const double u = ab / denom;
                const double scale = std::sqrt(1.0 + u * u);
                const Complex upp = (beta / ab) / scale;  // first column (p row)
                const double uqp = -u / scale;            // first column (q row)
                const Complex upq = Complex(-uqp, 0.0);   // second column
                const Complex uqq = std::conj(upp);

                for (std::size_t k = 0; k < n; ++k) {  // A <- A U
                    const Complex ap = A(k, p), aq = A(k, q);
                    A(k, p) = ap * upp + aq * uqp;
                    A(k, q) = ap * upq + aq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // A <- U^dagger A
                    const Complex ap = A(p, k), aq = A(q, k);
                    A(p, k) = std::conj(upp) * ap + uqp * aq;
                    A(q, k) = std::conj(upq) * ap + std::conj(uqq) * aq;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                A(p, p) = Complex(A(p, p).real(), 0.0);
                A(q, q) = Complex(A(q, q).real(), 0.0);

                for (std::size_t k = 0; k < n; ++k) {  // V <- V U
                    const Complex vp = V(k, p), vq = V(k, q);
                    V(k, p) = vp * upp + vq * uqp;
                    V(k, q) = vp * upq + vq * uqq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return A(a, a).real() < A(b, b).real(); });

    EigResult res;
    res.values.resize(n);
    res.vectors = CMat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        res.values[j] = A(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) res.vectors(i, j) = V(i, order[j]);
    }
    return res;
}

double min_eigenvalue(const CMat& M, double herm_tol) {
    const EigResult e = hermitian_eig(M, herm_tol);
    return e.values.empty() ? 0.0 : e.values.front();
}

CMat psd_project(const CMat& M, double herm_tol) {
    const EigResult e = hermitian_eig(M, herm_tol);
    const std::size_t n = M.rows();
    CMat out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (e.values[k] <= 0) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += e.values[k] * e.vectors(i, k) * std::conj(e.vectors(j, k));
    }
    return out;
}

CMat psd_sqrt(const CMat& M, double psd_tol) {
    const EigResult e = hermitian_eig(M);
    const std::size_t n = M.rows();
    CMat out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (e.values[k] < -psd_tol)
            throw std::invalid_argument("psd_sqrt: matrix is not positive semidefinite");
        if (e.values[k] <= 0) continue;
        const double s = std::sqrt(e.values[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += s * e.vectors(i, k) * std::conj(e.vectors(j, k));
    }
    return out;
}

}  // namespace ctx
