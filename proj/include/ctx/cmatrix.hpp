#ifndef CTX_CMATRIX_HPP
#define CTX_CMATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace ctx {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. The quantum-side workhorse; exactness is
/// not attempted here, every consumer carries explicit tolerances.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    static CMat identity(std::size_t n);
    static CMat zero(std::size_t rows, std::size_t cols) { return CMat(rows, cols); }
    static CMat diagonal(const std::vector<double>& d);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    std::vector<Complex>& data() { return a_; }
    const std::vector<Complex>& data() const { return a_; }

    CMat adjoint() const;
    Complex trace() const;
    double frobenius() const;

    CMat operator+(const CMat&) const;
    CMat operator-(const CMat&) const;
    CMat operator*(const CMat&) const;
    CMat operator*(Complex s) const;
    CMat& operator+=(const CMat&);
    CMat& operator-=(const CMat&);

    /// Rectangular block copy, rows [r0, r0+nr) x cols [c0, c0+nc).
    CMat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    /// Writes B into this matrix with its (0,0) at (r0,c0).
    void place(std::size_t r0, std::size_t c0, const CMat& B);

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Complex> a_;
};

inline CMat operator*(Complex s, const CMat& m) { return m * s; }

CMat direct_sum(const CMat& A, const CMat& B);

/// ||M - M^dagger||_F.
double hermiticity_gap(const CMat& M);
bool is_hermitian(const CMat& M, double tau);

struct EigResult {
    std::vector<double> values;  // ascending
    CMat vectors;                // orthonormal columns, same order
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Sweeps run until the
/// off-diagonal Frobenius mass drops below 1e-12 * ||M||_F. Throws
/// std::invalid_argument when the input fails the Hermiticity tolerance.
EigResult hermitian_eig(const CMat& M, double herm_tol = 1e-9);

double min_eigenvalue(const CMat& M, double herm_tol = 1e-9);

/// Nearest PSD matrix in Frobenius norm: eigenvalues clipped at zero.
CMat psd_project(const CMat& M, double herm_tol = 1e-9);

/// Hermitian square root. Eigenvalues in [-psd_tol, 0) are treated as noise
/// and clipped; anything more negative is rejected.
CMat psd_sqrt(const CMat& M, double psd_tol = 1e-9);

}  // namespace ctx

#endif
