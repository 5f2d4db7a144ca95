#pragma once
//
// Dense complex matrices and the spectral kernels the rest of the toolkit
// is built on. Dimensions are small (tens), so everything is dense.
//

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace uinorm {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPdFloorRel = 1e-8;

/// Row-major dense complex matrix with value semantics.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return entries_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return entries_; }
    std::span<Complex> entries() noexcept { return entries_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double max_abs() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex c) noexcept;

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix m, Complex c) noexcept { return m *= c; }
    friend ComplexMatrix operator*(Complex c, ComplexMatrix m) noexcept { return m *= c; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Largest entrywise modulus of A - B; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// max |M_ij - conj(M_ji)| <= tol * (1 + max |M|)
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);
// Hermitian and min eigenvalue >= -tol * (1 + spectral norm)
bool is_psd(const ComplexMatrix& m, double tol = kHermitianTol);

struct HermitianEigen {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // columns are eigenvectors
};

/// Full decomposition M = U diag(values) U^dagger. Throws NotSquare / NotHermitian.
HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol = kHermitianTol);

/// Eigenvalues of a Hermitian matrix in ascending order.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol = kHermitianTol);

/// Singular values in descending order. By default min(rows, cols) values are
/// returned; with pad_to_max the list is extended by zeros to max(rows, cols).
std::vector<double> singular_values(const ComplexMatrix& q, bool pad_to_max = false);

double spectral_norm(const ComplexMatrix& q);

/// Kronecker product, A-index major: (i1*rB + i2, j1*cB + j2) = A(i1,j1) B(i2,j2).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// pd_floor = 1e-8 * (1 + spectral norm); the threshold below which a PSD
/// matrix is considered singular for negative powers.
double pd_floor(const ComplexMatrix& q);

/// Spectral calculus U diag(lambda^t) U^dagger on a PSD matrix.
/// Eigenvalues in (-tol*scale, 0) are clamped to zero. For t < 0 the matrix
/// must be strictly positive (min eigenvalue > pd_floor).
ComplexMatrix psd_power(const ComplexMatrix& q, double t, double tol = kHermitianTol);

/// |Q| = (Q^dagger Q)^{1/2}.
ComplexMatrix matrix_abs(const ComplexMatrix& q);

/// Generalized Pauli shift: X|f_j> = |f_{(j+1) mod n}>.
ComplexMatrix pauli_x(std::size_t n);
/// Generalized Pauli phase: Z|f_j> = exp(2 pi i j / n)|f_j>.
ComplexMatrix pauli_z(std::size_t n);

ComplexMatrix matrix_power(const ComplexMatrix& m, unsigned exponent);

} // namespace uinorm
