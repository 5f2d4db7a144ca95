#include "uinorm/linalg.hpp"

#include "uinorm/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace uinorm {

namespace {

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMatrix> as_eigen(const ComplexMatrix& m)
{
    return {m.entries().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

std::string shape_of(const ComplexMatrix& m)
{
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_square(const ComplexMatrix& m, const char* where)
{
    if (!m.is_square()) {
        throw Error(ErrorKind::NotSquare, std::string(where) + " needs a square matrix, got " + shape_of(m));
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* where)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(where) + ": " + shape_of(a) + " vs " + shape_of(b));
    }
}

} // namespace

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::SingularForNegativePower: return "SingularForNegativePower";
    case ErrorKind::BadK: return "BadK";
    case ErrorKind::BadP: return "BadP";
    case ErrorKind::BadDims: return "BadDims";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::NotDensity: return "NotDensity";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// ComplexMatrix
// ---------------------------------------------------------------------------

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols)
{
    if (rows == 0 || cols == 0) {
        throw Error(ErrorKind::BadDims, "matrix dimensions must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries))
{
    if (rows == 0 || cols == 0) {
        throw Error(ErrorKind::BadDims, "matrix dimensions must be positive");
    }
    if (entries_.size() != rows * cols) {
        throw Error(ErrorKind::ShapeMismatch, "entry count " + std::to_string(entries_.size()) +
                                                  " does not match " + std::to_string(rows) + "x" +
                                                  std::to_string(cols));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    if (rows_ == 0 || cols_ == 0) {
        throw Error(ErrorKind::BadDims, "matrix literal must be non-empty");
    }
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n)
{
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values)
{
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values)
{
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::adjoint() const
{
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const
{
    require_square(*this, "trace");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::max_abs() const noexcept
{
    double best = 0.0;
    for (const auto& z : entries_) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs)
{
    require_same_shape(*this, rhs, "matrix sum");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += rhs.entries_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs)
{
    require_same_shape(*this, rhs, "matrix difference");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= rhs.entries_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex c) noexcept
{
    for (auto& z : entries_) {
        z *= c;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs)
{
    if (lhs.cols() != rhs.rows()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix product " + shape_of(lhs) + " * " + shape_of(rhs));
    }
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t l = 0; l < lhs.cols(); ++l) {
            const Complex a = lhs(i, l);
            if (a == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < rhs.cols(); ++j) {
                out(i, j) += a * rhs(l, j);
            }
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b)
{
    require_same_shape(a, b, "max_abs_diff");
    double best = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        best = std::max(best, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return best;
}

// ---------------------------------------------------------------------------
// Predicates and spectra
// ---------------------------------------------------------------------------

bool is_hermitian(const ComplexMatrix& m, double tol)
{
    if (!m.is_square()) {
        return false;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return worst <= tol * (1.0 + m.max_abs());
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol)
{
    require_square(m, "hermitian_eigen");
    if (!is_hermitian(m, tol)) {
        throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian within tolerance");
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    const EigenMatrix sym = 0.5 * (as_eigen(m) + as_eigen(m).adjoint());
    Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(sym, Eigen::ComputeEigenvectors);

    HermitianEigen out;
    const auto n = m.rows();
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = solver.eigenvalues()(static_cast<Eigen::Index>(j));
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, j) = solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol)
{
    require_square(m, "hermitian_eigenvalues");
    if (!is_hermitian(m, tol)) {
        throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian within tolerance");
    }
    const EigenMatrix sym = 0.5 * (as_eigen(m) + as_eigen(m).adjoint());
    Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(sym, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    std::vector<double> values(ev.data(), ev.data() + ev.size());
    std::sort(values.begin(), values.end());
    return values;
}

bool is_psd(const ComplexMatrix& m, double tol)
{
    if (!is_hermitian(m, tol)) {
        return false;
    }
    const auto values = hermitian_eigenvalues(m, tol);
    const double spectral = std::max(std::abs(values.front()), std::abs(values.back()));
    return values.front() >= -tol * (1.0 + spectral);
}

std::vector<double> singular_values(const ComplexMatrix& q, bool pad_to_max)
{
    Eigen::JacobiSVD<EigenMatrix> svd(as_eigen(q));
    const auto& sv = svd.singularValues();
    std::vector<double> values(sv.data(), sv.data() + sv.size());
    std::sort(values.begin(), values.end(), std::greater<>());
    if (pad_to_max) {
        values.resize(std::max(q.rows(), q.cols()), 0.0);
    }
    return values;
}

double spectral_norm(const ComplexMatrix& q)
{
    return singular_values(q).front();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1) {
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const Complex s = a(i1, j1);
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2) {
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
                    out(i1 * b.rows() + i2, j1 * b.cols() + j2) = s * b(i2, j2);
                }
            }
        }
    }
    return out;
}

double pd_floor(const ComplexMatrix& q)
{
    return kPdFloorRel * (1.0 + spectral_norm(q));
}

ComplexMatrix psd_power(const ComplexMatrix& q, double t, double tol)
{
    require_square(q, "psd_power");
    if (!is_hermitian(q, tol)) {
        throw Error(ErrorKind::NotPsd, "psd_power: input is not Hermitian");
    }
    auto eig = hermitian_eigen(q, tol);
    const double scale = 1.0 + std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    if (eig.values.front() < -tol * scale) {
        throw Error(ErrorKind::NotPsd, "psd_power: min eigenvalue " + std::to_string(eig.values.front()));
    }
    if (t < 0.0 && eig.values.front() <= kPdFloorRel * scale) {
        throw Error(ErrorKind::SingularForNegativePower,
                    "psd_power: negative exponent on a matrix with min eigenvalue " +
                        std::to_string(eig.values.front()));
    }

    const auto n = q.rows();
    std::vector<double> powered(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double lambda = std::max(eig.values[j], 0.0);
        powered[j] = (lambda == 0.0 && t > 0.0) ? 0.0 : std::pow(lambda, t);
    }
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
                acc += eig.vectors(i, l) * powered[l] * std::conj(eig.vectors(j, l));
            }
            out(i, j) = acc;
        }
    }
    return out;
}

ComplexMatrix matrix_abs(const ComplexMatrix& q)
{
    return psd_power(q.adjoint() * q, 0.5);
}

ComplexMatrix pauli_x(std::size_t n)
{
    ComplexMatrix x(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        x((j + 1) % n, j) = 1.0;
    }
    return x;
}

ComplexMatrix pauli_z(std::size_t n)
{
    ComplexMatrix z(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        z(j, j) = std::polar(1.0, angle);
    }
    return z;
}

ComplexMatrix matrix_power(const ComplexMatrix& m, unsigned exponent)
{
    require_square(m, "matrix_power");
    ComplexMatrix result = ComplexMatrix::identity(m.rows());
    for (unsigned i = 0; i < exponent; ++i) {
        result = result * m;
    }
    return result;
}

} // namespace uinorm
