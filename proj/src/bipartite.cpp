#include "uinorm/bipartite.hpp"

#include "uinorm/errors.hpp"

#include <string>

namespace uinorm {

namespace {

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& w)
{
    return u * w * u.adjoint();
}

} // namespace

BipartiteOperator::BipartiteOperator(ComplexMatrix matrix, std::size_t dim_a, std::size_t dim_b)
    : matrix_(std::move(matrix)), dim_a_(dim_a), dim_b_(dim_b)
{
    if (dim_a == 0 || dim_b == 0 || !matrix_.is_square() || matrix_.rows() != dim_a * dim_b) {
        throw Error(ErrorKind::ShapeMismatch,
                    "bipartite dims " + std::to_string(dim_a) + "x" + std::to_string(dim_b) +
                        " do not match a " + std::to_string(matrix_.rows()) + "x" +
                        std::to_string(matrix_.cols()) + " matrix");
    }
}

ComplexMatrix BipartiteOperator::block(std::size_t i, std::size_t j) const
{
    ComplexMatrix out(dim_b_, dim_b_);
    for (std::size_t r = 0; r < dim_b_; ++r) {
        for (std::size_t c = 0; c < dim_b_; ++c) {
            out(r, c) = matrix_(i * dim_b_ + r, j * dim_b_ + c);
        }
    }
    return out;
}

ComplexMatrix partial_trace_b(const BipartiteOperator& w)
{
    const auto m = w.dim_a();
    const auto n = w.dim_b();
    ComplexMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            Complex t = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                t += w.matrix()(i * n + b, j * n + b);
            }
            out(i, j) = t;
        }
    }
    return out;
}

ComplexMatrix partial_trace_a(const BipartiteOperator& w)
{
    const auto m = w.dim_a();
    const auto n = w.dim_b();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += w.matrix()(i * n + r, i * n + c);
            }
        }
    }
    return out;
}

ComplexMatrix phase_average_b(const BipartiteOperator& w)
{
    const auto n = w.dim_b();
    const auto id_a = ComplexMatrix::identity(w.dim_a());
    const auto z = pauli_z(n);
    ComplexMatrix acc(w.matrix().rows(), w.matrix().cols());
    ComplexMatrix zj = ComplexMatrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) {
        acc += conjugate_by(kron(id_a, zj), w.matrix());
        zj = zj * z;
    }
    return acc * Complex(1.0 / static_cast<double>(n));
}

ComplexMatrix shift_sum_b(const BipartiteOperator& w)
{
    const auto n = w.dim_b();
    const auto id_a = ComplexMatrix::identity(w.dim_a());
    const auto x = pauli_x(n);
    ComplexMatrix acc(w.matrix().rows(), w.matrix().cols());
    ComplexMatrix xl = ComplexMatrix::identity(n);
    for (std::size_t l = 0; l < n; ++l) {
        acc += conjugate_by(kron(id_a, xl), w.matrix());
        xl = xl * x;
    }
    return acc;
}

ComplexMatrix twirl_oracle_b(const BipartiteOperator& w)
{
    const auto n = w.dim_b();
    const auto id_a = ComplexMatrix::identity(w.dim_a());
    const auto x = pauli_x(n);
    const auto z = pauli_z(n);
    ComplexMatrix acc(w.matrix().rows(), w.matrix().cols());
    ComplexMatrix xl = ComplexMatrix::identity(n);
    for (std::size_t l = 0; l < n; ++l) {
        ComplexMatrix xlzj = xl;
        for (std::size_t j = 0; j < n; ++j) {
            acc += conjugate_by(kron(id_a, xlzj), w.matrix());
            xlzj = xlzj * z;
        }
        xl = xl * x;
    }
    return acc * Complex(1.0 / static_cast<double>(n));
}

BipartiteOperator embed_a(const ComplexMatrix& a, std::size_t n)
{
    if (!a.is_square()) {
        throw Error(ErrorKind::NotSquare, "embed_a needs a square matrix");
    }
    return BipartiteOperator(kron(a, ComplexMatrix::identity(n)), a.rows(), n);
}

BipartiteOperator swap_factors(const BipartiteOperator& w)
{
    const auto m = w.dim_a();
    const auto n = w.dim_b();
    ComplexMatrix out(m * n, m * n);
    for (std::size_t a1 = 0; a1 < m; ++a1) {
        for (std::size_t b1 = 0; b1 < n; ++b1) {
            for (std::size_t a2 = 0; a2 < m; ++a2) {
                for (std::size_t b2 = 0; b2 < n; ++b2) {
                    out(b1 * m + a1, b2 * m + a2) = w.matrix()(a1 * n + b1, a2 * n + b2);
                }
            }
        }
    }
    return BipartiteOperator(std::move(out), n, m);
}

} // namespace uinorm
