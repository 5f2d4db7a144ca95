#include "uinorm/channels.hpp"

#include "uinorm/bipartite.hpp"
#include "uinorm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace uinorm {

StinespringChannel::StinespringChannel(ComplexMatrix v, std::size_t dim_in, std::size_t dim_out,
                                       std::size_t dim_env, double tol)
    : v_(std::move(v)), dim_in_(dim_in), dim_out_(dim_out), dim_env_(dim_env)
{
    if (dim_in == 0 || dim_out == 0 || dim_env == 0 || v_.cols() != dim_in ||
        v_.rows() != dim_out * dim_env) {
        throw Error(ErrorKind::ShapeMismatch,
                    "isometry of shape " + std::to_string(v_.rows()) + "x" + std::to_string(v_.cols()) +
                        " does not match dims in=" + std::to_string(dim_in) + " out=" +
                        std::to_string(dim_out) + " env=" + std::to_string(dim_env));
    }
    if (!validate_isometry(v_, tol)) {
        throw Error(ErrorKind::NotTracePreserving, "V^dagger V differs from the identity");
    }
}

bool validate_isometry(const ComplexMatrix& v, double tol)
{
    if (v.rows() < v.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "a " + std::to_string(v.rows()) + "x" +
                                                  std::to_string(v.cols()) + " matrix cannot be an isometry");
    }
    const double scale = 1.0 + v.max_abs() * v.max_abs();
    return max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(v.cols())) <= tol * scale;
}

StinespringChannel kraus_to_stinespring(std::span<const ComplexMatrix> kraus, double tol)
{
    if (kraus.empty()) {
        throw Error(ErrorKind::BadParams, "empty Kraus set");
    }
    const auto n = kraus.front().rows();
    const auto m = kraus.front().cols();
    const auto d = kraus.size();
    for (const auto& k : kraus) {
        if (k.rows() != n || k.cols() != m) {
            throw Error(ErrorKind::DimensionMismatch, "Kraus operators must share one shape");
        }
    }
    ComplexMatrix v(n * d, m);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t a = 0; a < m; ++a) {
                v(b * d + c, a) = kraus[c](b, a);
            }
        }
    }
    if (n * d < m || !validate_isometry(v, tol)) {
        throw Error(ErrorKind::NotTracePreserving, "sum of K^dagger K is not the identity");
    }
    return StinespringChannel(std::move(v), m, n, d, tol);
}

std::vector<ComplexMatrix> kraus_operators(const StinespringChannel& ch)
{
    const auto n = ch.dim_out();
    const auto m = ch.dim_in();
    const auto d = ch.dim_env();
    std::vector<ComplexMatrix> out(d, ComplexMatrix(n, m));
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t a = 0; a < m; ++a) {
                out[c](b, a) = ch.v()(b * d + c, a);
            }
        }
    }
    return out;
}

StinespringChannel partial_trace_channel(std::size_t dim_a, std::size_t dim_b)
{
    return StinespringChannel(ComplexMatrix::identity(dim_a * dim_b), dim_a * dim_b, dim_a, dim_b);
}

ComplexMatrix apply(const StinespringChannel& ch, const ComplexMatrix& q)
{
    if (!q.is_square() || q.rows() != ch.dim_in()) {
        throw Error(ErrorKind::DimensionMismatch, "channel input must be " + std::to_string(ch.dim_in()) +
                                                      "x" + std::to_string(ch.dim_in()));
    }
    const BipartiteOperator dilated(ch.v() * q * ch.v().adjoint(), ch.dim_out(), ch.dim_env());
    return partial_trace_b(dilated);
}

ComplexMatrix choi_matrix(const StinespringChannel& ch)
{
    const auto m = ch.dim_in();
    const auto n = ch.dim_out();
    ComplexMatrix out(n * m, n * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            ComplexMatrix unit(m, m);
            unit(i, j) = 1.0;
            out += kron(apply(ch, unit), unit);
        }
    }
    return out;
}

std::size_t choi_rank(const StinespringChannel& ch, double tol)
{
    const auto values = hermitian_eigenvalues(choi_matrix(ch));
    const double top = values.back();
    if (top <= 0.0) {
        return 0;
    }
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [&](double v) { return v > tol * top; }));
}

bool singular_value_conjugation_check(const ComplexMatrix& v, const ComplexMatrix& q, double tol)
{
    if (v.rows() < v.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "V must have at least as many rows as columns");
    }
    if (!q.is_square() || q.rows() != v.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "Q must be square and match the columns of V");
    }
    auto outer = singular_values(v * q * v.adjoint());
    auto inner = singular_values(q);
    const double scale = std::max({1.0, outer.front(), inner.front()});
    const auto drop_zeros = [&](std::vector<double>& s) {
        s.erase(std::remove_if(s.begin(), s.end(), [&](double x) { return x <= tol * scale; }), s.end());
    };
    drop_zeros(outer);
    drop_zeros(inner);
    if (outer.size() != inner.size()) {
        return false;
    }
    for (std::size_t i = 0; i < outer.size(); ++i) {
        if (std::abs(outer[i] - inner[i]) > tol * scale) {
            return false;
        }
    }
    return true;
}

bool singular_value_conjugation_check(const StinespringChannel& ch, const ComplexMatrix& q, double tol)
{
    return singular_value_conjugation_check(ch.v(), q, tol);
}

} // namespace uinorm
