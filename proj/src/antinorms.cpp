#include "uinorm/antinorms.hpp"

#include "uinorm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace uinorm {

namespace {

void check_k(std::size_t k, std::size_t dim)
{
    if (k < 1 || k > dim) {
        throw Error(ErrorKind::BadK,
                    "k = " + std::to_string(k) + " outside [1, " + std::to_string(dim) + "]");
    }
}

double power_sum(std::span<const double> values, double p)
{
    double sum = 0.0;
    for (double v : values) {
        if (v > 0.0) {
            sum += std::pow(v, p);
        }
    }
    return sum;
}

void check_antinorm_p(double p)
{
    if (std::isnan(p) || p <= 0.0 || p > 1.0) {
        throw Error(ErrorKind::BadP, "(k,p) anti-norm needs p in (0,1], got " + std::to_string(p));
    }
}

} // namespace

std::vector<double> psd_spectrum(const ComplexMatrix& q, double tol)
{
    if (!q.is_square()) {
        throw Error(ErrorKind::NotSquare, "anti-norms need a square matrix");
    }
    if (!is_hermitian(q, tol)) {
        throw Error(ErrorKind::NotPsd, "matrix is not Hermitian");
    }
    auto values = hermitian_eigenvalues(q, tol);
    const double scale = 1.0 + std::max(std::abs(values.front()), std::abs(values.back()));
    if (values.front() < -tol * scale) {
        throw Error(ErrorKind::NotPsd, "min eigenvalue " + std::to_string(values.front()));
    }
    for (auto& v : values) {
        v = std::max(v, 0.0);
    }
    return values;
}

double kyfan_antinorm(const ComplexMatrix& q, std::size_t k, double tol)
{
    const auto values = psd_spectrum(q, tol);
    check_k(k, values.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        sum += values[j];
    }
    return sum;
}

double schatten_antinorm(const ComplexMatrix& q, double p, double tol)
{
    if (std::isnan(p) || p == 0.0 || p > 1.0) {
        throw Error(ErrorKind::BadP, "anti-norm exponent must lie in (0,1] or be negative, got " +
                                         std::to_string(p));
    }
    const auto values = psd_spectrum(q, tol);
    if (p < 0.0) {
        const double floor = kPdFloorRel * (1.0 + values.back());
        if (values.front() <= floor) {
            throw Error(ErrorKind::SingularForNegativePower,
                        "negative exponent needs a strictly positive matrix, min eigenvalue " +
                            std::to_string(values.front()));
        }
    }
    if (p == 1.0) {
        double sum = 0.0;
        for (double v : values) {
            sum += v;
        }
        return sum;
    }
    return std::pow(power_sum(values, p), 1.0 / p);
}

double antigauge_kp(std::span<const double> ascending, std::size_t k, double p)
{
    check_antinorm_p(p);
    check_k(k, ascending.size());
    const auto smallest = ascending.first(k);
    if (p == 1.0) {
        double sum = 0.0;
        for (double v : smallest) {
            sum += v;
        }
        return sum;
    }
    return std::pow(power_sum(smallest, p), 1.0 / p);
}

double kp_antinorm(const ComplexMatrix& q, std::size_t k, double p, double tol,
                   std::optional<std::size_t> ambient_dim)
{
    check_antinorm_p(p);
    auto values = psd_spectrum(q, tol);
    const std::size_t dim = ambient_dim.value_or(values.size());
    if (dim < values.size()) {
        throw Error(ErrorKind::DimensionMismatch, "ambient dimension smaller than the matrix");
    }
    // Padding zeros sort ahead of every eigenvalue.
    values.insert(values.begin(), dim - values.size(), 0.0);
    return antigauge_kp(values, k, p);
}

double partial_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma, std::size_t k, double tol)
{
    if (!rho.is_square() || !sigma.is_square() || rho.rows() != sigma.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "partial_fidelity needs two square matrices of equal size");
    }
    const std::size_t m = rho.rows();
    check_k(k, m);
    const auto root_rho = psd_power(rho, 0.5, tol);
    const auto root_sigma = psd_power(sigma, 0.5, tol);
    if (k == m) {
        return 0.0;
    }
    const auto overlap = matrix_abs(root_rho * root_sigma);
    return kyfan_antinorm(overlap, m - k, tol);
}

} // namespace uinorm
