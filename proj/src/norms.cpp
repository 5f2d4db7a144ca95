#include "uinorm/norms.hpp"

#include "uinorm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace uinorm {

namespace {

void check_p(double p)
{
    if (std::isnan(p) || p < 1.0) {
        throw Error(ErrorKind::BadP, "norm exponent must satisfy p >= 1, got " + std::to_string(p));
    }
}

void check_k(std::size_t k, std::size_t dim)
{
    if (k < 1 || k > dim) {
        throw Error(ErrorKind::BadK,
                    "k = " + std::to_string(k) + " outside [1, " + std::to_string(dim) + "]");
    }
}

// Expects the k values already sorted by magnitude, descending.
double lp_of_sorted(std::span<const double> top, double p)
{
    if (std::isinf(p)) {
        return top.front();
    }
    if (p == 1.0) {
        double sum = 0.0;
        for (double v : top) {
            sum += v;
        }
        return sum;
    }
    if (p > kLogDomainExponent) {
        // log-sum-exp of p*log(x_j), divided by p
        const double largest = top.front();
        if (largest == 0.0) {
            return 0.0;
        }
        const double log_max = std::log(largest);
        double acc = 0.0;
        for (double v : top) {
            if (v > 0.0) {
                acc += std::exp(p * (std::log(v) - log_max));
            }
        }
        return std::exp(log_max + std::log(acc) / p);
    }
    double sum = 0.0;
    for (double v : top) {
        sum += std::pow(v, p);
    }
    return std::pow(sum, 1.0 / p);
}

} // namespace

double gauge_kp(std::span<const double> x, std::size_t k, double p)
{
    check_k(k, x.size());
    check_p(p);
    std::vector<double> mags(x.size());
    std::transform(x.begin(), x.end(), mags.begin(), [](double v) { return std::abs(v); });
    std::partial_sort(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(k), mags.end(),
                      std::greater<>());
    return lp_of_sorted(std::span<const double>(mags.data(), k), p);
}

double dimension_factor(double n, double p)
{
    if (std::isinf(p)) {
        return n;
    }
    return std::pow(n, (p - 1.0) / p);
}

double kp_norm(const ComplexMatrix& q, std::size_t k, double p, std::optional<std::size_t> ambient_dim)
{
    if (!q.is_square()) {
        throw Error(ErrorKind::NotSquare, "kp_norm needs a square matrix");
    }
    check_p(p);
    const std::size_t dim = ambient_dim.value_or(q.rows());
    if (dim < q.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "ambient dimension smaller than the matrix");
    }
    check_k(k, dim);
    auto sigma = singular_values(q);
    sigma.resize(dim, 0.0);
    return gauge_kp(sigma, k, p);
}

double kp_norm(const ComplexMatrix& q, NormParams params)
{
    return kp_norm(q, params.k, params.p);
}

double schatten_norm(const ComplexMatrix& q, double p)
{
    check_p(p);
    const auto sigma = singular_values(q);
    return gauge_kp(sigma, sigma.size(), p);
}

double kyfan_norm(const ComplexMatrix& q, std::size_t k)
{
    const auto sigma = singular_values(q, true);
    check_k(k, sigma.size());
    return gauge_kp(sigma, k, 1.0);
}

} // namespace uinorm
