#pragma once
// Test-only generators and brute-force oracles. Nothing here calls the
// routine it is used to check.

#include "uinorm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace testing {

using uinorm::Complex;
using uinorm::ComplexMatrix;

// Independent of the library sampler: different engine seeding and
// std::normal_distribution.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed ^ 0x5eedULL) {}

    double normal() { return dist_(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    std::size_t index(std::size_t lo, std::size_t hi)
    {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
    }

    ComplexMatrix ginibre(std::size_t rows, std::size_t cols)
    {
        ComplexMatrix g(rows, cols);
        for (auto& z : g.entries()) {
            z = {normal(), normal()};
        }
        return g;
    }

    ComplexMatrix psd(std::size_t n)
    {
        const auto g = ginibre(n, n);
        return g * g.adjoint();
    }

    // PSD of a prescribed rank.
    ComplexMatrix psd_rank(std::size_t n, std::size_t rank)
    {
        const auto g = ginibre(n, rank);
        return g * g.adjoint();
    }

    ComplexMatrix density(std::size_t n)
    {
        auto q = psd(n);
        return q * Complex(1.0 / q.trace().real());
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> dist_;
};

// Index-formula partial traces on the A-major layout (a*n + b).
inline ComplexMatrix brute_trace_b(const ComplexMatrix& w, std::size_t m, std::size_t n)
{
    ComplexMatrix out(m, m);
    for (std::size_t a1 = 0; a1 < m; ++a1) {
        for (std::size_t a2 = 0; a2 < m; ++a2) {
            for (std::size_t b = 0; b < n; ++b) {
                out(a1, a2) += w(a1 * n + b, a2 * n + b);
            }
        }
    }
    return out;
}

inline ComplexMatrix brute_trace_a(const ComplexMatrix& w, std::size_t m, std::size_t n)
{
    ComplexMatrix out(n, n);
    for (std::size_t b1 = 0; b1 < n; ++b1) {
        for (std::size_t b2 = 0; b2 < n; ++b2) {
            for (std::size_t a = 0; a < m; ++a) {
                out(b1, b2) += w(a * n + b1, a * n + b2);
            }
        }
    }
    return out;
}

// Singular values through the eigenvalues of Q^dagger Q, descending.
inline std::vector<double> gram_singular_values(const ComplexMatrix& q)
{
    const auto gram = q.cols() <= q.rows() ? q.adjoint() * q : q * q.adjoint();
    auto values = uinorm::hermitian_eigenvalues(gram);
    for (auto& v : values) {
        v = std::sqrt(std::max(v, 0.0));
    }
    std::reverse(values.begin(), values.end());
    return values;
}

inline double lp_top(std::vector<double> x, std::size_t k, double p)
{
    std::sort(x.begin(), x.end(), std::greater<>());
    if (std::isinf(p)) {
        return x.front();
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        sum += std::pow(x[j], p);
    }
    return std::pow(sum, 1.0 / p);
}

inline double lp_bottom(std::vector<double> x, std::size_t k, double p)
{
    std::sort(x.begin(), x.end());
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        if (x[j] > 0.0) {
            sum += std::pow(x[j], p);
        }
    }
    return std::pow(sum, 1.0 / p);
}

inline double rel_close(double a, double b)
{
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace testing
