#include "uinorm/entropy.hpp"

#include "uinorm/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace uinorm {

namespace {

void check_alpha(double alpha)
{
    if (!(alpha > 0.0) || std::isinf(alpha)) {
        throw Error(ErrorKind::BadParams, "entropy order alpha must be positive and finite");
    }
}

bool alpha_is_one(double alpha) { return std::abs(alpha - 1.0) < kAlphaOneThreshold; }
bool s_is_zero(double s) { return std::abs(s) < kSZeroThreshold; }

// Eigenvalues of a validated density with the negligible ones dropped.
std::vector<double> density_spectrum(const ComplexMatrix& rho, double tol)
{
    require_density(rho, tol);
    std::vector<double> kept;
    for (double v : hermitian_eigenvalues(rho)) {
        if (v >= kEntropyEigenFloor) {
            kept.push_back(v);
        }
    }
    return kept;
}

double trace_power(const std::vector<double>& spectrum, double alpha)
{
    double sum = 0.0;
    for (double v : spectrum) {
        sum += std::pow(v, alpha);
    }
    return sum;
}

double shannon_of(const std::vector<double>& spectrum)
{
    double h = 0.0;
    for (double v : spectrum) {
        h -= v * std::log(v);
    }
    return h;
}

} // namespace

double alpha_log(double x, double alpha)
{
    if (!(x > 0.0)) {
        throw Error(ErrorKind::DomainError, "alpha-logarithm needs x > 0, got " + std::to_string(x));
    }
    if (alpha_is_one(alpha)) {
        return std::log(x);
    }
    return std::expm1((1.0 - alpha) * std::log(x)) / (1.0 - alpha);
}

void require_density(const ComplexMatrix& rho, double tol)
{
    if (!rho.is_square() || !is_hermitian(rho)) {
        throw Error(ErrorKind::NotDensity, "density matrix must be square and Hermitian");
    }
    const double trace = rho.trace().real();
    if (std::abs(trace - 1.0) > tol) {
        throw Error(ErrorKind::NotDensity, "trace " + std::to_string(trace) + " differs from 1");
    }
    const auto values = hermitian_eigenvalues(rho);
    if (values.front() < -kDensityEigenTol) {
        throw Error(ErrorKind::NotDensity, "negative eigenvalue " + std::to_string(values.front()));
    }
}

double von_neumann_entropy(const ComplexMatrix& rho, double tol)
{
    return shannon_of(density_spectrum(rho, tol));
}

double renyi_entropy(const ComplexMatrix& rho, double alpha, double tol)
{
    check_alpha(alpha);
    const auto spectrum = density_spectrum(rho, tol);
    if (alpha_is_one(alpha)) {
        return shannon_of(spectrum);
    }
    return std::log(trace_power(spectrum, alpha)) / (1.0 - alpha);
}

double tsallis_entropy(const ComplexMatrix& rho, double alpha, double tol)
{
    check_alpha(alpha);
    const auto spectrum = density_spectrum(rho, tol);
    if (alpha_is_one(alpha)) {
        return shannon_of(spectrum);
    }
    return (trace_power(spectrum, alpha) - 1.0) / (1.0 - alpha);
}

double unified_entropy(const ComplexMatrix& rho, EntropyParams params, double tol)
{
    check_alpha(params.alpha);
    const auto spectrum = density_spectrum(rho, tol);
    if (alpha_is_one(params.alpha)) {
        return shannon_of(spectrum);
    }
    const double log_trace = std::log(trace_power(spectrum, params.alpha));
    if (s_is_zero(params.s)) {
        return log_trace / (1.0 - params.alpha);
    }
    return std::expm1(params.s * log_trace) / ((1.0 - params.alpha) * params.s);
}

double max_entropy_value(std::size_t m, EntropyParams params)
{
    check_alpha(params.alpha);
    if (m == 0) {
        throw Error(ErrorKind::BadDims, "dimension must be positive");
    }
    const double log_m = std::log(static_cast<double>(m));
    if (alpha_is_one(params.alpha) || s_is_zero(params.s)) {
        return log_m;
    }
    const double exponent = (1.0 - params.alpha) * params.s;
    return std::expm1(exponent * log_m) / exponent;
}

double dimension_entropy_term(double n, EntropyParams params)
{
    check_alpha(params.alpha);
    if (s_is_zero(params.s)) {
        return std::log(n);
    }
    return alpha_log(std::pow(n, params.s), params.alpha) / params.s;
}

} // namespace uinorm
