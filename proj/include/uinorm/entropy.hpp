#pragma once
//
// Renyi, Tsallis and unified (alpha, s) entropies of density matrices.
//
//     E_alpha^s(rho) = ((Tr rho^alpha)^s - 1) / ((1 - alpha) s)
//
// s = 1 is Tsallis, s -> 0 is Renyi, alpha -> 1 is von Neumann for every s.
// The 0/0 points are routed to closed-form limits below fixed thresholds.
//

#include "uinorm/linalg.hpp"

#include <cstddef>

namespace uinorm {

inline constexpr double kAlphaOneThreshold = 1e-9;
inline constexpr double kSZeroThreshold = 1e-12;
inline constexpr double kEntropyEigenFloor = 1e-14;
inline constexpr double kDensityTraceTol = 1e-9;
inline constexpr double kDensityEigenTol = 1e-10;

struct EntropyParams {
    double alpha = 1.0;
    double s = 1.0;
};

/// ln_alpha(x) = (x^{1-alpha} - 1) / (1 - alpha); ln(x) near alpha = 1.
double alpha_log(double x, double alpha);

/// Throws NotDensity if rho is not Hermitian PSD with unit trace.
void require_density(const ComplexMatrix& rho, double tol = kDensityTraceTol);

double von_neumann_entropy(const ComplexMatrix& rho, double tol = kDensityTraceTol);
double renyi_entropy(const ComplexMatrix& rho, double alpha, double tol = kDensityTraceTol);
double tsallis_entropy(const ComplexMatrix& rho, double alpha, double tol = kDensityTraceTol);
double unified_entropy(const ComplexMatrix& rho, EntropyParams params, double tol = kDensityTraceTol);

/// Value at the maximally mixed state I/m, the upper bound of E_alpha^s on dimension m.
double max_entropy_value(std::size_t m, EntropyParams params);

/// (1/s) ln_alpha(n^s), the additive dimension term of the subsystem bounds;
/// ln n in the s -> 0 limit.
double dimension_entropy_term(double n, EntropyParams params);

} // namespace uinorm
