#pragma once
//
// Symmetric anti-norms on positive semidefinite matrices. These are
// homogeneous, unitarily symmetric and superadditive, and may vanish on
// nonzero inputs. All of them read the spectrum in ascending order.
//

#include "uinorm/linalg.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace uinorm {

/// Ascending eigenvalues of a PSD matrix with round-off negatives clamped
/// to zero. Throws NotPsd.
std::vector<double> psd_spectrum(const ComplexMatrix& q, double tol = kHermitianTol);

/// ||Q||_{k}: sum of the k smallest eigenvalues.
double kyfan_antinorm(const ComplexMatrix& q, std::size_t k, double tol = kHermitianTol);

/// (sum lambda_j^p)^{1/p} for p in (0,1], or p < 0 on strictly positive Q.
/// p = 1 is the trace.
double schatten_antinorm(const ComplexMatrix& q, double p, double tol = kHermitianTol);

/// ||Q||_{k}^(p) = (sum_{j<=k} (lambda_j ascending)^p)^{1/p}, p in (0,1].
/// ambient_dim > m pads the spectrum with zeros before ordering.
/// (sum of the k smallest entries to the power p)^(1/p) of a nonnegative
/// spectrum sorted ascending; p in (0,1].
double antigauge_kp(std::span<const double> ascending, std::size_t k, double p);

double kp_antinorm(const ComplexMatrix& q, std::size_t k, double p, double tol = kHermitianTol,
                   std::optional<std::size_t> ambient_dim = std::nullopt);

/// k-th partial fidelity of two states: the Ky Fan {m-k} anti-norm of
/// |sqrt(rho) sqrt(sigma)|. k = m gives the empty sum, 0.
double partial_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma, std::size_t k,
                        double tol = kHermitianTol);

} // namespace uinorm
