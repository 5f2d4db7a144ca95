#pragma once
//
// The (k,p) family of unitarily invariant norms
//
//     ||Q||_(k)^(p) = ( sum_{j<=k} sigma_j(Q)^p )^{1/p},
//
// i.e. the symmetric gauge function G_(k)^(p) evaluated on the singular values.
// k = m gives the Schatten p-norms and p = 1 gives the Ky Fan k-norms.
//
// p = +infinity is the IEEE infinity value and is handled by an exact branch
// (largest absolute entry / largest singular value), never by a large float.
//

#include "uinorm/linalg.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>

namespace uinorm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Above this exponent the gauge is accumulated in the log domain.
inline constexpr double kLogDomainExponent = 50.0;

struct NormParams {
    std::size_t k = 1;
    double p = 1.0;
};

/// G_(k)^(p)(x): l_p norm of the k largest |x_j|. Throws BadK / BadP.
double gauge_kp(std::span<const double> x, std::size_t k, double p);

/// n^{(p-1)/p}, the traced-out dimension factor; equals n at p = infinity.
double dimension_factor(double n, double p);

/// ||Q||_(k)^(p) for square Q. With ambient_dim > m the singular-value list is
/// padded by zeros to that length first, so k may range up to ambient_dim.
double kp_norm(const ComplexMatrix& q, std::size_t k, double p,
               std::optional<std::size_t> ambient_dim = std::nullopt);

double kp_norm(const ComplexMatrix& q, NormParams params);

/// ||Q||_p = (sum sigma_j^p)^{1/p}; p = 1 trace, p = 2 Frobenius, p = inf spectral.
double schatten_norm(const ComplexMatrix& q, double p);

/// Sum of the k largest singular values.
double kyfan_norm(const ComplexMatrix& q, std::size_t k);

} // namespace uinorm
