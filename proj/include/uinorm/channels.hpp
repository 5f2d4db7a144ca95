#pragma once
//
// Trace-preserving completely positive maps in Stinespring form
//
//     Phi(Q) = Tr_C(V Q V^dagger),   V : H_in -> H_out (x) H_env,  V^dagger V = I.
//
// Rows of V are indexed out-major: row b*d + c holds output index b and
// environment index c, so the c-th Kraus operator is K_c(b, a) = V(b*d + c, a).
//

#include "uinorm/linalg.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace uinorm {

inline constexpr double kIsometryTol = 1e-10;
inline constexpr double kChoiRankTol = 1e-9;
inline constexpr double kConjugationTol = 1e-9;

class StinespringChannel {
public:
    /// Throws ShapeMismatch if v is not (dim_out*dim_env) x dim_in and
    /// NotTracePreserving if v is not an isometry within tol.
    StinespringChannel(ComplexMatrix v, std::size_t dim_in, std::size_t dim_out, std::size_t dim_env,
                       double tol = kIsometryTol);

    const ComplexMatrix& v() const noexcept { return v_; }
    std::size_t dim_in() const noexcept { return dim_in_; }
    std::size_t dim_out() const noexcept { return dim_out_; }
    std::size_t dim_env() const noexcept { return dim_env_; }

private:
    ComplexMatrix v_;
    std::size_t dim_in_;
    std::size_t dim_out_;
    std::size_t dim_env_;
};

/// ||V^dagger V - I||_max <= tol * (1 + ||V||_max^2). Throws ShapeMismatch if rows < cols.
bool validate_isometry(const ComplexMatrix& v, double tol = kIsometryTol);

/// Stack Kraus operators (all n x m) into V; d = number of operators.
/// Throws NotTracePreserving unless sum K^dagger K = I.
StinespringChannel kraus_to_stinespring(std::span<const ComplexMatrix> kraus, double tol = kIsometryTol);

/// The environment blocks of V, one n x m Kraus operator per environment index.
std::vector<ComplexMatrix> kraus_operators(const StinespringChannel& ch);

/// Tr_B on H_A (x) H_B viewed as a channel: V = I_{mn}, output H_A, environment H_B.
StinespringChannel partial_trace_channel(std::size_t dim_a, std::size_t dim_b);

/// Phi(Q) = Tr_env(V Q V^dagger). Throws DimensionMismatch.
ComplexMatrix apply(const StinespringChannel& ch, const ComplexMatrix& q);

/// sum_ij Phi(|i><j|) (x) |i><j|, of size (n*m) x (n*m).
ComplexMatrix choi_matrix(const StinespringChannel& ch);

/// Number of Choi eigenvalues above tol * (largest eigenvalue); the minimal
/// environment dimension.
std::size_t choi_rank(const StinespringChannel& ch, double tol = kChoiRankTol);

/// True iff V Q V^dagger and Q share their nonzero singular values (multiset,
/// relative tolerance tol). The raw-matrix overload accepts any V with
/// rows >= cols, so non-isometries can be probed.
bool singular_value_conjugation_check(const ComplexMatrix& v, const ComplexMatrix& q,
                                      double tol = kConjugationTol);
bool singular_value_conjugation_check(const StinespringChannel& ch, const ComplexMatrix& q,
                                      double tol = kConjugationTol);

} // namespace uinorm
