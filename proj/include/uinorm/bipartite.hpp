#pragma once
//
// Operators on H_A (x) H_B with the A factor major: the matrix is an m-by-m
// grid of n-by-n blocks Q_ij, and kron(A, B) places A(i,j)*B in block (i,j).
//

#include "uinorm/linalg.hpp"

#include <cstddef>

namespace uinorm {

class BipartiteOperator {
public:
    /// Throws ShapeMismatch unless matrix is (dim_a*dim_b) square.
    BipartiteOperator(ComplexMatrix matrix, std::size_t dim_a, std::size_t dim_b);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dim_a() const noexcept { return dim_a_; }
    std::size_t dim_b() const noexcept { return dim_b_; }

    /// The n-by-n block Q_ij.
    ComplexMatrix block(std::size_t i, std::size_t j) const;

private:
    ComplexMatrix matrix_;
    std::size_t dim_a_;
    std::size_t dim_b_;
};

/// Tr_B: the m-by-m matrix of block traces [[Tr Q_ij]].
ComplexMatrix partial_trace_b(const BipartiteOperator& w);

/// Tr_A: the sum of the m diagonal blocks.
ComplexMatrix partial_trace_a(const BipartiteOperator& w);

/// (1/n) sum_j (I (x) Z^j) W (I (x) Z^-j): every block loses its off-diagonal part.
ComplexMatrix phase_average_b(const BipartiteOperator& w);

/// sum_l (I (x) X^l) W (I (x) X^-l); on block-diagonal-dephased input this
/// yields [[Tr D_ij]] (x) I_n.
ComplexMatrix shift_sum_b(const BipartiteOperator& w);

/// (1/n) sum_{l,j} U_lj W U_lj^dagger with U_lj = I (x) X^l Z^j. Equals
/// kron(partial_trace_b(W), I_n) and is computed without any block traces.
ComplexMatrix twirl_oracle_b(const BipartiteOperator& w);

/// A (x) I_n tagged with dims (m, n).
BipartiteOperator embed_a(const ComplexMatrix& a, std::size_t n);

/// The same operator on H_B (x) H_A (index permutation only).
BipartiteOperator swap_factors(const BipartiteOperator& w);

} // namespace uinorm
