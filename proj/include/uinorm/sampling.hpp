#pragma once
//
// Seeded random-matrix ensembles for the audit.
//
// Bit reproducibility is defined by three fixed algorithms:
//   * std::mt19937_64 (its output sequence is fixed by the C++ standard),
//   * uniforms on [0,1) from the top 53 bits of each draw,
//   * standard normals by the Marsaglia polar method.
// std::normal_distribution is deliberately not used; its algorithm is
// implementation-defined.
//

#include "uinorm/channels.hpp"
#include "uinorm/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace uinorm {

inline constexpr std::string_view kPrngDescription =
    "mt19937_64; uniform = (draw >> 11) * 2^-53; normal = Marsaglia polar; "
    "trial seed = splitmix64 chain over (base_seed, fnv1a64(case_id), trial_index)";

/// Minimum-eigenvalue shift of the pd ensemble, relative to the mean eigenvalue.
inline constexpr double kPdFloorFraction = 0.1;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    double normal();
    /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
    Complex complex_normal();
    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

enum class SampleKind {
    ginibre,
    psd,
    pd,
    density,
    unitary,
    bipartite_psd,
    bipartite_density,
    channel,
};

std::string_view to_string(SampleKind kind) noexcept;
bool is_positive_kind(SampleKind kind) noexcept;
bool is_density_kind(SampleKind kind) noexcept;

/// For operator kinds the sampled matrix acts on a space of dimension m*n
/// (n = 1 for a single system; (m, n) are the factor dims of H_A (x) H_B).
/// For channels m is the input, n the output and d the environment
/// dimension; d = 0 picks the smallest d with n*d >= m.
struct SampleDims {
    std::size_t m = 1;
    std::size_t n = 1;
    std::size_t d = 0;
};

struct Instance {
    SampleKind kind = SampleKind::ginibre;
    SampleDims dims;
    ComplexMatrix matrix;
    std::optional<StinespringChannel> channel;
};

ComplexMatrix sample_ginibre(std::size_t rows, std::size_t cols, Rng& rng);
ComplexMatrix sample_psd(std::size_t n, Rng& rng);
ComplexMatrix sample_pd(std::size_t n, Rng& rng);
ComplexMatrix sample_density(std::size_t n, Rng& rng);
/// Haar unitary: QR of a Ginibre matrix with the phases of diag(R) folded into Q.
ComplexMatrix sample_unitary(std::size_t n, Rng& rng);
/// rows x cols matrix with orthonormal columns (same QR construction).
ComplexMatrix sample_isometry(std::size_t rows, std::size_t cols, Rng& rng);
/// Random isometry split into d Kraus blocks and reassembled.
StinespringChannel sample_channel(std::size_t dim_in, std::size_t dim_out, std::size_t dim_env, Rng& rng);

/// Deterministic in (kind, dims, seed). Throws BadDims.
Instance sample(SampleKind kind, SampleDims dims, std::uint64_t seed);

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view case_id, std::uint64_t trial) noexcept;

} // namespace uinorm
