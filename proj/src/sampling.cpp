#include "uinorm/sampling.hpp"

#include "uinorm/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace uinorm {

namespace {

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

void require_positive(SampleDims dims)
{
    if (dims.m == 0 || dims.n == 0) {
        throw Error(ErrorKind::BadDims, "sample dimensions must be positive");
    }
}

} // namespace

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal()
{
    if (spare_) {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    return u * factor;
}

Complex Rng::complex_normal()
{
    const double re = normal();
    const double im = normal();
    constexpr double component_sd = 1.0 / std::numbers::sqrt2;
    return {re * component_sd, im * component_sd};
}

std::string_view to_string(SampleKind kind) noexcept
{
    switch (kind) {
    case SampleKind::ginibre: return "ginibre";
    case SampleKind::psd: return "psd";
    case SampleKind::pd: return "pd";
    case SampleKind::density: return "density";
    case SampleKind::unitary: return "unitary";
    case SampleKind::bipartite_psd: return "bipartite_psd";
    case SampleKind::bipartite_density: return "bipartite_density";
    case SampleKind::channel: return "channel";
    }
    return "unknown";
}

bool is_positive_kind(SampleKind kind) noexcept
{
    switch (kind) {
    case SampleKind::psd:
    case SampleKind::pd:
    case SampleKind::density:
    case SampleKind::bipartite_psd:
    case SampleKind::bipartite_density:
        return true;
    default:
        return false;
    }
}

bool is_density_kind(SampleKind kind) noexcept
{
    return kind == SampleKind::density || kind == SampleKind::bipartite_density;
}

ComplexMatrix sample_ginibre(std::size_t rows, std::size_t cols, Rng& rng)
{
    ComplexMatrix g(rows, cols);
    for (auto& z : g.entries()) {
        z = rng.complex_normal();
    }
    return g;
}

ComplexMatrix sample_psd(std::size_t n, Rng& rng)
{
    const auto g = sample_ginibre(n, n, rng);
    return g * g.adjoint();
}

ComplexMatrix sample_pd(std::size_t n, Rng& rng)
{
    auto q = sample_psd(n, rng);
    const double mean_eigenvalue = q.trace().real() / static_cast<double>(n);
    const double shift = kPdFloorFraction * mean_eigenvalue;
    for (std::size_t i = 0; i < n; ++i) {
        q(i, i) += shift;
    }
    return q;
}

ComplexMatrix sample_density(std::size_t n, Rng& rng)
{
    auto q = sample_psd(n, rng);
    return q * Complex(1.0 / q.trace().real());
}

ComplexMatrix sample_isometry(std::size_t rows, std::size_t cols, Rng& rng)
{
    if (rows < cols) {
        throw Error(ErrorKind::BadDims, "isometry needs rows >= cols");
    }
    const auto g = sample_ginibre(rows, cols, rng);
    EigenMatrix ge(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            ge(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g(i, j);
        }
    }
    Eigen::HouseholderQR<EigenMatrix> qr(ge);
    const EigenMatrix r = qr.matrixQR().template triangularView<Eigen::Upper>();
    const EigenMatrix q = qr.householderQ() * EigenMatrix::Identity(static_cast<Eigen::Index>(rows),
                                                                    static_cast<Eigen::Index>(cols));
    ComplexMatrix out(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        const Complex rjj = r(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
        const Complex phase = std::abs(rjj) > 0.0 ? rjj / std::abs(rjj) : Complex(1.0);
        for (std::size_t i = 0; i < rows; ++i) {
            out(i, j) = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * phase;
        }
    }
    return out;
}

ComplexMatrix sample_unitary(std::size_t n, Rng& rng)
{
    return sample_isometry(n, n, rng);
}

StinespringChannel sample_channel(std::size_t dim_in, std::size_t dim_out, std::size_t dim_env, Rng& rng)
{
    if (dim_out * dim_env < dim_in) {
        throw Error(ErrorKind::BadDims, "channel needs dim_out * dim_env >= dim_in");
    }
    const auto v = sample_isometry(dim_out * dim_env, dim_in, rng);
    std::vector<ComplexMatrix> kraus(dim_env, ComplexMatrix(dim_out, dim_in));
    for (std::size_t c = 0; c < dim_env; ++c) {
        for (std::size_t b = 0; b < dim_out; ++b) {
            for (std::size_t a = 0; a < dim_in; ++a) {
                kraus[c](b, a) = v(b * dim_env + c, a);
            }
        }
    }
    return kraus_to_stinespring(kraus);
}

Instance sample(SampleKind kind, SampleDims dims, std::uint64_t seed)
{
    require_positive(dims);
    Rng rng(seed);
    Instance inst;
    inst.kind = kind;
    inst.dims = dims;
    const std::size_t size = dims.m * dims.n;
    switch (kind) {
    case SampleKind::ginibre: inst.matrix = sample_ginibre(size, size, rng); break;
    case SampleKind::psd:
    case SampleKind::bipartite_psd: inst.matrix = sample_psd(size, rng); break;
    case SampleKind::pd: inst.matrix = sample_pd(size, rng); break;
    case SampleKind::density:
    case SampleKind::bipartite_density: inst.matrix = sample_density(size, rng); break;
    case SampleKind::unitary: inst.matrix = sample_unitary(size, rng); break;
    case SampleKind::channel: {
        if (dims.d == 0) {
            inst.dims.d = (dims.m + dims.n - 1) / dims.n;
        }
        if (dims.n * inst.dims.d < dims.m) {
            throw Error(ErrorKind::BadDims, "channel needs n * d >= m");
        }
        inst.channel = sample_channel(dims.m, dims.n, inst.dims.d, rng);
        break;
    }
    }
    return inst;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view case_id, std::uint64_t trial) noexcept
{
    std::uint64_t fnv = 0xcbf29ce484222325ULL;
    for (unsigned char c : case_id) {
        fnv ^= c;
        fnv *= 0x100000001b3ULL;
    }
    std::uint64_t h = splitmix64(base_seed);
    h = splitmix64(h ^ fnv);
    return splitmix64(h ^ trial);
}

} // namespace uinorm
