#include "support.hpp"

#include "uinorm/bipartite.hpp"
#include "uinorm/entropy.hpp"
#include "uinorm/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace uinorm;
using testing::Gen;

namespace {

const std::vector<double> kAlphas{0.3, 0.7, 1.0, 1.5, 3.0};
const std::vector<double> kSs{-1.0, 0.0, 0.5, 1.0, 2.0};

ComplexMatrix maximally_mixed(std::size_t m)
{
    return ComplexMatrix::identity(m) * Complex(1.0 / static_cast<double>(m));
}

// Entropies straight from the eigenvalues, test-side.
double oracle_unified(const ComplexMatrix& rho, double alpha, double s)
{
    double tr = 0.0;
    double shannon = 0.0;
    for (double v : hermitian_eigenvalues(rho)) {
        if (v > 1e-14) {
            tr += std::pow(v, alpha);
            shannon -= v * std::log(v);
        }
    }
    if (alpha == 1.0) {
        return shannon;
    }
    if (s == 0.0) {
        return std::log(tr) / (1.0 - alpha);
    }
    return (std::pow(tr, s) - 1.0) / ((1.0 - alpha) * s);
}

} // namespace

TEST_CASE("alpha-logarithm")
{
    for (double a : {0.3, 1.0, 2.0, 5.0}) {
        CHECK(alpha_log(1.0, a) == 0.0);
    }
    CHECK(alpha_log(4.0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(alpha_log(std::exp(1.0), 1.0 + 1e-6) - 1.0) <= 1e-5);
    CHECK(std::abs(alpha_log(std::exp(1.0), 1.0 - 1e-6) - 1.0) <= 1e-5);
    CHECK(alpha_log(2.0, 1.0 + 1e-10) == std::log(2.0));
    try {
        alpha_log(0.0, 2.0);
        FAIL("expected DomainError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DomainError);
    }
}

TEST_CASE("closed forms of the Renyi and Tsallis entropies")
{
    for (std::size_t m : {2u, 3u, 5u}) {
        for (double a : {0.5, 1.0, 2.0, 4.0}) {
            CHECK(renyi_entropy(maximally_mixed(m), a) == doctest::Approx(std::log(m)).epsilon(1e-13));
            CHECK(tsallis_entropy(maximally_mixed(m), a) == doctest::Approx(alpha_log(m, a)).epsilon(1e-13));
        }
    }
    const auto pure = ComplexMatrix::diagonal({1.0, 0.0});
    CHECK(renyi_entropy(pure, 2.0) == doctest::Approx(0.0));
    CHECK(tsallis_entropy(pure, 2.0) == doctest::Approx(0.0));
    CHECK(von_neumann_entropy(pure) == 0.0);
    CHECK(renyi_entropy(maximally_mixed(2), 2.0) == doctest::Approx(std::log(2.0)));
    CHECK(tsallis_entropy(maximally_mixed(2), 2.0) == doctest::Approx(0.5));
    CHECK(tsallis_entropy(ComplexMatrix::diagonal({0.7, 0.3}), 2.0) == doctest::Approx(0.42).epsilon(1e-13));
    CHECK(unified_entropy(maximally_mixed(2), {2.0, 1.0}) == doctest::Approx(0.5));
}

TEST_CASE("unified entropy against the eigenvalue oracle")
{
    Gen gen(51);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rho = gen.density(gen.index(1, 6));
        for (double a : kAlphas) {
            for (double s : kSs) {
                CHECK(testing::rel_close(unified_entropy(rho, {a, s}), oracle_unified(rho, a, s)) < 1e-11);
            }
            CHECK(testing::rel_close(unified_entropy(rho, {a, 1.0}), tsallis_entropy(rho, a)) < 1e-12);
            CHECK(testing::rel_close(unified_entropy(rho, {a, 0.0}), renyi_entropy(rho, a)) < 1e-12);
        }
    }
}

TEST_CASE("maximum value on the grid, including limit branches")
{
    for (std::size_t m : {1u, 2u, 3u, 4u, 6u}) {
        for (double a : kAlphas) {
            for (double s : kSs) {
                const double at_mixed = unified_entropy(maximally_mixed(m), {a, s});
                CHECK(std::abs(at_mixed - max_entropy_value(m, {a, s})) <= 1e-12);
            }
        }
    }
    CHECK(max_entropy_value(2, {2.0, 1.0}) == doctest::Approx(0.5));
    CHECK(max_entropy_value(4, {2.0, 0.0}) == doctest::Approx(std::log(4.0)));
    CHECK(max_entropy_value(3, {1.0, 2.0}) == doctest::Approx(std::log(3.0)));
    CHECK_THROWS_AS(max_entropy_value(0, {2.0, 1.0}), Error);

    Gen gen(52);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = gen.index(2, 6);
        const auto rho = gen.density(m);
        for (double a : {0.3, 0.7, 1.5, 3.0}) {
            for (double s : kSs) {
                CHECK(unified_entropy(rho, {a, s}) <= max_entropy_value(m, {a, s}) + 1e-10);
            }
        }
    }
}

TEST_CASE("limit continuity in alpha and s")
{
    Gen gen(53);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rho = gen.density(gen.index(2, 5));
        const double vn = von_neumann_entropy(rho);
        CHECK(std::abs(renyi_entropy(rho, 1.0 + 1e-4) - vn) <= 1e-3);
        CHECK(std::abs(renyi_entropy(rho, 1.0 - 1e-4) - vn) <= 1e-3);
        CHECK(std::abs(tsallis_entropy(rho, 1.0 + 1e-4) - vn) <= 1e-3);
        for (double a : {0.3, 0.7, 1.5, 3.0}) {
            const double r = renyi_entropy(rho, a);
            CHECK(std::abs(unified_entropy(rho, {a, 1e-6}) - r) <= 1e-5);
            CHECK(std::abs(unified_entropy(rho, {a, -1e-6}) - r) <= 1e-5);
            CHECK(std::abs(unified_entropy(rho, {a, 1e-8}) - r) <= 1e-6);
        }
    }
}

TEST_CASE("unitary invariance")
{
    Gen gen(54);
    const auto rho = gen.density(4);
    const auto g = gen.ginibre(4, 4);
    const auto u = g * psd_power(g.adjoint() * g, -0.5);
    const auto rotated = u * rho * u.adjoint();
    for (double a : kAlphas) {
        for (double s : kSs) {
            CHECK(std::abs(unified_entropy(rotated, {a, s}) - unified_entropy(rho, {a, s})) <= 1e-10);
        }
    }
}

TEST_CASE("density validation")
{
    const auto check_kind = [](const ComplexMatrix& rho) {
        try {
            von_neumann_entropy(rho);
            FAIL("expected NotDensity");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotDensity);
        }
    };
    check_kind(ComplexMatrix::diagonal({0.6, 0.6}));
    check_kind(ComplexMatrix::diagonal({1.1, -0.1}));
    check_kind(ComplexMatrix{{0.5, 0.3}, {0.0, 0.5}});
    CHECK_NOTHROW(von_neumann_entropy(ComplexMatrix::diagonal({0.5 + 5e-10, 0.5})));
    CHECK_THROWS_AS(renyi_entropy(maximally_mixed(2), 0.0), Error);
    CHECK_THROWS_AS(unified_entropy(maximally_mixed(2), {-1.0, 1.0}), Error);
}

TEST_CASE("subsystem bounds and their product-state saturation")
{
    Gen gen(55);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = gen.index(1, 4);
        const std::size_t n = gen.index(1, 3);
        const auto w = gen.density(m * n);
        const auto rho_a = partial_trace_b(BipartiteOperator(w, m, n));
        const auto ra = gen.density(m);
        const auto product = kron(ra, maximally_mixed(n));
        const double nd = static_cast<double>(n);
        for (double a : kAlphas) {
            for (double s : kSs) {
                const double weight = std::pow(nd, (1.0 - a) * s);
                CHECK(unified_entropy(w, {a, s}) <=
                      weight * unified_entropy(rho_a, {a, s}) + dimension_entropy_term(nd, {a, s}) + 1e-9);
                CHECK(std::abs(unified_entropy(product, {a, s}) -
                               (weight * unified_entropy(ra, {a, s}) + dimension_entropy_term(nd, {a, s}))) <=
                      1e-10);
            }
            CHECK(renyi_entropy(w, a) <= renyi_entropy(rho_a, a) + std::log(nd) + 1e-9);
            CHECK(std::abs(renyi_entropy(product, a) - renyi_entropy(ra, a) - std::log(nd)) <= 1e-10);
        }
    }
    CHECK(dimension_entropy_term(3.0, {2.0, 0.0}) == doctest::Approx(std::log(3.0)));
    CHECK(dimension_entropy_term(2.0, {2.0, 1.0}) == doctest::Approx(0.5));
}
