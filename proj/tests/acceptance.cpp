// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "cli_runner.hpp"

#include "uinorm/audit.hpp"
#include "uinorm/bipartite.hpp"
#include "uinorm/channels.hpp"
#include "uinorm/entropy.hpp"
#include "uinorm/matrix_io.hpp"
#include "uinorm/norms.hpp"
#include "uinorm/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace uinorm;
using namespace uinorm::audit;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, format, value);
    return buffer;
}

Instance bipartite_instance(SampleKind kind, ComplexMatrix w, std::size_t m, std::size_t n)
{
    Instance inst;
    inst.kind = kind;
    inst.dims = {m, n, 0};
    inst.matrix = std::move(w);
    return inst;
}

Verdict twirl_oracle()
{
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    const std::pair<std::size_t, std::size_t> pairs[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 3}};
    for (const auto& [m, n] : pairs) {
        for (std::uint64_t t = 0; t < 200; ++t) {
            Rng rng(splitmix64(1000 * m + 100 * n + t));
            const BipartiteOperator w(sample_ginibre(m * n, m * n, rng), m, n);
            const auto expected = kron(partial_trace_b(w), ComplexMatrix::identity(n));
            const double scale = std::max(1.0, w.matrix().max_abs() * static_cast<double>(n));
            worst = std::max(worst, max_abs_diff(twirl_oracle_b(w), expected) / scale);
        }
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-10 && elapsed < 5.0,
            "max scaled deviation " + fmt("%.3g", worst) + ", " + fmt("%.2f", elapsed) + " s"};
}

Verdict full_audit()
{
    const auto start = std::chrono::steady_clock::now();
    AuditConfig config;
    const auto report = run_audit(config);
    const double elapsed = seconds_since(start);
    std::size_t errors = 0;
    std::string failed;
    for (const auto& c : report.cases) {
        errors += c.errors;
        if (!c.passed()) {
            failed += " " + c.id;
        }
    }
    return {report.passed() && elapsed < 60.0,
            std::to_string(report.cases.size()) + " cases x 200 trials, " +
                std::to_string(report.total_violations()) + " violations, " + std::to_string(errors) + " errors, " +
                fmt("%.2f", elapsed) + " s" + (failed.empty() ? "" : ", failed:" + failed)};
}

Verdict saturation_family()
{
    AuditConfig config;
    config.cases = {"SAT-WRQA"};
    const auto report = run_audit(config);
    const auto& c = report.cases.front();
    const double residual = c.saturation_residual.value_or(INFINITY);
    return {c.passed() && residual <= 1e-10, "max relative equality residual " + fmt("%.3g", residual)};
}

Verdict equality_cases()
{
    const auto instance = [](std::initializer_list<double> diag) {
        return bipartite_instance(SampleKind::psd, ComplexMatrix::diagonal(diag), diag.size(), 1);
    };
    EvalParams tpn2;
    tpn2.ks = {2};
    tpn2.chain_p = {1.0};
    tpn2.chain_q = {2.0};
    EvalParams tpn62;
    tpn62.ks = {2};
    tpn62.antichain_p = {0.5};
    tpn62.antichain_q = {0.5};

    const auto eq2 = evaluate_trial(find_case("TPN2"), instance({2.0, 2.0, 1.0}), tpn2).checks.at(0);
    const auto eq62 = evaluate_trial(find_case("TPN62"), instance({1.0, 1.0, 3.0}), tpn62).checks.at(0);
    const auto strict2 = evaluate_trial(find_case("TPN2"), instance({3.0, 2.0, 1.0}), tpn2).checks.at(0);
    const auto strict62 = evaluate_trial(find_case("TPN62"), instance({3.0, 2.0, 1.0}), tpn62).checks.at(0);

    const auto near4 = [](const Comparison& c) {
        return std::abs(c.greater - 4.0) <= 1e-12 && std::abs(c.lesser - 4.0) <= 1e-12;
    };
    const bool ok = near4(eq2) && near4(eq62) && strict2.margin() > 1e-6 && strict62.margin() > 1e-6;
    return {ok, "equal sides " + fmt("%.15g", eq2.greater) + "/" + fmt("%.15g", eq2.lesser) + " and " +
                    fmt("%.15g", eq62.greater) + "/" + fmt("%.15g", eq62.lesser) + ", strict margins " +
                    fmt("%.3g", strict2.margin()) + " and " + fmt("%.3g", strict62.margin())};
}

Verdict entropy_closed_forms()
{
    const double alphas[] = {0.3, 0.7, 1.0, 1.5, 3.0};
    const double ss[] = {-1.0, 0.0, 0.5, 1.0, 2.0};
    double worst_max = 0.0;
    for (std::size_t m : {2u, 3u, 4u, 6u}) {
        const auto mixed = ComplexMatrix::identity(m) * Complex(1.0 / static_cast<double>(m));
        for (double a : alphas) {
            for (double s : ss) {
                worst_max = std::max(worst_max, std::abs(unified_entropy(mixed, {a, s}) - max_entropy_value(m, {a, s})));
            }
        }
    }
    double worst_product = 0.0;
    for (std::uint64_t t = 0; t < 40; ++t) {
        const std::size_t m = 2 + t % 3;
        const std::size_t n = 2 + (t / 3) % 2;
        Rng rng(splitmix64(t + 500));
        const auto w = kron(sample_density(m, rng), ComplexMatrix::identity(n) * Complex(1.0 / static_cast<double>(n)));
        const auto inst = bipartite_instance(SampleKind::bipartite_density, w, m, n);
        for (const char* id : {"ET41", "ETT41", "ET42"}) {
            worst_product = std::max(worst_product,
                                     evaluate_trial(find_case(id), inst, EvalParams{}).max_abs_relative_margin());
        }
    }
    return {worst_max <= 1e-12 && worst_product <= 1e-10,
            "max-value deviation " + fmt("%.3g", worst_max) + ", product residual " + fmt("%.3g", worst_product)};
}

Verdict limit_continuity()
{
    double renyi_gap = 0.0;
    double unified_gap = 0.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        const auto rho = sample(SampleKind::density, {2 + t % 4, 1, 0}, splitmix64(t + 900)).matrix;
        const double vn = von_neumann_entropy(rho);
        renyi_gap = std::max({renyi_gap, std::abs(renyi_entropy(rho, 1.0 + 1e-4) - vn),
                              std::abs(renyi_entropy(rho, 1.0 - 1e-4) - vn)});
        for (double a : {0.3, 0.7, 1.5, 3.0}) {
            const double r = renyi_entropy(rho, a);
            unified_gap = std::max({unified_gap, std::abs(unified_entropy(rho, {a, 1e-6}) - r),
                                    std::abs(unified_entropy(rho, {a, -1e-6}) - r)});
        }
    }
    return {renyi_gap <= 1e-3 && unified_gap <= 1e-5,
            "alpha gap " + fmt("%.3g", renyi_gap) + ", s gap " + fmt("%.3g", unified_gap)};
}

Verdict channel_consistency()
{
    double worst = 0.0;
    bool shapes_match = true;
    for (std::uint64_t t = 0; t < 40; ++t) {
        const std::size_t m = 2 + t % 3;
        const std::size_t n = 2 + (t / 3) % 2;
        Rng rng(splitmix64(t + 700));
        const auto w = sample_ginibre(m * n, m * n, rng);
        const auto kpn1 = evaluate_trial(find_case("KPN1"), bipartite_instance(SampleKind::ginibre, w, m, n), {});
        Instance as_channel = bipartite_instance(SampleKind::ginibre, w, m * n, m);
        as_channel.dims.d = n;
        as_channel.channel = partial_trace_channel(m, n);
        const auto stct1 = evaluate_trial(find_case("STCT1"), as_channel, {});
        if (kpn1.checks.size() != stct1.checks.size()) {
            shapes_match = false;
            continue;
        }
        for (std::size_t i = 0; i < kpn1.checks.size(); ++i) {
            worst = std::max(worst, std::abs(kpn1.checks[i].margin() - stct1.checks[i].margin()) /
                                        kpn1.checks[i].scale());
        }
    }
    const Complex h(0.5);
    const std::vector<ComplexMatrix> depolarizing{ComplexMatrix::identity(2) * h,
                                                  ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}} * h,
                                                  ComplexMatrix{{0.0, 1.0}, {-1.0, 0.0}} * h,
                                                  ComplexMatrix::diagonal({1.0, -1.0}) * h};
    const std::vector<ComplexMatrix> damping{ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(0.7)}},
                                             ComplexMatrix{{0.0, std::sqrt(0.3)}, {0.0, 0.0}}};
    const std::vector<ComplexMatrix> identity{ComplexMatrix::identity(2)};
    const auto r_dep = choi_rank(kraus_to_stinespring(depolarizing));
    const auto r_amp = choi_rank(kraus_to_stinespring(damping));
    const auto r_id = choi_rank(kraus_to_stinespring(identity));
    return {shapes_match && worst <= 1e-10 && r_dep == 4 && r_amp == 2 && r_id == 1,
            "margin agreement " + fmt("%.3g", worst) + ", Choi ranks " + std::to_string(r_dep) + "/" +
                std::to_string(r_amp) + "/" + std::to_string(r_id)};
}

Verdict conjugation_check()
{
    std::size_t passed = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(splitmix64(t + 300));
        const std::size_t cols = 1 + t % 5;
        const std::size_t rows = cols + (t / 5) % (6 - cols);
        const auto v = sample_isometry(rows, cols, rng);
        const auto q = sample_ginibre(cols, cols, rng);
        passed += singular_value_conjugation_check(v, q) ? 1 : 0;
    }
    return {passed == 100, std::to_string(passed) + "/100 pairs"};
}

Verdict cli_contract()
{
    using testing::run_cli;
    const auto dir = std::filesystem::path(UINORM_TEST_WORKDIR);
    const auto a = dir / "acceptance_a.json";
    const auto b = dir / "acceptance_b.json";
    const std::string args = "audit --seed 42 --trials 50 --out ";
    const int code_a = run_cli(args + "'" + a.string() + "'").exit_code;
    const int code_b = run_cli(args + "'" + b.string() + "'").exit_code;
    const bool identical = testing::slurp(a) == testing::slurp(b) && !testing::slurp(a).empty();

    const auto good = testing::work_file("acceptance_diag.json", format_matrix(ComplexMatrix::diagonal({3.0, 2.0, 1.0})));
    const auto garbage = testing::work_file("acceptance_garbage.json", "[1,");
    const auto compute = run_cli("compute norm --k 2 --p 2 '" + good.string() + "'");
    const int parse_code = run_cli("compute norm --p 2 '" + garbage.string() + "'").exit_code;
    const int flag_code = run_cli("audit --dims 2by2").exit_code;
    const int precondition_code = run_cli("compute norm --k 9 --p 2 '" + good.string() + "'").exit_code;

    const bool ok = code_a == 0 && code_b == 0 && identical && compute.exit_code == 0 &&
                    compute.out == "3.60555127546399\n" && parse_code == 2 && flag_code == 2 &&
                    precondition_code == 3;
    return {ok, std::string(identical ? "byte-identical reports" : "reports differ") + ", exit codes " +
                    std::to_string(code_a) + "/" + std::to_string(compute.exit_code) + "/" +
                    std::to_string(parse_code) + "/" + std::to_string(flag_code) + "/" +
                    std::to_string(precondition_code) + " (expected 0/0/2/2/3)"};
}

} // namespace

int main()
{
    const std::pair<const char*, std::function<Verdict()>> criteria[] = {
        {"partial-trace oracle equivalence", twirl_oracle},
        {"full inequality audit", full_audit},
        {"saturation family", saturation_family},
        {"equality and strictness of the chain bounds", equality_cases},
        {"entropy closed forms", entropy_closed_forms},
        {"limit continuity", limit_continuity},
        {"channel consistency", channel_consistency},
        {"singular values under isometric conjugation", conjugation_check},
        {"CLI determinism and exit codes", cli_contract},
    };
    int failures = 0;
    int index = 1;
    for (const auto& [name, run] : criteria) {
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        std::printf("%s %d %s: %s\n", v.ok ? "PASS" : "FAIL", index++, name, v.detail.c_str());
        failures += v.ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
