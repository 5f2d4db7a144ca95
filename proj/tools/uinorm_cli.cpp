// uinorm: command-line front end for the norm, anti-norm, entropy, partial
// trace and channel routines, and for seeded inequality audits.
//
// Exit codes: 0 success, 2 parse error or bad flags, 3 precondition failure,
// 4 audit with failing cases.

#include "uinorm/antinorms.hpp"
#include "uinorm/audit.hpp"
#include "uinorm/bipartite.hpp"
#include "uinorm/channels.hpp"
#include "uinorm/entropy.hpp"
#include "uinorm/errors.hpp"
#include "uinorm/matrix_io.hpp"
#include "uinorm/norms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitAuditFailed = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text)
{
    if (text == "inf" || text == "+inf" || text == "infinity") {
        return uinorm::kInfinity;
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + text + "'");
    }
    if (used != text.size()) {
        throw UsageError("not a number: '" + text + "'");
    }
    return value;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_dims(const std::string& list)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        const std::string token = list.substr(start, comma - start);
        const std::size_t x = token.find('x');
        try {
            if (x == std::string::npos || x == 0 || x + 1 == token.size() ||
                token.find_first_not_of("0123456789x") != std::string::npos) {
                throw UsageError("");
            }
            const auto m = std::stoul(token.substr(0, x));
            const auto n = std::stoul(token.substr(x + 1));
            if (m == 0 || n == 0) {
                throw UsageError("");
            }
            out.emplace_back(m, n);
        } catch (const std::exception&) {
            throw UsageError("bad dims token '" + token + "', expected MxN with positive integers");
        }
        start = comma + 1;
    }
    return out;
}

void print_scalar(double value)
{
    std::printf("%.15g\n", value);
}

// Runs a command body and maps library failures onto exit codes.
int guarded(const std::function<int()>& body)
{
    try {
        return body();
    } catch (const UsageError& e) {
        std::cerr << "uinorm: " << e.what() << "\n";
        return kExitUsage;
    } catch (const uinorm::Error& e) {
        std::cerr << "uinorm: " << e.what() << "\n";
        return e.kind() == uinorm::ErrorKind::ParseError ? kExitUsage : kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "uinorm: " << e.what() << "\n";
        return kExitPrecondition;
    }
}

struct ComputeOptions {
    std::string file;
    std::string second_file;
    std::optional<std::size_t> k;
    std::string p = "1";
    std::optional<std::size_t> ambient;
    double alpha = 1.0;
    double s = 0.0;
};

struct PtraceOptions {
    std::string file;
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    std::string over = "b";
    bool oracle = false;
};

struct ApplyOptions {
    std::string kraus;
    std::string file;
};

struct AuditOptions {
    std::uint64_t seed = 42;
    std::size_t trials = 200;
    std::string dims;
    std::string out;
    std::vector<std::string> cases;
    unsigned threads = 0;
    std::string d_source = "choi";
};

int cmd_norm(const ComputeOptions& o)
{
    const auto q = uinorm::read_matrix_file(o.file);
    const double p = parse_real(o.p);
    if (o.k) {
        print_scalar(uinorm::kp_norm(q, *o.k, p, o.ambient));
    } else {
        if (o.ambient) {
            throw UsageError("--ambient needs --k");
        }
        print_scalar(uinorm::schatten_norm(q, p));
    }
    return kExitOk;
}

int cmd_antinorm(const ComputeOptions& o)
{
    const auto q = uinorm::read_matrix_file(o.file);
    const double p = parse_real(o.p);
    if (o.k) {
        print_scalar(uinorm::kp_antinorm(q, *o.k, p, uinorm::kHermitianTol, o.ambient));
    } else {
        if (o.ambient) {
            throw UsageError("--ambient needs --k");
        }
        print_scalar(uinorm::schatten_antinorm(q, p));
    }
    return kExitOk;
}

int cmd_entropy(const ComputeOptions& o)
{
    const auto rho = uinorm::read_matrix_file(o.file);
    print_scalar(uinorm::unified_entropy(rho, {o.alpha, o.s}));
    return kExitOk;
}

int cmd_fidelity(const ComputeOptions& o)
{
    const auto rho = uinorm::read_matrix_file(o.file);
    const auto sigma = uinorm::read_matrix_file(o.second_file);
    print_scalar(uinorm::partial_fidelity(rho, sigma, o.k.value_or(1)));
    return kExitOk;
}

int cmd_ptrace(const PtraceOptions& o)
{
    const auto q = uinorm::read_matrix_file(o.file);
    const uinorm::BipartiteOperator w(q, o.dim_a, o.dim_b);
    // Tracing out A is tracing out the second factor of the swapped operator.
    const auto target = o.over == "a" ? uinorm::swap_factors(w) : w;
    const auto reduced = uinorm::partial_trace_b(target);
    auto out = nlohmann::ordered_json::parse(uinorm::format_matrix(reduced));
    if (o.oracle) {
        const auto expected = uinorm::kron(reduced, uinorm::ComplexMatrix::identity(target.dim_b()));
        out["oracle_deviation"] = uinorm::max_abs_diff(uinorm::twirl_oracle_b(target), expected);
    }
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_apply(const ApplyOptions& o)
{
    const auto kraus = uinorm::read_kraus_file(o.kraus);
    const auto q = uinorm::read_matrix_file(o.file);
    const auto channel = uinorm::kraus_to_stinespring(kraus);
    std::cout << uinorm::format_matrix(uinorm::apply(channel, q));
    return kExitOk;
}

int cmd_audit(const AuditOptions& o)
{
    uinorm::audit::AuditConfig config;
    config.base_seed = o.seed;
    config.trials_per_case = o.trials;
    if (!o.dims.empty()) {
        config.dims = parse_dims(o.dims);
    }
    config.cases = o.cases;
    config.threads = o.threads;
    config.params.env_source =
        o.d_source == "env" ? uinorm::audit::EnvDimSource::dim_env : uinorm::audit::EnvDimSource::choi_rank;
    try {
        uinorm::audit::validate(config);
    } catch (const uinorm::Error& e) {
        throw UsageError(e.what());
    }

    const auto report = uinorm::audit::run_audit(config);
    const auto text = uinorm::audit::to_json(report);
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file || !(file << text)) {
            std::cerr << "uinorm: cannot write " << o.out << "\n";
            return kExitPrecondition;
        }
    }
    for (const auto& c : report.cases) {
        if (!c.passed()) {
            std::cerr << "FAILED " << c.id << ": " << c.violations << " violations, " << c.errors << " errors\n";
        }
    }
    std::cerr << report.cases.size() << " cases, " << report.total_violations() << " violations\n";
    return report.passed() ? kExitOk : kExitAuditFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Unitarily invariant norms, anti-norms and entropies of partial traces and channel outputs"};
    app.require_subcommand(1);

    std::function<int()> action;

    ComputeOptions co;
    auto* compute = app.add_subcommand("compute", "Evaluate a single quantity of a matrix file");
    compute->require_subcommand(1);

    auto* norm = compute->add_subcommand("norm", "(k,p)-norm, or the Schatten p-norm when --k is omitted");
    norm->add_option("file", co.file, "Matrix file")->required()->check(CLI::ExistingFile);
    norm->add_option("--k", co.k, "Number of leading singular values");
    norm->add_option("--p", co.p, "Exponent p >= 1, or inf")->required();
    norm->add_option("--ambient", co.ambient, "Pad the spectrum with zeros to this dimension");
    norm->callback([&] { action = [&] { return cmd_norm(co); }; });

    auto* antinorm =
        compute->add_subcommand("antinorm", "(k,p)-anti-norm of a PSD matrix, or the Schatten anti-norm without --k");
    antinorm->add_option("file", co.file, "Matrix file")->required()->check(CLI::ExistingFile);
    antinorm->add_option("--k", co.k, "Number of smallest eigenvalues");
    antinorm->add_option("--p", co.p, "Exponent in (0,1]; negative values need positive definite input without --k")
        ->required();
    antinorm->add_option("--ambient", co.ambient, "Pad the spectrum with zeros to this dimension");
    antinorm->callback([&] { action = [&] { return cmd_antinorm(co); }; });

    auto* entropy = compute->add_subcommand("entropy", "Unified (alpha,s)-entropy of a density matrix");
    entropy->add_option("file", co.file, "Density matrix file")->required()->check(CLI::ExistingFile);
    entropy->add_option("--alpha", co.alpha, "Order alpha > 0")->required();
    entropy->add_option("--s", co.s, "Parameter s; 0 gives Renyi, 1 gives Tsallis")->capture_default_str();
    entropy->callback([&] { action = [&] { return cmd_entropy(co); }; });

    auto* fidelity = compute->add_subcommand("fidelity", "Partial fidelity of two density matrices");
    fidelity->add_option("rho", co.file, "First density matrix file")->required()->check(CLI::ExistingFile);
    fidelity->add_option("sigma", co.second_file, "Second density matrix file")->required()->check(CLI::ExistingFile);
    fidelity->add_option("--k", co.k, "Index k in [1, m]")->required();
    fidelity->callback([&] { action = [&] { return cmd_fidelity(co); }; });

    PtraceOptions po;
    auto* ptrace = app.add_subcommand("ptrace", "Partial trace of a bipartite matrix file, printed as a matrix file");
    ptrace->add_option("file", po.file, "Matrix file of dimension dim-a * dim-b")->required()->check(CLI::ExistingFile);
    ptrace->add_option("--dim-a", po.dim_a, "Dimension of the first factor")->required()->check(CLI::PositiveNumber);
    ptrace->add_option("--dim-b", po.dim_b, "Dimension of the second factor")->required()->check(CLI::PositiveNumber);
    ptrace->add_option("--over", po.over, "Factor to trace out")->check(CLI::IsMember({"a", "b"}))->capture_default_str();
    ptrace->add_flag("--oracle", po.oracle, "Also report the deviation of the Pauli twirl from the block-trace formula");
    ptrace->callback([&] { action = [&] { return cmd_ptrace(po); }; });

    ApplyOptions ao;
    auto* apply = app.add_subcommand("apply", "Apply the channel given by a Kraus file to a matrix file");
    apply->add_option("--kraus", ao.kraus, "Kraus file {\"kraus\": [matrix, ...]}")->required()->check(CLI::ExistingFile);
    apply->add_option("file", ao.file, "Input matrix file")->required()->check(CLI::ExistingFile);
    apply->callback([&] { action = [&] { return cmd_apply(ao); }; });

    AuditOptions uo;
    auto* audit = app.add_subcommand("audit", "Run the seeded inequality audit and write a JSON report");
    audit->add_option("--seed", uo.seed, "Base seed")->capture_default_str();
    audit->add_option("--trials", uo.trials, "Trials per case")->capture_default_str();
    audit->add_option("--dims", uo.dims, "Comma-separated MxN factor dimensions (default 2x2,2x3,3x2,4x3)");
    audit->add_option("--out", uo.out, "Report path; standard output when omitted");
    audit->add_option("--case", uo.cases, "Run only this case id (repeatable)");
    audit->add_option("--threads", uo.threads, "Worker threads; 0 uses all cores")->capture_default_str();
    audit->add_option("--d-source", uo.d_source, "Environment dimension for channel bounds: choi rank or dilation")
        ->check(CLI::IsMember({"choi", "env"}))
        ->capture_default_str();
    audit->callback([&] { action = [&] { return cmd_audit(uo); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    return guarded(action);
}
