#include "uinorm/audit.hpp"

#include "uinorm/antinorms.hpp"
#include "uinorm/bipartite.hpp"
#include "uinorm/channels.hpp"
#include "uinorm/entropy.hpp"
#include "uinorm/errors.hpp"
#include "uinorm/norms.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

namespace uinorm::audit {

namespace {

constexpr std::size_t kKeptErrorMessages = 5;
constexpr double kSaturationScale = 2.5;

std::vector<std::size_t> k_values(const EvalParams& params, std::size_t kmax)
{
    std::vector<std::size_t> out;
    if (params.ks.empty()) {
        for (std::size_t k = 1; k <= kmax; ++k) {
            out.push_back(k);
        }
        return out;
    }
    for (std::size_t k : params.ks) {
        if (k >= 1 && k <= kmax) {
            out.push_back(k);
        }
    }
    if (out.empty()) {
        throw Error(ErrorKind::BadParams, "no k in the grid lies in [1, " + std::to_string(kmax) + "]");
    }
    return out;
}

std::vector<double> padded_front(std::vector<double> ascending, std::size_t dim)
{
    if (dim > ascending.size()) {
        ascending.insert(ascending.begin(), dim - ascending.size(), 0.0);
    }
    return ascending;
}

std::vector<double> padded_back(std::vector<double> descending, std::size_t dim)
{
    if (dim > descending.size()) {
        descending.resize(dim, 0.0);
    }
    return descending;
}

// Spectra of W and Tr_B W shared by the bipartite cases.
struct Bipartite {
    std::size_t m;
    std::size_t n;
    ComplexMatrix w;
    ComplexMatrix reduced;
};

Bipartite split(const Instance& inst)
{
    const std::size_t m = inst.dims.m;
    const std::size_t n = inst.dims.n;
    if (!inst.matrix.is_square() || inst.matrix.rows() != m * n) {
        throw Error(ErrorKind::KindMismatch, "instance matrix is not (m*n) square");
    }
    BipartiteOperator w(inst.matrix, m, n);
    auto reduced = partial_trace_b(w);
    return {m, n, inst.matrix, std::move(reduced)};
}

const ComplexMatrix& square_matrix(const Instance& inst)
{
    if (!inst.matrix.is_square()) {
        throw Error(ErrorKind::KindMismatch, "instance matrix is not square");
    }
    return inst.matrix;
}

double env_dim(const StinespringChannel& ch, const EvalParams& params)
{
    const std::size_t d = params.env_source == EnvDimSource::choi_rank ? choi_rank(ch) : ch.dim_env();
    return static_cast<double>(d);
}

const StinespringChannel& channel_of(const Instance& inst)
{
    if (!inst.channel) {
        throw Error(ErrorKind::KindMismatch, "case needs a channel instance");
    }
    if (inst.channel->dim_in() != inst.matrix.rows() || !inst.matrix.is_square()) {
        throw Error(ErrorKind::KindMismatch, "channel input dimension does not match the operator");
    }
    return *inst.channel;
}

// ---------------------------------------------------------------- norms

void kpn1_checks(const ComplexMatrix& w, std::size_t m, std::size_t n, const EvalParams& params,
                 std::vector<Comparison>& checks)
{
    const auto reduced = partial_trace_b(BipartiteOperator(w, m, n));
    const auto s_w = singular_values(w);
    const auto s_a = singular_values(reduced);
    for (std::size_t k : k_values(params, m)) {
        for (double p : params.norm_p) {
            checks.push_back({dimension_factor(static_cast<double>(n), p) * gauge_kp(s_w, k * n, p),
                              gauge_kp(s_a, k, p)});
        }
    }
}

void kqn1_checks(const ComplexMatrix& w, std::size_t m, std::size_t n, const EvalParams& params,
                 std::vector<Comparison>& checks)
{
    const auto reduced = partial_trace_b(BipartiteOperator(w, m, n));
    const auto e_w = psd_spectrum(w);
    const auto e_a = psd_spectrum(reduced);
    for (std::size_t k : k_values(params, m)) {
        for (double p : params.antinorm_p) {
            checks.push_back({antigauge_kp(e_a, k, p),
                              dimension_factor(static_cast<double>(n), p) * antigauge_kp(e_w, k * n, p)});
        }
    }
}

TrialOutcome eval_kpn1(const Instance& inst, const EvalParams& params)
{
    const auto b = split(inst);
    TrialOutcome out;
    kpn1_checks(b.w, b.m, b.n, params, out.checks);
    return out;
}

TrialOutcome eval_spn1(const Instance& inst, const EvalParams& params)
{
    const auto b = split(inst);
    const auto s_w = singular_values(b.w);
    const auto s_a = singular_values(b.reduced);
    TrialOutcome out;
    for (double p : params.norm_p) {
        out.checks.push_back({dimension_factor(static_cast<double>(b.n), p) * gauge_kp(s_w, s_w.size(), p),
                              gauge_kp(s_a, s_a.size(), p)});
    }
    return out;
}

TrialOutcome eval_tfsn(const Instance& inst, const EvalParams&)
{
    const auto b = split(inst);
    const double n = static_cast<double>(b.n);
    TrialOutcome out;
    out.checks.push_back({schatten_norm(b.w, 1.0), schatten_norm(b.reduced, 1.0)});
    out.checks.push_back({std::sqrt(n) * schatten_norm(b.w, 2.0), schatten_norm(b.reduced, 2.0)});
    out.checks.push_back({n * spectral_norm(b.w), spectral_norm(b.reduced)});
    return out;
}

TrialOutcome eval_kpk1(const Instance& inst, const EvalParams& params)
{
    const auto b = split(inst);
    const auto s_w = singular_values(b.w);
    const auto s_a = singular_values(b.reduced);
    TrialOutcome out;
    for (std::size_t k : k_values(params, b.m)) {
        out.checks.push_back({gauge_kp(s_w, k * b.n, 1.0), gauge_kp(s_a, k, 1.0)});
    }
    return out;
}

TrialOutcome eval_kpk2(const Instance& inst, const EvalParams&)
{
    const auto b = split(inst);
    const auto s_w = singular_values(b.w);
    const double kyfan_n = gauge_kp(s_w, b.n, 1.0);
    const double spectral_bound = static_cast<double>(b.n) * s_w.front();
    TrialOutcome out;
    out.checks.push_back({kyfan_n, spectral_norm(b.reduced)});
    const Comparison dominance{spectral_bound, kyfan_n};
    out.checks.push_back(dominance);
    out.strict_dominance = dominance.margin() > kDefaultTolerance * dominance.scale();
    return out;
}

TrialOutcome eval_tpn2(const Instance& inst, const EvalParams& params)
{
    const auto& r = square_matrix(inst);
    const auto s_r = singular_values(r);
    TrialOutcome out;
    for (std::size_t k : k_values(params, s_r.size())) {
        const double kd = static_cast<double>(k);
        for (double p : params.chain_p) {
            for (double q : params.chain_q) {
                out.checks.push_back({std::pow(kd, (q - 1.0) / (p * q)) * gauge_kp(s_r, k, p * q),
                                      gauge_kp(s_r, k, p)});
            }
        }
    }
    return out;
}

TrialOutcome eval_cpn1(const Instance& inst, const EvalParams& params)
{
    const auto b = split(inst);
    const auto s_w = singular_values(b.w);
    const auto s_a = singular_values(b.reduced);
    const double log_n = std::log(static_cast<double>(b.n));
    TrialOutcome out;
    for (std::size_t k : k_values(params, b.m)) {
        const double log_k = std::log(static_cast<double>(k));
        for (double p : params.chain_p) {
            for (double q : params.chain_q) {
                const double pq = p * q;
                const double factor = std::exp(((q - 1.0) * log_k + (pq - 1.0) * log_n) / pq);
                out.checks.push_back({factor * gauge_kp(s_w, k * b.n, pq), gauge_kp(s_a, k, p)});
            }
        }
    }
    return out;
}

// ------------------------------------------------------------ anti-norms

TrialOutcome eval_kqn1(const Instance& inst, const EvalParams& params)
{
    const auto b = split(inst);
    TrialOutcome out;
    kqn1_checks(b.w, b.m, b.n, params, out.checks);
    return out;
}

TrialOutcome eval_kqn2(const Instance& inst, const EvalParams& params)
{
    const auto b = split(inst);
    TrialOutcome out;
    for (double p : params.negative_p) {
        out.checks.push_back({schatten_antinorm(b.reduced, p),
                              dimension_factor(static_cast<double>(b.n), p) * schatten_antinorm(b.w, p)});
    }
    return out;
}

TrialOutcome eval_kqk1(const Instance& inst, const EvalParams& params)
{
    const auto b = split(inst);
    const auto e_w = psd_spectrum(b.w);
    const auto e_a = psd_spectrum(b.reduced);
    // The companion Ky Fan norm margin is taken through singular values.
    const auto s_w = singular_values(b.w);
    const auto s_a = singular_values(b.reduced);
    const double trace = b.w.trace().real();
    TrialOutcome out;
    double residual = 0.0;
    for (std::size_t k : k_values(params, b.m)) {
        const Comparison c{antigauge_kp(e_a, k, 1.0), antigauge_kp(e_w, k * b.n, 1.0)};
        out.checks.push_back(c);
        const std::size_t kc = b.m - k;
        const double companion = kc == 0 ? 0.0 : gauge_kp(s_w, kc * b.n, 1.0) - gauge_kp(s_a, kc, 1.0);
        residual = std::max(residual, std::abs(c.margin() - companion) / std::max(trace, 1e-300));
    }
    out.identity_residual = residual;
    return out;
}

TrialOutcome eval_tpn62(const Instance& inst, const EvalParams& params)
{
    const auto e_r = psd_spectrum(square_matrix(inst));
    TrialOutcome out;
    for (std::size_t k : k_values(params, e_r.size())) {
        const double kd = static_cast<double>(k);
        for (double p : params.antichain_p) {
            for (double q : params.antichain_q) {
                out.checks.push_back({antigauge_kp(e_r, k, p),
                                      std::pow(kd, (q - 1.0) / (p * q)) * antigauge_kp(e_r, k, p * q)});
            }
        }
    }
    return out;
}

// -------------------------------------------------------------- channels

TrialOutcome eval_stct1(const Instance& inst, const EvalParams& params)
{
    const auto& ch = channel_of(inst);
    const auto output = apply(ch, inst.matrix);
    const double d = env_dim(ch, params);
    const std::size_t n = ch.dim_out();
    const std::size_t ambient = std::max(inst.matrix.rows(), n * static_cast<std::size_t>(d));
    const auto s_q = padded_back(singular_values(inst.matrix), ambient);
    const auto s_o = singular_values(output);
    TrialOutcome out;
    for (std::size_t k : k_values(params, n)) {
        for (double p : params.norm_p) {
            out.checks.push_back({dimension_factor(d, p) * gauge_kp(s_q, k * static_cast<std::size_t>(d), p),
                                  gauge_kp(s_o, k, p)});
        }
    }
    return out;
}

TrialOutcome eval_stctp(const Instance& inst, const EvalParams& params)
{
    const auto& ch = channel_of(inst);
    const auto output = apply(ch, inst.matrix);
    const double d = env_dim(ch, params);
    TrialOutcome out;
    for (double p : params.norm_p) {
        out.checks.push_back({dimension_factor(d, p) * schatten_norm(inst.matrix, p), schatten_norm(output, p)});
    }
    return out;
}

TrialOutcome eval_stct2(const Instance& inst, const EvalParams& params)
{
    const auto& ch = channel_of(inst);
    const auto output = apply(ch, inst.matrix);
    const double d = env_dim(ch, params);
    const std::size_t n = ch.dim_out();
    const std::size_t ambient = std::max(inst.matrix.rows(), n * static_cast<std::size_t>(d));
    const auto e_q = padded_front(psd_spectrum(inst.matrix), ambient);
    const auto e_o = psd_spectrum(output);
    TrialOutcome out;
    for (std::size_t k : k_values(params, n)) {
        for (double p : params.antinorm_p) {
            out.checks.push_back({antigauge_kp(e_o, k, p),
                                  dimension_factor(d, p) * antigauge_kp(e_q, k * static_cast<std::size_t>(d), p)});
        }
    }
    return out;
}

TrialOutcome eval_stctpp(const Instance& inst, const EvalParams& params)
{
    const auto& ch = channel_of(inst);
    const auto output = apply(ch, inst.matrix);
    const double d = env_dim(ch, params);
    TrialOutcome out;
    for (double p : params.antinorm_p) {
        out.checks.push_back({schatten_antinorm(output, p), dimension_factor(d, p) * schatten_antinorm(inst.matrix, p)});
    }
    return out;
}

// ------------------------------------------------------------- entropies

Comparison unified_bound(const ComplexMatrix& joint, const ComplexMatrix& marginal, double n, EntropyParams ep)
{
    const double weight = std::pow(n, (1.0 - ep.alpha) * ep.s);
    return {weight * unified_entropy(marginal, ep) + dimension_entropy_term(n, ep), unified_entropy(joint, ep)};
}

TrialOutcome eval_et41(const Instance& inst, const EvalParams& params)
{
    const auto b = split(inst);
    TrialOutcome out;
    for (double alpha : params.alpha) {
        for (double s : params.s) {
            out.checks.push_back(unified_bound(b.w, b.reduced, static_cast<double>(b.n), {alpha, s}));
        }
    }
    return out;
}

TrialOutcome eval_ett41(const Instance& inst, const EvalParams& params)
{
    const auto b = split(inst);
    const double n = static_cast<double>(b.n);
    TrialOutcome out;
    for (double alpha : params.alpha) {
        out.checks.push_back({std::pow(n, 1.0 - alpha) * tsallis_entropy(b.reduced, alpha) + alpha_log(n, alpha),
                              tsallis_entropy(b.w, alpha)});
    }
    return out;
}

TrialOutcome eval_et42(const Instance& inst, const EvalParams& params)
{
    const auto b = split(inst);
    const double log_n = std::log(static_cast<double>(b.n));
    TrialOutcome out;
    for (double alpha : params.alpha) {
        out.checks.push_back({renyi_entropy(b.reduced, alpha) + log_n, renyi_entropy(b.w, alpha)});
    }
    return out;
}

TrialOutcome eval_stctep(const Instance& inst, const EvalParams& params)
{
    const auto& ch = channel_of(inst);
    const auto output = apply(ch, inst.matrix);
    const double d = env_dim(ch, params);
    TrialOutcome out;
    for (double alpha : params.alpha) {
        for (double s : params.s) {
            out.checks.push_back(unified_bound(inst.matrix, output, d, {alpha, s}));
        }
    }
    return out;
}

// ------------------------------------------------------------ saturation

TrialOutcome eval_sat_wrqa(const Instance& inst, const EvalParams& params)
{
    const auto& r = square_matrix(inst);
    const std::size_t m = r.rows();
    const std::size_t n = inst.dims.n;
    TrialOutcome out;
    for (double c : {1.0, kSaturationScale}) {
        const auto w = kron(r * Complex(c), ComplexMatrix::identity(n));
        kpn1_checks(w, m, n, params, out.checks);
        kqn1_checks(w, m, n, params, out.checks);
    }
    return out;
}

Instance bipartite_instance(SampleKind kind, SampleDims dims, ComplexMatrix matrix)
{
    Instance inst;
    inst.kind = kind;
    inst.dims = {dims.m, dims.n, 0};
    inst.matrix = std::move(matrix);
    return inst;
}

// c * R (x) I_n with R drawn from `kind` on H_A.
std::function<Instance(SampleDims, std::uint64_t)> product_saturator(SampleKind kind)
{
    return [kind](SampleDims dims, std::uint64_t seed) {
        const auto a = sample(kind, {dims.m, 1, 0}, seed);
        auto w = kron(a.matrix * Complex(kSaturationScale), ComplexMatrix::identity(dims.n));
        return bipartite_instance(kind, dims, std::move(w));
    };
}

Instance reduced_density_product(SampleDims dims, std::uint64_t seed)
{
    const auto a = sample(SampleKind::density, {dims.m, 1, 0}, seed);
    auto w = kron(a.matrix, ComplexMatrix::identity(dims.n) * Complex(1.0 / static_cast<double>(dims.n)));
    return bipartite_instance(SampleKind::bipartite_density, dims, std::move(w));
}

// The partial trace over H_B as a channel, fed an input whose trace-out is exact.
Instance partial_trace_channel_instance(Instance input, SampleDims dims)
{
    input.channel = partial_trace_channel(dims.m, dims.n);
    input.dims = {dims.m * dims.n, dims.m, dims.n};
    return input;
}

std::function<Instance(SampleDims, std::uint64_t)> channel_saturator(SampleKind kind)
{
    return [kind](SampleDims dims, std::uint64_t seed) {
        const auto a = sample(kind, {dims.m, 1, 0}, seed);
        auto input = bipartite_instance(kind, dims, kron(a.matrix, ComplexMatrix::identity(dims.n)));
        return partial_trace_channel_instance(std::move(input), dims);
    };
}

std::vector<InequalityCase> build_registry()
{
    using K = SampleKind;
    std::vector<InequalityCase> r;
    auto add = [&r](std::string id, std::string description, std::string formula, K kind, auto evaluator,
                    std::function<Instance(SampleDims, std::uint64_t)> saturator) -> InequalityCase& {
        InequalityCase c;
        c.id = std::move(id);
        c.description = std::move(description);
        c.paper_eq = std::move(formula);
        c.input_kind = kind;
        c.evaluator = evaluator;
        c.saturator = std::move(saturator);
        r.push_back(std::move(c));
        return r.back();
    };

    add("KPN1", "(k,p)-norm of a partial trace is bounded by the (kn,p)-norm of the joint operator",
        "||Tr_B W||_(k)^(p) <= n^((p-1)/p) ||W||_(kn)^(p), 1 <= k <= m, p >= 1", K::ginibre, eval_kpn1,
        product_saturator(K::psd));
    add("SPN1", "Schatten p-norm of a partial trace", "||Tr_B W||_p <= n^((p-1)/p) ||W||_p, p >= 1", K::ginibre,
        eval_spn1, product_saturator(K::psd));
    add("TFSN", "trace, Frobenius and spectral norms of a partial trace",
        "||Q_A||_1 <= ||W||_1; ||Q_A||_2 <= sqrt(n) ||W||_2; ||Q_A||_inf <= n ||W||_inf", K::ginibre, eval_tfsn,
        product_saturator(K::psd));
    add("KPK1", "Ky Fan k-norm of a partial trace", "||Tr_B W||_(k) <= ||W||_(kn)", K::ginibre, eval_kpk1,
        product_saturator(K::psd));
    add("KPK2", "spectral norm of a partial trace against the Ky Fan n-norm, with dominance over n ||W||_inf",
        "||Tr_B W||_inf <= ||W||_(n) <= n ||W||_inf", K::ginibre, eval_kpk2, product_saturator(K::psd));
    add("TPN2", "(k,p)-norm against the (k,pq)-norm of the same operator",
        "||R||_(k)^(p) <= k^((q-1)/(pq)) ||R||_(k)^(pq), p, q >= 1", K::ginibre, eval_tpn2,
        [](SampleDims dims, std::uint64_t seed) {
            const auto u = sample(K::unitary, {dims.m, dims.n, 0}, seed);
            return bipartite_instance(K::unitary, dims, u.matrix * Complex(kSaturationScale));
        });
    add("CPN1", "partial trace bound combined with the (k,pq) chain",
        "||Tr_B W||_(k)^(p) <= (k^(q-1) n^(pq-1))^(1/(pq)) ||W||_(kn)^(pq), p, q >= 1", K::ginibre, eval_cpn1,
        [](SampleDims dims, std::uint64_t seed) {
            const auto u = sample(K::unitary, {dims.m, 1, 0}, seed);
            auto w = kron(u.matrix * Complex(kSaturationScale), ComplexMatrix::identity(dims.n));
            return bipartite_instance(K::ginibre, dims, std::move(w));
        });
    add("KQN1", "(k,p)-anti-norm of a partial trace of a PSD operator",
        "||Tr_B W||_{k}^(p) >= n^((p-1)/p) ||W||_{kn}^(p), W >= 0, 0 < p <= 1", K::psd, eval_kqn1,
        product_saturator(K::psd));
    add("KQN2", "Schatten anti-norm with negative exponent of a partial trace of a PD operator",
        "||Tr_B W||_p >= n^((p-1)/p) ||W||_p, W > 0, p < 0", K::pd, eval_kqn2, product_saturator(K::pd));
    add("KQK1", "Ky Fan anti-norms of a partial trace, equivalent to KPK1 at m-k",
        "||Tr_B W||_{k} >= ||W||_{kn}, W >= 0", K::psd, eval_kqk1, product_saturator(K::psd));
    add("TPN62", "(k,p)-anti-norm against the (k,pq)-anti-norm of the same PSD operator",
        "||R||_{k}^(p) >= k^((q-1)/(pq)) ||R||_{k}^(pq), R >= 0, 0 < p, q < 1", K::psd, eval_tpn62,
        [](SampleDims dims, std::uint64_t) {
            return bipartite_instance(K::psd, dims,
                                      ComplexMatrix::identity(dims.m * dims.n) * Complex(kSaturationScale));
        });
    add("STCT1", "(k,p)-norm of a channel output against the input (kd,p)-norm",
        "||Phi(Q)||_(k)^(p) <= d^((p-1)/p) ||Q||_(kd)^(p), 1 <= k <= n, p >= 1", K::ginibre, eval_stct1,
        channel_saturator(K::ginibre))
        .needs_channel = true;
    add("STCTP", "Schatten p-norm of a channel output", "||Phi(Q)||_p <= d^((p-1)/p) ||Q||_p, p >= 1", K::ginibre,
        eval_stctp, channel_saturator(K::ginibre))
        .needs_channel = true;
    add("STCT2", "(k,p)-anti-norm of a channel output for a PSD input",
        "||Phi(Q)||_{k}^(p) >= d^((p-1)/p) ||Q||_{kd}^(p), Q >= 0, 0 < p <= 1, spectrum of Q zero-padded to nd",
        K::psd, eval_stct2, channel_saturator(K::psd))
        .needs_channel = true;
    add("STCTPP", "Schatten p-anti-norm of a channel output for a PSD input",
        "||Phi(Q)||_p >= d^((p-1)/p) ||Q||_p, Q >= 0, 0 < p <= 1", K::psd, eval_stctpp, channel_saturator(K::psd))
        .needs_channel = true;
    add("ET41", "unified (alpha,s)-entropy of a joint state against its reduced state",
        "E_alpha^s(W) <= n^((1-alpha)s) E_alpha^s(rho_A) + (1/s) ln_alpha(n^s)", K::bipartite_density, eval_et41,
        reduced_density_product);
    add("ETT41", "Tsallis entropy of a joint state against its reduced state",
        "T_alpha(W) <= n^(1-alpha) T_alpha(rho_A) + ln_alpha(n)", K::bipartite_density, eval_ett41,
        reduced_density_product);
    add("ET42", "Renyi entropy of a joint state against its reduced state",
        "R_alpha(W) <= R_alpha(rho_A) + ln n", K::bipartite_density, eval_et42, reduced_density_product);
    add("STCTEP", "unified entropy of a channel input against its output",
        "E_alpha^s(rho) <= d^((1-alpha)s) E_alpha^s(Phi(rho)) + (1/s) ln_alpha(d^s)", K::density, eval_stctep,
        [](SampleDims dims, std::uint64_t seed) {
            auto input = reduced_density_product(dims, seed);
            input.kind = K::density;
            return partial_trace_channel_instance(std::move(input), dims);
        })
        .needs_channel = true;
    auto& sat = add("SAT-WRQA", "equality in KPN1 and KQN1 for W = c R_A (x) I_n, c in {1, 2.5}",
                    "||Tr_B W||_(k)^(p) = n^((p-1)/p) ||W||_(kn)^(p) and the anti-norm analogue, W = c R_A (x) I_B",
                    K::psd, eval_sat_wrqa, nullptr);
    sat.factor_a_only = true;
    sat.equality_expected = true;
    return r;
}

void check_kind(const InequalityCase& c, const Instance& inst)
{
    const auto mismatch = [&](std::string_view why) {
        throw Error(ErrorKind::KindMismatch,
                    c.id + " got a " + std::string(to_string(inst.kind)) + " instance: " + std::string(why));
    };
    if (c.needs_channel && !inst.channel) {
        mismatch("a channel is required");
    }
    if (c.input_kind == SampleKind::pd && inst.kind != SampleKind::pd) {
        mismatch("a positive definite operator is required");
    }
    if (is_density_kind(c.input_kind) && !is_density_kind(inst.kind)) {
        mismatch("a density matrix is required");
    }
    if (is_positive_kind(c.input_kind) && !is_positive_kind(inst.kind)) {
        mismatch("a positive semidefinite operator is required");
    }
}

bool violates(const InequalityCase& c, const TrialOutcome& out, double tolerance)
{
    for (const auto& check : out.checks) {
        if (!(check.margin() >= -tolerance * check.scale())) {
            return true;
        }
    }
    if (c.equality_expected && !(out.max_abs_relative_margin() <= kSaturationTol)) {
        return true;
    }
    return out.identity_residual && !(*out.identity_residual <= kIdentityTol);
}

Instance trial_instance(const InequalityCase& c, std::pair<std::size_t, std::size_t> mn, std::size_t trial,
                        std::uint64_t seed)
{
    const auto [m, n] = mn;
    if (c.needs_channel) {
        auto inst = sample(c.input_kind, {m, 1, 0}, seed);
        const std::size_t d = (m + n - 1) / n + trial % 3;
        auto ch = sample(SampleKind::channel, {m, n, d}, splitmix64(seed));
        inst.channel = std::move(ch.channel);
        inst.dims = {m, n, d};
        return inst;
    }
    if (c.factor_a_only) {
        auto inst = sample(c.input_kind, {m, 1, 0}, seed);
        inst.dims.n = n;
        return inst;
    }
    return sample(c.input_kind, {m, n, 0}, seed);
}

void record_error(CaseReport& report, const std::string& where, const std::exception& e)
{
    ++report.errors;
    if (report.error_messages.size() < kKeptErrorMessages) {
        report.error_messages.push_back(where + ": " + e.what());
    }
}

CaseReport run_case(const InequalityCase& c, const AuditConfig& config)
{
    CaseReport report;
    report.id = c.id;
    report.description = c.description;
    report.paper_eq = c.paper_eq;
    report.trials = config.trials_per_case;
    double worst = std::numeric_limits<double>::infinity();
    double equality_residual = 0.0;
    std::optional<double> identity;
    for (std::size_t t = 0; t < config.trials_per_case; ++t) {
        try {
            const auto mn = config.dims[t % config.dims.size()];
            const auto inst = trial_instance(c, mn, t, derive_seed(config.base_seed, c.id, t));
            const auto out = evaluate_trial(c, inst, config.params);
            worst = std::min(worst, out.worst_relative_margin());
            equality_residual = std::max(equality_residual, out.max_abs_relative_margin());
            if (violates(c, out, config.tolerance)) {
                ++report.violations;
            }
            if (out.strict_dominance) {
                report.strict_dominance = report.strict_dominance.value_or(0) + (*out.strict_dominance ? 1 : 0);
            }
            if (out.identity_residual) {
                identity = std::max(identity.value_or(0.0), *out.identity_residual);
            }
        } catch (const std::exception& e) {
            record_error(report, "trial " + std::to_string(t), e);
        }
    }
    report.worst_margin = std::isinf(worst) ? std::numeric_limits<double>::quiet_NaN() : worst;
    report.identity_residual = identity;
    if (c.equality_expected) {
        report.saturation_residual = equality_residual;
    } else if (c.saturator) {
        double residual = 0.0;
        for (std::size_t i = 0; i < config.dims.size(); ++i) {
            try {
                const auto [m, n] = config.dims[i];
                const auto inst = c.saturator({m, n, 0}, derive_seed(config.base_seed, c.id + "/saturation", i));
                residual = std::max(residual, evaluate_trial(c, inst, config.params).max_abs_relative_margin());
            } catch (const std::exception& e) {
                record_error(report, "saturation " + std::to_string(i), e);
            }
        }
        report.saturation_residual = residual;
    }
    return report;
}

void require_all(const std::vector<double>& grid, const std::string& name, bool (*ok)(double))
{
    if (grid.empty()) {
        throw Error(ErrorKind::BadParams, name + " grid is empty");
    }
    for (double v : grid) {
        if (!ok(v)) {
            throw Error(ErrorKind::BadParams, name + " grid value " + std::to_string(v) + " is out of range");
        }
    }
}

nlohmann::ordered_json grid_json(const std::vector<double>& grid)
{
    auto out = nlohmann::ordered_json::array();
    for (double v : grid) {
        if (std::isinf(v)) {
            out.push_back(v > 0 ? "inf" : "-inf");
        } else {
            out.push_back(v);
        }
    }
    return out;
}

template <typename T>
nlohmann::ordered_json optional_json(const std::optional<T>& v)
{
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

} // namespace

double Comparison::scale() const noexcept
{
    return std::max({1.0, std::abs(greater), std::abs(lesser)});
}

double TrialOutcome::worst_margin() const
{
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& c : checks) {
        worst = std::min(worst, c.margin());
    }
    return worst;
}

double TrialOutcome::worst_relative_margin() const
{
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& c : checks) {
        worst = std::min(worst, c.relative_margin());
    }
    return worst;
}

double TrialOutcome::max_abs_relative_margin() const
{
    double largest = 0.0;
    for (const auto& c : checks) {
        largest = std::max(largest, std::abs(c.relative_margin()));
    }
    return largest;
}

const std::vector<InequalityCase>& registry()
{
    static const std::vector<InequalityCase> cases = build_registry();
    return cases;
}

const InequalityCase& find_case(std::string_view id)
{
    for (const auto& c : registry()) {
        if (c.id == id) {
            return c;
        }
    }
    throw Error(ErrorKind::BadParams, "unknown case id '" + std::string(id) + "'");
}

TrialOutcome evaluate_trial(const InequalityCase& c, const Instance& inst, const EvalParams& params)
{
    check_kind(c, inst);
    return c.evaluator(inst, params);
}

double evaluate_case(std::string_view case_id, const Instance& inst, const EvalParams& params)
{
    return evaluate_trial(find_case(case_id), inst, params).worst_margin();
}

void validate(const AuditConfig& config)
{
    if (config.trials_per_case < 1) {
        throw Error(ErrorKind::BadParams, "trials_per_case must be at least 1");
    }
    if (config.dims.empty()) {
        throw Error(ErrorKind::BadParams, "dims must be nonempty");
    }
    for (const auto& [m, n] : config.dims) {
        if (m < 1 || n < 1) {
            throw Error(ErrorKind::BadParams, "dims must be positive");
        }
    }
    if (!(config.tolerance > 0.0) || !std::isfinite(config.tolerance)) {
        throw Error(ErrorKind::BadParams, "tolerance must be positive and finite");
    }
    for (const auto& id : config.cases) {
        find_case(id);
    }
    const auto& p = config.params;
    for (std::size_t k : p.ks) {
        if (k < 1) {
            throw Error(ErrorKind::BadParams, "k grid values must be at least 1");
        }
    }
    require_all(p.norm_p, "norm p", [](double v) { return v >= 1.0; });
    require_all(p.chain_p, "chain p", [](double v) { return v >= 1.0 && std::isfinite(v); });
    require_all(p.chain_q, "chain q", [](double v) { return v >= 1.0 && std::isfinite(v); });
    require_all(p.antinorm_p, "anti-norm p", [](double v) { return v > 0.0 && v <= 1.0; });
    require_all(p.antichain_p, "anti-norm chain p", [](double v) { return v > 0.0 && v < 1.0; });
    require_all(p.antichain_q, "anti-norm chain q", [](double v) { return v > 0.0 && v < 1.0; });
    require_all(p.negative_p, "negative p", [](double v) { return v < 0.0 && std::isfinite(v); });
    require_all(p.alpha, "alpha", [](double v) { return v > 0.0 && std::isfinite(v); });
    require_all(p.s, "s", [](double v) { return std::isfinite(v); });
}

bool CaseReport::passed() const noexcept
{
    return violations == 0 && errors == 0 && (!saturation_residual || *saturation_residual <= kSaturationTol) &&
           (!identity_residual || *identity_residual <= kIdentityTol);
}

bool AuditReport::passed() const noexcept
{
    return std::all_of(cases.begin(), cases.end(), [](const CaseReport& c) { return c.passed(); });
}

std::size_t AuditReport::total_violations() const noexcept
{
    std::size_t total = 0;
    for (const auto& c : cases) {
        total += c.violations;
    }
    return total;
}

AuditReport run_audit(const AuditConfig& config)
{
    validate(config);
    std::vector<const InequalityCase*> selected;
    if (config.cases.empty()) {
        for (const auto& c : registry()) {
            selected.push_back(&c);
        }
    } else {
        const std::set<std::string> wanted(config.cases.begin(), config.cases.end());
        for (const auto& c : registry()) {
            if (wanted.count(c.id) != 0) {
                selected.push_back(&c);
            }
        }
    }

    AuditReport report;
    report.config = config;
    report.cases.resize(selected.size());
    unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, selected.size()));

    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < selected.size(); i = next++) {
            report.cases[i] = run_case(*selected[i], config);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    return report;
}

std::string to_json(const AuditReport& report)
{
    using json = nlohmann::ordered_json;
    const auto& cfg = report.config;
    const auto& p = cfg.params;

    json dims = json::array();
    for (const auto& [m, n] : cfg.dims) {
        dims.push_back(std::to_string(m) + "x" + std::to_string(n));
    }
    json cases_run = json::array();
    for (const auto& c : report.cases) {
        cases_run.push_back(c.id);
    }

    json grids;
    grids["k"] = p.ks.empty() ? json("all") : json(p.ks);
    grids["norm_p"] = grid_json(p.norm_p);
    grids["chain_p"] = grid_json(p.chain_p);
    grids["chain_q"] = grid_json(p.chain_q);
    grids["antinorm_p"] = grid_json(p.antinorm_p);
    grids["antichain_p"] = grid_json(p.antichain_p);
    grids["antichain_q"] = grid_json(p.antichain_q);
    grids["negative_p"] = grid_json(p.negative_p);
    grids["alpha"] = grid_json(p.alpha);
    grids["s"] = grid_json(p.s);

    json config;
    config["base_seed"] = cfg.base_seed;
    config["trials_per_case"] = cfg.trials_per_case;
    config["dims"] = dims;
    config["tolerance"] = cfg.tolerance;
    config["env_dim_source"] = p.env_source == EnvDimSource::choi_rank ? "choi_rank" : "dim_env";
    config["cases"] = cases_run;
    config["grids"] = grids;

    json cases = json::array();
    std::size_t passed_cases = 0;
    std::size_t total_errors = 0;
    for (const auto& c : report.cases) {
        json entry;
        entry["id"] = c.id;
        entry["paper_eq"] = c.paper_eq;
        entry["description"] = c.description;
        entry["trials"] = c.trials;
        entry["violations"] = c.violations;
        entry["errors"] = c.errors;
        entry["worst_margin"] = std::isnan(c.worst_margin) ? json(nullptr) : json(c.worst_margin);
        entry["saturation_residual"] = optional_json(c.saturation_residual);
        entry["strict_dominance"] = optional_json(c.strict_dominance);
        entry["identity_residual"] = optional_json(c.identity_residual);
        entry["error_messages"] = c.error_messages;
        entry["passed"] = c.passed();
        cases.push_back(entry);
        passed_cases += c.passed() ? 1 : 0;
        total_errors += c.errors;
    }

    json summary;
    summary["cases"] = report.cases.size();
    summary["passed_cases"] = passed_cases;
    summary["total_violations"] = report.total_violations();
    summary["total_errors"] = total_errors;
    summary["passed"] = report.passed();

    json root;
    root["version"] = report.version;
    root["prng"] = report.prng;
    root["config"] = config;
    root["cases"] = cases;
    root["summary"] = summary;
    return root.dump(2) + "\n";
}

} // namespace uinorm::audit
