#pragma once
//
// Registry of the partial-trace / channel inequalities as signed-margin
// evaluators, and the seeded runner that samples them.
//
// Every evaluator returns comparisons (greater, lesser) where the inequality
// claims greater >= lesser. A check is violated when
//     greater - lesser < -tolerance * max(1, |greater|, |lesser|).
//

#include "uinorm/sampling.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uinorm::audit {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kSaturationTol = 1e-10;
inline constexpr double kIdentityTol = 1e-10;
inline constexpr std::string_view kVersion = "0.1.0";

/// Which environment dimension the channel bounds are stated against.
enum class EnvDimSource { choi_rank, dim_env };

struct EvalParams {
    /// Rank cutoffs; empty means every admissible k.
    std::vector<std::size_t> ks;
    std::vector<double> norm_p{1.0, 1.5, 2.0, 3.0, 10.0, std::numeric_limits<double>::infinity()};
    /// p and q of the Holder-type chains for norms (finite, >= 1).
    std::vector<double> chain_p{1.0, 1.5, 2.0, 3.0, 10.0};
    std::vector<double> chain_q{1.0, 1.5, 2.0, 3.0, 10.0};
    std::vector<double> antinorm_p{0.25, 0.5, 0.75, 1.0};
    /// p and q of the anti-norm chain, both in (0,1).
    std::vector<double> antichain_p{0.25, 0.5, 0.75};
    std::vector<double> antichain_q{0.25, 0.5, 0.75};
    std::vector<double> negative_p{-0.5, -1.0, -2.0};
    std::vector<double> alpha{0.3, 0.7, 1.0, 1.5, 3.0};
    std::vector<double> s{-1.0, 0.0, 0.5, 1.0, 2.0};
    EnvDimSource env_source = EnvDimSource::choi_rank;
};

struct Comparison {
    double greater = 0.0;
    double lesser = 0.0;

    double margin() const noexcept { return greater - lesser; }
    double scale() const noexcept;
    double relative_margin() const noexcept { return margin() / scale(); }
};

struct TrialOutcome {
    std::vector<Comparison> checks;
    /// Set by cases that also probe whether a weaker companion bound is strictly looser.
    std::optional<bool> strict_dominance;
    /// Set by cases that verify an algebraic identity between two margins.
    std::optional<double> identity_residual;

    double worst_margin() const;          // min raw margin
    double worst_relative_margin() const; // min relative margin
    double max_abs_relative_margin() const;
};

struct InequalityCase {
    std::string id;
    std::string description;
    /// The inequality in plain text.
    std::string paper_eq;
    /// Kind of the sampled operator (the channel input for channel cases).
    SampleKind input_kind = SampleKind::ginibre;
    bool needs_channel = false;
    /// Sample an m x m operator on H_A only; the instance still carries n.
    bool factor_a_only = false;
    /// Every trial is an equality instance; |relative margin| must stay below kSaturationTol.
    bool equality_expected = false;
    std::function<TrialOutcome(const Instance&, const EvalParams&)> evaluator;
    /// Builds an instance on which the inequality is tight; empty if none.
    std::function<Instance(SampleDims, std::uint64_t)> saturator;
};

const std::vector<InequalityCase>& registry();
/// Throws BadParams for an unknown id.
const InequalityCase& find_case(std::string_view id);

/// Full outcome of one case on one instance. Throws KindMismatch when the
/// instance does not fit the case.
TrialOutcome evaluate_trial(const InequalityCase& c, const Instance& inst, const EvalParams& params);

/// Worst (smallest) raw margin of the case over the parameter grid.
double evaluate_case(std::string_view case_id, const Instance& inst, const EvalParams& params);

struct AuditConfig {
    std::uint64_t base_seed = 42;
    std::size_t trials_per_case = 200;
    std::vector<std::pair<std::size_t, std::size_t>> dims{{2, 2}, {2, 3}, {3, 2}, {4, 3}};
    EvalParams params;
    double tolerance = kDefaultTolerance;
    /// Case ids to run; empty runs the whole registry.
    std::vector<std::string> cases;
    /// Worker threads; 0 uses the hardware concurrency.
    unsigned threads = 0;
};

/// Throws BadParams on an invalid config.
void validate(const AuditConfig& config);

struct CaseReport {
    std::string id;
    std::string description;
    std::string paper_eq;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::size_t errors = 0;
    double worst_margin = 0.0; // smallest relative margin seen
    std::optional<double> saturation_residual;
    std::optional<std::size_t> strict_dominance;
    std::optional<double> identity_residual;
    std::vector<std::string> error_messages;

    bool passed() const noexcept;
};

struct AuditReport {
    AuditConfig config;
    std::vector<CaseReport> cases;
    std::string version{kVersion};
    std::string prng{kPrngDescription};

    bool passed() const noexcept;
    std::size_t total_violations() const noexcept;
};

/// Trial t of a case uses dims[t % dims.size()] and seed
/// derive_seed(base_seed, id, t). Never throws on evaluator failures; they
/// are recorded per trial.
AuditReport run_audit(const AuditConfig& config);

/// Deterministic JSON serialization (trailing newline included).
std::string to_json(const AuditReport& report);

} // namespace uinorm::audit
