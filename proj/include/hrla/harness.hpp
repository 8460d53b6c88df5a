#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hrla/diagnostics.hpp"
#include "hrla/potential.hpp"
#include "hrla/sampler.hpp"

namespace hrla {

/// Which per-iteration value feeds probabilities and the summary row.
///   terminal:     best U over the N chains at iterate k
///   running_best: best U over the N chains and all iterates <= k
enum class Statistic { terminal, running_best };

std::string_view to_string(Statistic s) noexcept;

/// Monte Carlo protocol: M runs of N chains of K iterations each.
/// Field names double as the keys of the `key = value` config format.
struct ExperimentConfig {
    std::string potential = "rastrigin";
    std::size_t d = 10;
    double curvature = 1.0; ///< quadratic only
    std::size_t m = 1;
    std::size_t n = 1;
    std::size_t k = 1;
    double h = 0.01;
    std::optional<double> a;
    std::optional<double> a_low;
    std::optional<double> a_high;
    std::vector<double> epsilons;
    SamplerKind sampler = SamplerKind::hrla;
    std::string init = "gaussian"; ///< gaussian | dirac
    double init_mean = 3.0;
    double init_variance = 10.0;
    double init_point = 1.0;
    std::uint64_t seed = 1;
    std::size_t workers = 1; ///< 0 = hardware concurrency
    std::size_t stride = 0;  ///< 0 = auto (10 when K >= 10^4, else 1)
    Statistic statistic = Statistic::terminal;

    /// Throws InvalidArgument describing the first violated constraint.
    void validate() const;
    double final_a() const;
    std::size_t effective_stride() const;
    Potential make_potential() const;
    InitialDistribution make_initial() const;
    ChainSpec make_chain_spec() const;
};

/// Parses the line-oriented config format: `key = value`, `#` comments,
/// blank lines ignored, unknown or repeated keys rejected.
ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunRecord {
    std::size_t run = 0;
    std::size_t best_sample = 0;        ///< chain holding the terminal best point
    std::vector<double> running_best;   ///< at ExperimentResult::iterations
    std::vector<double> iterate_best;   ///< at ExperimentResult::iterations
    double terminal_best_value = 0.0;
    std::vector<double> terminal_best_point;
};

struct SummaryRow {
    double h = 0.0;
    double a_final = 0.0;
    double avg = 0.0;
    double median = 0.0;
    double sd = 0.0;
    std::size_t m = 0, n = 0, k = 0;
    SamplerKind sampler = SamplerKind::hrla;
};

struct ExperimentResult {
    std::vector<std::size_t> iterations; ///< recorded iteration numbers (1-based, always ends at K)
    std::vector<RunRecord> records;
    EmpiricalProbabilityCurve curve;
    SummaryRow summary;
    std::uint64_t gradient_evaluations = 0;
};

/// Runs the protocol. Results are independent of cfg.workers: chain (r, i)
/// always draws from substream(seed, r, i) and reductions run in index order.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Shortest round-trip decimal form used in all CSV output.
std::string format_number(double v);

void write_curves_csv(std::ostream& out, const ExperimentResult& result);
void write_probabilities_csv(std::ostream& out, const ExperimentResult& result);
void write_summary_csv(std::ostream& out, const ExperimentResult& result);
void write_kl_profile_csv(std::ostream& out, const KlProfile& profile, double h);

/// Writes curves.csv, probabilities.csv and summary.csv into `dir`.
void write_experiment(const std::filesystem::path& dir, const ExperimentResult& result);

} // namespace hrla
