#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "archliq/config.hpp"
#include "archliq/estimators.hpp"

namespace archliq {

enum class Parameter { Alpha0, Alpha1, L1 };
inline constexpr std::array kAllParameters{Parameter::Alpha0, Parameter::Alpha1, Parameter::L1};
std::string_view to_string(Parameter p);

struct ReplicationRecord {
    std::size_t replication = 0;
    std::size_t sample_size = 0;
    EstimationResult result;

    std::optional<double> value(Parameter p) const;
};

struct ParameterSummary {
    std::optional<double> mean;  // over Real records; absent when there are none
    std::optional<double> sd;    // divisor R-1; 0 for a single Real record
    double pct_in_interval = 0.0;
};

struct SummaryRow {
    std::size_t sample_size = 0;
    std::size_t replications = 0;
    std::size_t n_real = 0;
    std::size_t n_degenerate = 0;
    std::size_t n_complex = 0;
    double pct_complex = 0.0;
    std::array<ParameterSummary, 3> parameters;
    bool single_replication = false;  // sd reported as 0 by convention

    const ParameterSummary& operator[](Parameter p) const {
        return parameters[static_cast<std::size_t>(p)];
    }
};

/// Theoretical intervals: alpha0 >= 0, 0 < alpha1 < E(eps^8)^(-1/4), l1 > 0.
bool in_theoretical_interval(Parameter p, double value, const NoiseMoments& noise);

/// Summaries per sample size, in order of first appearance. In-interval
/// percentages are taken over all replications of that sample size.
std::vector<SummaryRow> summarize(const std::vector<ReplicationRecord>& records,
                                  const NoiseMoments& noise);

struct HistogramBin {
    double left = 0.0;
    double right = 0.0;
    std::size_t count = 0;
};

/// Equal-width bins over [min, max] of the Real estimates of `p`.
std::vector<HistogramBin> emit_histogram(const std::vector<ReplicationRecord>& records,
                                         Parameter p, std::size_t bins);

struct ExperimentResult {
    std::vector<ReplicationRecord> records;  // sorted by (sample size order, replication)
    std::vector<SummaryRow> summary;
};

/// One replication: forward recursion from init_x_squared, then the single-lag estimator.
ReplicationRecord run_replication(const ExperimentConfig& cfg, std::size_t sample_size,
                                  std::size_t replication);

/// Runs every (sample size, replication) pair on a bounded worker pool.
/// Replication r uses SeedSpec{master_seed, r}; output does not depend on
/// the thread count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes raw.csv, summary.csv and hist_<param>_<N>.csv into `dir`
/// (created when missing).
void write_experiment(const ExperimentResult& result, const ExperimentConfig& cfg,
                      const std::string& dir);

}  // namespace archliq
