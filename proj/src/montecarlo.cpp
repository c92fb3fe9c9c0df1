#include "archliq/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include "archliq/acov_est.hpp"
#include "archliq/csv.hpp"
#include "archliq/errors.hpp"

namespace archliq {

std::string_view to_string(Parameter p) {
    switch (p) {
        case Parameter::Alpha0: return "alpha0";
        case Parameter::Alpha1: return "alpha1";
        case Parameter::L1: return "l1";
    }
    return "?";
}

std::optional<double> ReplicationRecord::value(Parameter p) const {
    switch (p) {
        case Parameter::Alpha0: return result.alpha0_hat;
        case Parameter::Alpha1: return result.alpha1_hat;
        case Parameter::L1: return result.l1_hat;
    }
    return std::nullopt;
}

bool in_theoretical_interval(Parameter p, double value, const NoiseMoments& noise) {
    switch (p) {
        case Parameter::Alpha0: return value >= 0.0;
        case Parameter::Alpha1: return value > 0.0 && value < noise.consistency_bound();
        case Parameter::L1: return value > 0.0;
    }
    return false;
}

std::vector<SummaryRow> summarize(const std::vector<ReplicationRecord>& records,
                                  const NoiseMoments& noise) {
    if (records.empty()) throw InvalidArgument("summarize: no records");

    std::vector<std::size_t> order;
    for (const auto& r : records)
        if (std::find(order.begin(), order.end(), r.sample_size) == order.end())
            order.push_back(r.sample_size);

    std::vector<SummaryRow> rows;
    for (std::size_t n : order) {
        SummaryRow row;
        row.sample_size = n;
        std::array<std::vector<double>, 3> real_values;
        std::array<std::size_t, 3> inside{};
        for (const auto& r : records) {
            if (r.sample_size != n) continue;
            ++row.replications;
            switch (r.result.status) {
                case EstimateStatus::Real: ++row.n_real; break;
                case EstimateStatus::DegenerateLinear: ++row.n_degenerate; break;
                case EstimateStatus::ComplexDiscarded: ++row.n_complex; break;
            }
            for (auto p : kAllParameters) {
                const auto v = r.value(p);
                if (!v) continue;
                const auto i = static_cast<std::size_t>(p);
                if (r.result.status == EstimateStatus::Real) real_values[i].push_back(*v);
                if (in_theoretical_interval(p, *v, noise)) ++inside[i];
            }
        }
        const auto total = static_cast<double>(row.replications);
        row.pct_complex = 100.0 * static_cast<double>(row.n_complex) / total;
        row.single_replication = row.n_real == 1;
        for (auto p : kAllParameters) {
            const auto i = static_cast<std::size_t>(p);
            auto& ps = row.parameters[i];
            ps.pct_in_interval = 100.0 * static_cast<double>(inside[i]) / total;
            const auto& v = real_values[i];
            if (v.empty()) continue;
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= static_cast<double>(v.size());
            double ss = 0.0;
            for (double x : v) ss += (x - mean) * (x - mean);
            ps.mean = mean;
            ps.sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<HistogramBin> emit_histogram(const std::vector<ReplicationRecord>& records,
                                         Parameter p, std::size_t bins) {
    if (bins < 1) throw InvalidArgument("emit_histogram: bins must be at least 1");
    std::vector<double> values;
    for (const auto& r : records)
        if (r.result.status == EstimateStatus::Real)
            if (auto v = r.value(p)) values.push_back(*v);
    if (values.empty()) throw InvalidArgument("emit_histogram: no real estimates");

    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = (hi - lo) / static_cast<double>(bins);

    std::vector<HistogramBin> out(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out[b].left = lo + width * static_cast<double>(b);
        out[b].right = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
    }
    for (double v : values) {
        std::size_t b = width > 0.0 ? static_cast<std::size_t>((v - lo) / width) : 0;
        out[std::min(b, bins - 1)].count += 1;
    }
    return out;
}

ReplicationRecord run_replication(const ExperimentConfig& cfg, std::size_t sample_size,
                                  std::size_t replication) {
    const SeedSpec seed{cfg.master_seed, replication};
    const auto path = simulate_recursive(cfg.params, cfg.liquidity, seed, sample_size,
                                         cfg.init_x_squared, cfg.burn_in);
    const std::size_t max_lag = std::min(required_max_lag(cfg.lag), sample_size - 2);
    const auto acf = estimate_acf(path.x_squared, max_lag);

    SingleLagInputs in{MomentStatistics::from_acf(acf), cfg.lag,
                       theoretical_covariance(cfg.liquidity), cfg.noise};
    return {replication, sample_size, estimate_single_lag(in)};
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    validate_regime(cfg.params, cfg.noise, RegimePurpose::Consistency);

    struct Task {
        std::size_t sample_size;
        std::size_t replication;
    };
    std::vector<Task> tasks;
    tasks.reserve(cfg.sample_sizes.size() * cfg.replications);
    for (std::size_t n : cfg.sample_sizes)
        for (std::size_t r = 0; r < cfg.replications; ++r) tasks.push_back({n, r});

    ExperimentResult result;
    result.records.resize(tasks.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    const auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                result.records[i] = run_replication(cfg, tasks[i].sample_size, tasks[i].replication);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };

    unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    result.summary = summarize(result.records, cfg.noise);
    return result;
}

void write_experiment(const ExperimentResult& result, const ExperimentConfig& cfg,
                      const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
    const fs::path base(dir);

    CsvWriter raw((base / "raw.csv").string());
    raw.row({"replication", "N", "alpha0_hat", "alpha1_hat", "l1_hat", "status", "chosen_root"});
    for (const auto& r : result.records) {
        raw.row({std::to_string(r.replication), std::to_string(r.sample_size),
                 format_optional(r.result.alpha0_hat), format_optional(r.result.alpha1_hat),
                 format_optional(r.result.l1_hat), std::string(to_string(r.result.status)),
                 std::string(to_string(r.result.chosen_root))});
    }
    raw.close();

    CsvWriter summary((base / "summary.csv").string());
    summary.row({"N", "replications", "n_real", "n_degenerate", "n_complex", "pct_complex",
                 "alpha0_mean", "alpha0_sd", "alpha1_mean", "alpha1_sd", "l1_mean", "l1_sd",
                 "pct_alpha0_in_interval", "pct_alpha1_in_interval", "pct_l1_in_interval"});
    for (const auto& row : result.summary) {
        std::vector<std::string> cells{std::to_string(row.sample_size),
                                       std::to_string(row.replications),
                                       std::to_string(row.n_real),
                                       std::to_string(row.n_degenerate),
                                       std::to_string(row.n_complex),
                                       format_double(row.pct_complex)};
        for (auto p : kAllParameters) {
            cells.push_back(format_optional(row[p].mean));
            cells.push_back(format_optional(row[p].sd));
        }
        for (auto p : kAllParameters) cells.push_back(format_double(row[p].pct_in_interval));
        summary.row(cells);
    }
    summary.close();

    for (std::size_t n : cfg.sample_sizes) {
        std::vector<ReplicationRecord> subset;
        for (const auto& r : result.records)
            if (r.sample_size == n) subset.push_back(r);
        for (auto p : kAllParameters) {
            std::vector<HistogramBin> bins;
            try {
                bins = emit_histogram(subset, p, cfg.hist_bins);
            } catch (const InvalidArgument&) {
                continue;  // every estimate at this N was discarded
            }
            CsvWriter hist((base / ("hist_" + std::string(to_string(p)) + "_" +
                                    std::to_string(n) + ".csv"))
                               .string());
            hist.row({"bin_left", "bin_right", "count"});
            for (const auto& b : bins)
                hist.row({format_double(b.left), format_double(b.right), std::to_string(b.count)});
            hist.close();
        }
    }
}

}  // namespace archliq
