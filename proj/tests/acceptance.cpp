// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "archliq/arch_sim.hpp"
#include "archliq/estimators.hpp"
#include "archliq/montecarlo.hpp"
#include "archliq/rng_noise.hpp"
#include "oracles.hpp"

using namespace archliq;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kReplications = 500;
constexpr std::uint64_t kSeed = 20240501;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

ExperimentConfig experiment(const LiquidityModel& liq, std::vector<std::size_t> sizes) {
    ExperimentConfig cfg;
    cfg.params = {1.0, 0.1, 0.5};
    cfg.liquidity = liq;
    cfg.sample_sizes = std::move(sizes);
    cfg.replications = kReplications;
    cfg.master_seed = kSeed;
    return cfg;
}

std::map<std::size_t, SummaryRow> by_size(const ExperimentResult& r) {
    std::map<std::size_t, SummaryRow> m;
    for (const auto& row : r.summary) m[row.sample_size] = row;
    return m;
}

double mean_of(const SummaryRow& row, Parameter p) { return row[p].mean.value_or(NAN); }
double sd_of(const SummaryRow& row, Parameter p) { return row[p].sd.value_or(NAN); }

bool all_in_interval(const SummaryRow& row) {
    if (row.n_complex != 0) return false;
    for (auto p : kAllParameters)
        if (row[p].pct_in_interval != 100.0) return false;
    return true;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    const auto t_start = std::chrono::steady_clock::now();

    // Criteria 1 and 2: fGn H = 1/3.
    const auto fgn = run_experiment(
        experiment(FgnSquared{1.0 / 3.0}, {100, 1000, 10000, 100000}));
    auto rows = by_size(fgn);
    {
        const auto& a = rows[10000];
        const auto& b = rows[100000];
        const double m1 = mean_of(a, Parameter::Alpha1), s1 = sd_of(a, Parameter::Alpha1);
        const double m0 = mean_of(a, Parameter::Alpha0), ml = mean_of(a, Parameter::L1);
        const double m1b = mean_of(b, Parameter::Alpha1), s1b = sd_of(b, Parameter::Alpha1);
        const bool ok = within(m1, 0.09, 0.11) && within(s1, 0.012, 0.026) &&
                        within(m0, 0.95, 1.06) && within(ml, 0.45, 0.55) &&
                        within(m1b, 0.095, 0.105) && s1b <= 0.008;
        report(1, ok,
               "fGn H=1/3 N=1e4 alpha1 " + fmt("%.4f", m1) + " (sd " + fmt("%.4f", s1) +
                   ") in [0.09,0.11] sd in [0.012,0.026]; alpha0 " + fmt("%.4f", m0) +
                   " in [0.95,1.06]; l1 " + fmt("%.4f", ml) + " in [0.45,0.55]; N=1e5 alpha1 " +
                   fmt("%.4f", m1b) + " in [0.095,0.105] sd " + fmt("%.4f", s1b) + " <= 0.008");
    }
    {
        const double c100 = rows[100].pct_complex, c1k = rows[1000].pct_complex;
        const double c10k = rows[10000].pct_complex, c100k = rows[100000].pct_complex;
        const bool ok = within(c100, 34.0, 55.0) && within(c1k, 1.0, 8.0) && c10k == 0.0 &&
                        c100k == 0.0;
        report(2, ok,
               "complex % N=100 " + fmt("%.1f", c100) + " in [34,55]; N=1000 " +
                   fmt("%.1f", c1k) + " in [1,8]; N=1e4 " + fmt("%.1f", c10k) + " and N=1e5 " +
                   fmt("%.1f", c100k) + " == 0");
    }

    // Criterion 3: Poisson liquidity.
    const auto poi = run_experiment(
        experiment(CompensatedPoissonSquared{1.0}, {100, 10000, 100000}));
    auto prow = by_size(poi);
    {
        const double m1 = mean_of(prow[10000], Parameter::Alpha1);
        const double c100 = prow[100].pct_complex;
        report(3, within(m1, 0.09, 0.11) && within(c100, 35.0, 55.0),
               "Poisson N=1e4 alpha1 " + fmt("%.4f", m1) + " in [0.09,0.11]; N=100 complex % " +
                   fmt("%.1f", c100) + " in [35,55]");
    }

    // Criterion 4: interval membership at N = 1e4 and 1e5.
    {
        bool ok = true;
        std::string detail;
        auto check = [&](const std::string& name, std::map<std::size_t, SummaryRow>& m) {
            for (std::size_t n : {10000u, 100000u}) {
                const bool good = all_in_interval(m[n]);
                ok = ok && good;
                detail += name + " N=" + std::to_string(n) + (good ? " 100%" : " <100%") + "; ";
            }
        };
        check("fGn H=1/3", rows);
        check("Poisson", prow);
        for (double h : {2.0 / 3.0, 0.8}) {
            auto extra = by_size(run_experiment(experiment(FgnSquared{h}, {10000, 100000})));
            check("fGn H=" + fmt("%.3f", h), extra);
        }
        report(4, ok, detail);
    }

    // Criterion 5: exact recovery from constructed moments.
    {
        const auto t0 = std::chrono::steady_clock::now();
        const auto gauss = NoiseMoments::gaussian();
        double worst = 0.0;
        int cases = 0;
        for (const LiquidityModel& model :
             {LiquidityModel(FgnSquared{1.0 / 3.0}), LiquidityModel(FgnSquared{2.0 / 3.0}),
              LiquidityModel(FgnSquared{0.8}), LiquidityModel(CompensatedPoissonSquared{1.0})}) {
            const auto cov = theoretical_covariance(model);
            const bool two_lag = std::holds_alternative<FgnSquared>(model.kind());
            for (double a0 : {0.5, 1.0})
                for (double a1 : {0.05, 0.1, 0.2, 0.3})
                    for (double l1 : {0.25, 0.5, 1.0}) {
                        const auto st = oracle::exact_moments({a0, a1, l1}, cov, gauss, 10);
                        auto err = [&](const EstimationResult& r) -> double {
                            if (!r.has_estimates()) return INFINITY;
                            return std::max({std::abs(*r.alpha0_hat - a0),
                                             std::abs(*r.alpha1_hat - a1),
                                             std::abs(*r.l1_hat - l1)});
                        };
                        worst = std::max(worst, err(estimate_single_lag({st, 1, cov, gauss})));
                        ++cases;
                        if (two_lag) {
                            worst = std::max(worst, err(estimate_two_lag({st, 1, 2, cov, gauss})));
                            ++cases;
                        }
                    }
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report(5, worst <= 1e-8 && secs < 1.0,
               std::to_string(cases) + " grid cases, max abs error " + fmt("%.2e", worst) +
                   " <= 1e-8, " + fmt("%.3f", secs) + " s < 1 s");
    }

    // Criterion 6: fGn generator fidelity.
    {
        double worst_cov = 0.0;
        for (double h : {1.0 / 3.0, 0.5, 2.0 / 3.0, 0.8})
            for (std::size_t len = 2; len <= 64; ++len) {
                const FgnConfig cfg{h, len};
                const auto target = fgn_toeplitz(cfg);
                worst_cov = std::max(worst_cov, (circulant_implied_covariance(cfg) - target).cwiseAbs().maxCoeff());
                worst_cov = std::max(worst_cov, (cholesky_implied_covariance(cfg) - target).cwiseAbs().maxCoeff());
            }
        double worst_emp = 0.0;
        for (double h : {1.0 / 3.0, 2.0 / 3.0, 0.8}) {
            const auto x = sample_fgn({kSeed, 6}, {h, 1000000});
            const auto g = oracle::zero_mean_acf(x, 5);
            for (std::size_t k = 0; k <= 5; ++k)
                worst_emp = std::max(worst_emp, std::abs(g[k] - fgn_autocovariance(h, k)));
        }
        report(6, worst_cov <= 1e-10 && worst_emp <= 5e-3,
               "covariance max error " + fmt("%.2e", worst_cov) +
                   " <= 1e-10 (lengths 2..64); empirical lags 0..5 max error " +
                   fmt("%.2e", worst_emp) + " <= 5e-3");
    }

    // Criterion 7: moment oracles.
    {
        const ModelParams p{1.0, 0.1, 0.5};
        const LiquidityModel liq = FgnSquared{1.0 / 3.0};
        const auto cov = theoretical_covariance(liq);
        const auto path = simulate_stationary_series(p, liq, {kSeed, 7}, 1000000);
        const auto m = oracle::batch_means(path.x_squared);
        const double target = theoretical_mean_x_squared(p);
        bool ok = std::abs(m.mean - target) <= 4.0 * m.se;
        std::string detail = "mean X^2 " + fmt("%.4f", m.mean) + " vs " + fmt("%.4f", target) +
                             " (" + fmt("%.2f", std::abs(m.mean - target) / m.se) + " se <= 4)";
        const std::size_t n = path.sigma_squared.size();
        for (long d : {1L, 3L}) {
            std::vector<double> prod;
            prod.reserve(n);
            for (std::size_t k = 4; k < n; ++k)
                prod.push_back(path.sigma_squared[k] *
                               path.liquidity[static_cast<std::size_t>(static_cast<long>(k) + 1 - d)]);
            const auto e = oracle::batch_means(prod);
            const double th = theoretical_sigma2_liquidity_cross_moment(p, cov, d);
            const double z = std::abs(e.mean - th) / e.se;
            ok = ok && z <= 3.0;
            detail += "; E(sigma_t^2 L_s) t-s=" + std::to_string(d) + " " + fmt("%.4f", e.mean) +
                      " vs " + fmt("%.4f", th) + " (" + fmt("%.2f", z) + " se <= 3)";
        }
        report(7, ok, detail);
    }

    // Criterion 8: determinism, serial and parallel.
    {
        auto cfg = experiment(FgnSquared{1.0 / 3.0}, {100, 1000});
        const auto base = fs::temp_directory_path() / "archliq_acceptance";
        fs::remove_all(base);
        std::vector<std::string> raws;
        for (unsigned threads : {1u, 1u, 4u, 3u}) {
            cfg.threads = threads;
            const auto dir = base / std::to_string(raws.size());
            write_experiment(run_experiment(cfg), cfg, dir.string());
            raws.push_back(slurp(dir / "raw.csv"));
        }
        fs::remove_all(base);
        bool same = !raws[0].empty();
        for (const auto& r : raws) same = same && r == raws[0];
        report(8, same, "raw.csv byte-identical across 4 runs (threads 1, 1, 4, 3), " +
                            std::to_string(raws[0].size()) + " bytes");
    }

    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    std::printf("%d criteria failed; total %.1f s with R = %zu\n", failures, total, kReplications);
    return failures == 0 ? 0 : 1;
}
