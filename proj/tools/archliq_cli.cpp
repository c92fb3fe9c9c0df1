// archliq command-line front end. Talks to the library through archliq.h only.
#include <archliq/archliq.h>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Failure {
    archliq_status status;
};

void check(archliq_status s) {
    if (s != ARCHLIQ_OK) throw Failure{s};
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
template <class T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Config = Handle<archliq_config, archliq_config_free>;
using Liquidity = Handle<archliq_liquidity, archliq_liquidity_free>;
using Path = Handle<archliq_path, archliq_path_free>;
using Series = Handle<archliq_series, archliq_series_free>;
using Acf = Handle<archliq_acf, archliq_acf_free>;
using Experiment = Handle<archliq_experiment, archliq_experiment_free>;

Config load_or_default(const std::string& file) {
    archliq_config* raw = nullptr;
    check(file.empty() ? archliq_config_new(&raw) : archliq_config_load(file.c_str(), &raw));
    return Config(raw);
}

std::string get(const archliq_config* cfg, const char* key) {
    const char* v = archliq_config_get(cfg, key);
    if (!v) throw Failure{ARCHLIQ_E_CONFIG};
    return v;
}

Liquidity parse_liquidity(const std::string& spec) {
    archliq_liquidity* raw = nullptr;
    check(archliq_liquidity_parse(spec.c_str(), &raw));
    return Liquidity(raw);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct SimulateArgs {
    std::string config;
    std::optional<std::size_t> n;
    std::optional<std::uint64_t> seed;
    std::uint64_t stream = 0;
    std::string out;
};

void run_simulate(const SimulateArgs& a) {
    auto cfg = load_or_default(a.config);
    if (a.seed) check(archliq_config_set(cfg.get(), "master_seed", std::to_string(*a.seed).c_str()));
    archliq_params params;
    check(archliq_config_params(cfg.get(), &params));

    std::size_t n = 0;
    if (a.n) {
        n = *a.n;
    } else {
        // Longest configured sample size.
        const std::string sizes = get(cfg.get(), "sample_sizes");
        std::size_t start = 0;
        while (start <= sizes.size()) {
            const auto end = sizes.find(',', start);
            n = std::max<std::size_t>(n, std::stoull(sizes.substr(start, end - start)));
            if (end == std::string::npos) break;
            start = end + 1;
        }
    }

    auto liq = parse_liquidity(get(cfg.get(), "liquidity"));
    archliq_path* raw = nullptr;
    check(archliq_simulate(&params, liq.get(), std::stoull(get(cfg.get(), "master_seed")),
                           a.stream, n, std::stod(get(cfg.get(), "init_x_squared")),
                           std::stoull(get(cfg.get(), "burn_in")), &raw));
    Path path(raw);
    check(archliq_path_write_csv(path.get(), a.out.c_str()));
}

struct EstimateArgs {
    std::string data;
    std::string liquidity = "fgn:H=0.3333333333333333";
    long lag = 1;
    std::optional<long> lag2;
    std::string noise = "gaussian";
    std::string out;
};

void run_estimate(const EstimateArgs& a) {
    archliq_series* raw = nullptr;
    check(archliq_series_read_csv(a.data.c_str(), &raw));
    Series series(raw);
    auto liq = parse_liquidity(a.liquidity);
    archliq_noise_moments noise;
    check(archliq_noise_parse(a.noise.c_str(), &noise));

    archliq_estimate est;
    const double* x = archliq_series_data(series.get());
    const std::size_t n = archliq_series_length(series.get());
    if (a.lag2)
        check(archliq_estimate_two_lag(x, n, liq.get(), a.lag, *a.lag2, &noise, &est));
    else
        check(archliq_estimate_single_lag(x, n, liq.get(), a.lag, &noise, &est));

    if (!a.out.empty()) check(archliq_estimate_write_csv(&est, a.out.c_str()));
    std::printf("status=%s root=%s alpha0_hat=%s alpha1_hat=%s l1_hat=%s\n",
                archliq_estimate_status_string(est.status),
                archliq_root_choice_string(est.chosen_root), fmt(est.alpha0_hat).c_str(),
                fmt(est.alpha1_hat).c_str(), fmt(est.l1_hat).c_str());
}

struct MontecarloArgs {
    std::string config;
    std::string out_dir;
    std::optional<std::size_t> replications;
    std::optional<unsigned> threads;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> sizes;
    std::optional<std::string> liquidity;
    bool quiet = false;
};

void run_montecarlo(const MontecarloArgs& a) {
    auto cfg = load_or_default(a.config);
    auto set = [&](const char* key, const std::string& v) {
        check(archliq_config_set(cfg.get(), key, v.c_str()));
    };
    if (a.replications) set("replications", std::to_string(*a.replications));
    if (a.threads) set("threads", std::to_string(*a.threads));
    if (a.seed) set("master_seed", std::to_string(*a.seed));
    if (a.sizes) set("sample_sizes", *a.sizes);
    if (a.liquidity) set("liquidity", *a.liquidity);
    const std::string dir = a.out_dir.empty() ? get(cfg.get(), "output_dir") : a.out_dir;

    archliq_experiment* raw = nullptr;
    check(archliq_experiment_run(cfg.get(), &raw));
    Experiment exp(raw);
    check(archliq_experiment_write(exp.get(), dir.c_str()));
    if (a.quiet) return;

    std::printf("%8s %6s %9s %22s %22s %22s %7s %7s %7s\n", "N", "R", "complex%", "alpha0",
                "alpha1", "l1", "in%a0", "in%a1", "in%l1");
    for (std::size_t i = 0; i < archliq_experiment_summary_count(exp.get()); ++i) {
        archliq_summary_row row;
        check(archliq_experiment_summary(exp.get(), i, &row));
        char cells[3][40];
        for (int p = 0; p < 3; ++p) {
            if (std::isnan(row.mean[p]))
                std::snprintf(cells[p], sizeof cells[p], "-");
            else
                std::snprintf(cells[p], sizeof cells[p], "%.4f (%.4f)", row.mean[p], row.sd[p]);
        }
        std::printf("%8zu %6zu %9.2f %22s %22s %22s %7.1f %7.1f %7.1f\n", row.sample_size,
                    row.replications, row.pct_complex, cells[0], cells[1], cells[2],
                    row.pct_in_interval[0], row.pct_in_interval[1], row.pct_in_interval[2]);
        if (row.n_real == 1) std::printf("  note: N=%zu has a single real estimate; sd set to 0\n",
                                         row.sample_size);
    }
}

struct AcfArgs {
    std::string data;
    std::size_t max_lag = 10;
    std::string out;
};

void run_acf(const AcfArgs& a) {
    archliq_series* raw = nullptr;
    check(archliq_series_read_csv(a.data.c_str(), &raw));
    Series series(raw);
    archliq_acf* acf_raw = nullptr;
    check(archliq_acf_compute(archliq_series_data(series.get()), archliq_series_length(series.get()),
                              a.max_lag, &acf_raw));
    Acf acf(acf_raw);
    check(archliq_acf_write_csv(acf.get(), a.out.c_str()));
}

struct NoiseCheckArgs {
    std::string kind = "fgn";
    double hurst = 1.0 / 3.0;
    double lambda = 1.0;
    std::size_t n = 1000000;
    std::size_t max_lag = 5;
    std::uint64_t seed = 1;
};

void run_noise_check(const NoiseCheckArgs& a) {
    const double param = a.kind == "poisson" ? a.lambda : a.hurst;
    std::vector<double> emp(a.max_lag + 1), theo(a.max_lag + 1);
    check(archliq_noise_check(a.kind.c_str(), param, a.n, a.max_lag, a.seed, emp.data(),
                              theo.data()));
    std::printf("lag,empirical,theoretical,difference\n");
    for (std::size_t k = 0; k <= a.max_lag; ++k)
        std::printf("%zu,%s,%s,%s\n", k, fmt(emp[k]).c_str(), fmt(theo[k]).c_str(),
                    fmt(emp[k] - theo[k]).c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ARCH(1) with liquidity: simulation and moment estimation"};
    app.set_version_flag("--version", archliq_version());
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Simulate one path and write it as CSV");
    s->add_option("--config", sim.config, "Experiment config file")->check(CLI::ExistingFile);
    s->add_option("--n", sim.n, "Path length (default: largest configured sample size)");
    s->add_option("--seed", sim.seed, "Master seed (overrides config)");
    s->add_option("--stream", sim.stream, "Replication stream index");
    s->add_option("--out", sim.out, "Output CSV")->required();

    EstimateArgs est;
    auto* e = app.add_subcommand("estimate", "Estimate alpha0, alpha1, l1 from an X^2 series");
    e->add_option("--data", est.data, "CSV with an x_squared column")->required()->check(CLI::ExistingFile);
    e->add_option("--liquidity", est.liquidity, "fgn:H=..|poisson:lambda=..|white");
    e->add_option("--lag", est.lag, "Lag n");
    e->add_option("--lag2", est.lag2, "Second lag; selects the two-lag estimator");
    e->add_option("--noise", est.noise, "gaussian or moments:e4=..,e6=..,e8=..");
    e->add_option("--out", est.out, "Output CSV");

    MontecarloArgs mc;
    auto* m = app.add_subcommand("montecarlo", "Run a replicated experiment");
    m->add_option("--config", mc.config, "Experiment config file")->check(CLI::ExistingFile);
    m->add_option("--out-dir", mc.out_dir, "Output directory (default: output_dir from config)");
    m->add_option("--replications", mc.replications, "Override replications");
    m->add_option("--threads", mc.threads, "Override worker count (0 = all cores)");
    m->add_option("--seed", mc.seed, "Override master seed");
    m->add_option("--sample-sizes", mc.sizes, "Override sample sizes, comma separated");
    m->add_option("--liquidity", mc.liquidity, "Override liquidity model");
    m->add_flag("--quiet", mc.quiet, "Do not print the summary table");

    AcfArgs acf;
    auto* a = app.add_subcommand("acf", "Sample autocovariance of an X^2 series");
    a->add_option("--data", acf.data, "Input CSV")->required()->check(CLI::ExistingFile);
    a->add_option("--max-lag", acf.max_lag, "Largest lag");
    a->add_option("--out", acf.out, "Output CSV")->required();

    NoiseCheckArgs nc;
    auto* c = app.add_subcommand("noise-check", "Compare noise autocovariance with theory");
    c->add_option("--kind", nc.kind, "fgn, poisson or gaussian")
        ->check(CLI::IsMember({"fgn", "poisson", "gaussian"}));
    c->add_option("--hurst", nc.hurst, "Hurst index for fgn");
    c->add_option("--lambda", nc.lambda, "Intensity for poisson");
    c->add_option("--n", nc.n, "Number of draws");
    c->add_option("--max-lag", nc.max_lag, "Largest lag");
    c->add_option("--seed", nc.seed, "Seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*s) run_simulate(sim);
        else if (*e) run_estimate(est);
        else if (*m) run_montecarlo(mc);
        else if (*a) run_acf(acf);
        else if (*c) run_noise_check(nc);
    } catch (const Failure& f) {
        std::fprintf(stderr, "archliq: %s: %s\n", archliq_status_string(f.status),
                     archliq_last_error());
        return 10 + static_cast<int>(f.status);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "archliq: %s\n", ex.what());
        return 2;
    }
    return 0;
}
