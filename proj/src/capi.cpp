#include "archliq/archliq.h"

#include <cmath>
#include <limits>
#include <new>
#include <string>
#include <utility>

#include "archliq/acov_est.hpp"
#include "archliq/arch_sim.hpp"
#include "archliq/config.hpp"
#include "archliq/csv.hpp"
#include "archliq/errors.hpp"
#include "archliq/estimators.hpp"
#include "archliq/liquidity.hpp"
#include "archliq/montecarlo.hpp"
#include "archliq/rng_noise.hpp"

struct archliq_liquidity {
    archliq::LiquidityModel model;
    archliq::LiquidityCovariance cov;
};

struct archliq_path {
    archliq::SamplePath path;
};

struct archliq_series {
    std::vector<double> values;
};

struct archliq_acf {
    archliq::AcfEstimates acf;
};

struct archliq_config {
    archliq::ExperimentConfig cfg;
    mutable std::string scratch;
};

struct archliq_experiment {
    archliq::ExperimentConfig cfg;
    archliq::ExperimentResult result;
};

namespace {

thread_local std::string g_last_error;

archliq_status fail(archliq_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
archliq_status guarded(F&& body) {
    using namespace archliq;
    try {
        body();
        return ARCHLIQ_OK;
    } catch (const InvalidArgument& e) {
        return fail(ARCHLIQ_E_INVALID_ARGUMENT, e.what());
    } catch (const RegimeError& e) {
        return fail(ARCHLIQ_E_REGIME, e.what());
    } catch (const GenerationError& e) {
        return fail(ARCHLIQ_E_GENERATION, e.what());
    } catch (const SimulationError& e) {
        return fail(ARCHLIQ_E_SIMULATION, e.what());
    } catch (const DimensionError& e) {
        return fail(ARCHLIQ_E_DIMENSION, e.what());
    } catch (const CovarianceError& e) {
        return fail(ARCHLIQ_E_COVARIANCE, e.what());
    } catch (const UnidentifiableError& e) {
        return fail(ARCHLIQ_E_UNIDENTIFIABLE, e.what());
    } catch (const ConfigError& e) {
        return fail(ARCHLIQ_E_CONFIG, e.what());
    } catch (const IoError& e) {
        return fail(ARCHLIQ_E_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ARCHLIQ_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ARCHLIQ_E_INTERNAL, e.what());
    } catch (...) {
        return fail(ARCHLIQ_E_INTERNAL, "unknown error");
    }
}

#define ARCHLIQ_REQUIRE(cond, what)                                  \
    do {                                                             \
        if (!(cond)) return fail(ARCHLIQ_E_INVALID_ARGUMENT, what);  \
    } while (0)

archliq::ModelParams to_params(const archliq_params& p) { return {p.alpha0, p.alpha1, p.l1}; }

archliq::NoiseMoments to_noise(const archliq_noise_moments& m) {
    archliq::NoiseMoments n{m.e4, m.e6, m.e8, m.var_eps_sq};
    n.validate();
    return n;
}

archliq_estimate to_c(const archliq::EstimationResult& r) {
    using archliq::EstimateStatus;
    using archliq::RootChoice;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    archliq_estimate out{};
    switch (r.status) {
        case EstimateStatus::Real: out.status = ARCHLIQ_ESTIMATE_REAL; break;
        case EstimateStatus::ComplexDiscarded: out.status = ARCHLIQ_ESTIMATE_COMPLEX_DISCARDED; break;
        case EstimateStatus::DegenerateLinear: out.status = ARCHLIQ_ESTIMATE_DEGENERATE_LINEAR; break;
    }
    switch (r.chosen_root) {
        case RootChoice::Plus: out.chosen_root = ARCHLIQ_ROOT_PLUS; break;
        case RootChoice::Minus: out.chosen_root = ARCHLIQ_ROOT_MINUS; break;
        case RootChoice::Linear: out.chosen_root = ARCHLIQ_ROOT_LINEAR; break;
        case RootChoice::None: out.chosen_root = ARCHLIQ_ROOT_NONE; break;
    }
    out.alpha0_hat = r.alpha0_hat.value_or(nan);
    out.alpha1_hat = r.alpha1_hat.value_or(nan);
    out.l1_hat = r.l1_hat.value_or(nan);
    out.discriminant = r.coeffs.discriminant;
    return out;
}

archliq::MomentStatistics statistics_for(const double* x, size_t n, size_t wanted_lag) {
    if (n < 3) throw archliq::DimensionError("need at least 3 observations");
    const size_t max_lag = std::min(wanted_lag, n - 2);
    return archliq::MomentStatistics::from_acf(archliq::estimate_acf({x, n}, max_lag));
}

std::string config_value(const archliq::ExperimentConfig& c, const std::string& key) {
    using archliq::format_double;
    if (key == "alpha0") return format_double(c.params.alpha0);
    if (key == "alpha1") return format_double(c.params.alpha1);
    if (key == "l1") return format_double(c.params.l1);
    if (key == "liquidity") return c.liquidity.to_string();
    if (key == "noise") return c.noise_name;
    if (key == "sample_sizes") {
        std::string s;
        for (auto n : c.sample_sizes) s += (s.empty() ? "" : ",") + std::to_string(n);
        return s;
    }
    if (key == "replications") return std::to_string(c.replications);
    if (key == "lag") return std::to_string(c.lag);
    if (key == "master_seed") return std::to_string(c.master_seed);
    if (key == "init_x_squared") return format_double(c.init_x_squared);
    if (key == "burn_in") return std::to_string(c.burn_in);
    if (key == "output_dir") return c.output_dir;
    if (key == "threads") return std::to_string(c.threads);
    if (key == "hist_bins") return std::to_string(c.hist_bins);
    throw archliq::ConfigError("unknown config key '" + key + "'");
}

}  // namespace

extern "C" {

const char* archliq_version(void) { return "0.1.0"; }

const char* archliq_status_string(archliq_status status) {
    switch (status) {
        case ARCHLIQ_OK: return "ok";
        case ARCHLIQ_E_INVALID_ARGUMENT: return "invalid argument";
        case ARCHLIQ_E_REGIME: return "parameter regime violation";
        case ARCHLIQ_E_GENERATION: return "noise generation error";
        case ARCHLIQ_E_SIMULATION: return "simulation error";
        case ARCHLIQ_E_DIMENSION: return "dimension error";
        case ARCHLIQ_E_COVARIANCE: return "liquidity covariance error";
        case ARCHLIQ_E_UNIDENTIFIABLE: return "unidentifiable parameters";
        case ARCHLIQ_E_CONFIG: return "configuration error";
        case ARCHLIQ_E_IO: return "I/O error";
        case ARCHLIQ_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* archliq_last_error(void) { return g_last_error.c_str(); }

archliq_status archliq_noise_parse(const char* spec, archliq_noise_moments* out) {
    ARCHLIQ_REQUIRE(spec && out, "archliq_noise_parse: null argument");
    return guarded([&] {
        const auto m = archliq::NoiseMoments::parse(spec);
        *out = {m.e4, m.e6, m.e8, m.var_eps_sq};
    });
}

archliq_status archliq_liquidity_parse(const char* spec, archliq_liquidity** out) {
    ARCHLIQ_REQUIRE(spec && out, "archliq_liquidity_parse: null argument");
    return guarded([&] {
        auto model = archliq::LiquidityModel::parse(spec);
        auto cov = archliq::theoretical_covariance(model);
        *out = new archliq_liquidity{std::move(model), std::move(cov)};
    });
}

void archliq_liquidity_free(archliq_liquidity* liq) { delete liq; }

archliq_status archliq_liquidity_autocovariance(const archliq_liquidity* liq, long lag,
                                                double* out) {
    ARCHLIQ_REQUIRE(liq && out, "archliq_liquidity_autocovariance: null argument");
    return guarded([&] { *out = liq->cov.s(lag); });
}

archliq_status archliq_simulate(const archliq_params* params, const archliq_liquidity* liq,
                                uint64_t master_seed, uint64_t stream_index, size_t n,
                                double init_x_squared, size_t burn_in, archliq_path** out) {
    ARCHLIQ_REQUIRE(params && liq && out, "archliq_simulate: null argument");
    return guarded([&] {
        auto path = archliq::simulate_recursive(to_params(*params), liq->model,
                                                {master_seed, stream_index}, n, init_x_squared,
                                                burn_in);
        *out = new archliq_path{std::move(path)};
    });
}

void archliq_path_free(archliq_path* path) { delete path; }

size_t archliq_path_length(const archliq_path* path) {
    return path ? path->path.x_squared.size() : 0;
}

const double* archliq_path_x_squared(const archliq_path* path) {
    return path ? path->path.x_squared.data() : nullptr;
}

const double* archliq_path_sigma_squared(const archliq_path* path) {
    return path ? path->path.sigma_squared.data() : nullptr;
}

const double* archliq_path_liquidity(const archliq_path* path) {
    return path ? path->path.liquidity.data() : nullptr;
}

archliq_status archliq_path_write_csv(const archliq_path* path, const char* file) {
    ARCHLIQ_REQUIRE(path && file, "archliq_path_write_csv: null argument");
    return guarded([&] {
        using archliq::format_double;
        archliq::CsvWriter w(file);
        w.row({"t", "x_squared", "sigma_squared", "liquidity"});
        const auto& p = path->path;
        for (size_t t = 0; t < p.x_squared.size(); ++t)
            w.row({std::to_string(t + 1), format_double(p.x_squared[t]),
                   format_double(p.sigma_squared[t]), format_double(p.liquidity[t])});
        w.close();
    });
}

archliq_status archliq_series_read_csv(const char* file, archliq_series** out) {
    ARCHLIQ_REQUIRE(file && out, "archliq_series_read_csv: null argument");
    return guarded([&] { *out = new archliq_series{archliq::read_series_csv(file)}; });
}

void archliq_series_free(archliq_series* series) { delete series; }

size_t archliq_series_length(const archliq_series* series) {
    return series ? series->values.size() : 0;
}

const double* archliq_series_data(const archliq_series* series) {
    return series ? series->values.data() : nullptr;
}

archliq_status archliq_acf_compute(const double* x_squared, size_t n, size_t max_lag,
                                   archliq_acf** out) {
    ARCHLIQ_REQUIRE((x_squared || n == 0) && out, "archliq_acf_compute: null argument");
    return guarded([&] { *out = new archliq_acf{archliq::estimate_acf({x_squared, n}, max_lag)}; });
}

void archliq_acf_free(archliq_acf* acf) { delete acf; }

size_t archliq_acf_max_lag(const archliq_acf* acf) { return acf ? acf->acf.max_lag() : 0; }

double archliq_acf_gamma(const archliq_acf* acf, size_t lag) {
    if (!acf || lag >= acf->acf.gamma_hat.size()) return std::numeric_limits<double>::quiet_NaN();
    return acf->acf.gamma_hat[lag];
}

double archliq_acf_mean(const archliq_acf* acf) {
    return acf ? acf->acf.mu_hat : std::numeric_limits<double>::quiet_NaN();
}

double archliq_acf_second_moment(const archliq_acf* acf) {
    return acf ? acf->acf.mu2_hat : std::numeric_limits<double>::quiet_NaN();
}

archliq_status archliq_acf_write_csv(const archliq_acf* acf, const char* file) {
    ARCHLIQ_REQUIRE(acf && file, "archliq_acf_write_csv: null argument");
    return guarded([&] {
        archliq::CsvWriter w(file);
        w.row({"lag", "gamma_hat"});
        for (size_t k = 0; k < acf->acf.gamma_hat.size(); ++k)
            w.row({std::to_string(k), archliq::format_double(acf->acf.gamma_hat[k])});
        w.close();
    });
}

archliq_status archliq_estimate_single_lag(const double* x_squared, size_t n,
                                           const archliq_liquidity* liq, long lag,
                                           const archliq_noise_moments* noise,
                                           archliq_estimate* out) {
    ARCHLIQ_REQUIRE(x_squared && liq && noise && out, "archliq_estimate_single_lag: null argument");
    return guarded([&] {
        archliq::SingleLagInputs in{statistics_for(x_squared, n, archliq::required_max_lag(lag)),
                                    lag, liq->cov, to_noise(*noise)};
        *out = to_c(archliq::estimate_single_lag(in));
    });
}

archliq_status archliq_estimate_two_lag(const double* x_squared, size_t n,
                                        const archliq_liquidity* liq, long lag1, long lag2,
                                        const archliq_noise_moments* noise, archliq_estimate* out) {
    ARCHLIQ_REQUIRE(x_squared && liq && noise && out, "archliq_estimate_two_lag: null argument");
    return guarded([&] {
        const long widest = std::max(std::labs(lag1), std::labs(lag2));
        archliq::TwoLagInputs in{statistics_for(x_squared, n, archliq::required_max_lag(widest)),
                                 lag1, lag2, liq->cov, to_noise(*noise)};
        *out = to_c(archliq::estimate_two_lag(in));
    });
}

const char* archliq_estimate_status_string(archliq_estimate_status status) {
    switch (status) {
        case ARCHLIQ_ESTIMATE_REAL: return "real";
        case ARCHLIQ_ESTIMATE_COMPLEX_DISCARDED: return "complex";
        case ARCHLIQ_ESTIMATE_DEGENERATE_LINEAR: return "degenerate_linear";
    }
    return "?";
}

const char* archliq_root_choice_string(archliq_root_choice choice) {
    switch (choice) {
        case ARCHLIQ_ROOT_PLUS: return "plus";
        case ARCHLIQ_ROOT_MINUS: return "minus";
        case ARCHLIQ_ROOT_LINEAR: return "linear";
        case ARCHLIQ_ROOT_NONE: return "none";
    }
    return "?";
}

archliq_status archliq_estimate_write_csv(const archliq_estimate* est, const char* file) {
    ARCHLIQ_REQUIRE(est && file, "archliq_estimate_write_csv: null argument");
    return guarded([&] {
        const auto cell = [](double v) {
            return std::isnan(v) ? std::string() : archliq::format_double(v);
        };
        archliq::CsvWriter w(file);
        w.row({"alpha0_hat", "alpha1_hat", "l1_hat", "status", "chosen_root", "discriminant"});
        w.row({cell(est->alpha0_hat), cell(est->alpha1_hat), cell(est->l1_hat),
               archliq_estimate_status_string(est->status),
               archliq_root_choice_string(est->chosen_root),
               archliq::format_double(est->discriminant)});
        w.close();
    });
}

archliq_status archliq_config_new(archliq_config** out) {
    ARCHLIQ_REQUIRE(out, "archliq_config_new: null argument");
    return guarded([&] { *out = new archliq_config{}; });
}

archliq_status archliq_config_load(const char* file, archliq_config** out) {
    ARCHLIQ_REQUIRE(file && out, "archliq_config_load: null argument");
    return guarded([&] { *out = new archliq_config{archliq::load_config(file), {}}; });
}

void archliq_config_free(archliq_config* cfg) { delete cfg; }

archliq_status archliq_config_set(archliq_config* cfg, const char* key, const char* value) {
    ARCHLIQ_REQUIRE(cfg && key && value, "archliq_config_set: null argument");
    return guarded([&] { archliq::apply_config_value(cfg->cfg, key, value); });
}

archliq_status archliq_config_params(const archliq_config* cfg, archliq_params* out) {
    ARCHLIQ_REQUIRE(cfg && out, "archliq_config_params: null argument");
    const auto& p = cfg->cfg.params;
    *out = {p.alpha0, p.alpha1, p.l1};
    return ARCHLIQ_OK;
}

const char* archliq_config_get(const archliq_config* cfg, const char* key) {
    if (!cfg || !key) return nullptr;
    const auto status = guarded([&] { cfg->scratch = config_value(cfg->cfg, key); });
    return status == ARCHLIQ_OK ? cfg->scratch.c_str() : nullptr;
}

archliq_status archliq_experiment_run(const archliq_config* cfg, archliq_experiment** out) {
    ARCHLIQ_REQUIRE(cfg && out, "archliq_experiment_run: null argument");
    return guarded([&] {
        auto result = archliq::run_experiment(cfg->cfg);
        *out = new archliq_experiment{cfg->cfg, std::move(result)};
    });
}

void archliq_experiment_free(archliq_experiment* exp) { delete exp; }

size_t archliq_experiment_summary_count(const archliq_experiment* exp) {
    return exp ? exp->result.summary.size() : 0;
}

archliq_status archliq_experiment_summary(const archliq_experiment* exp, size_t index,
                                          archliq_summary_row* out) {
    ARCHLIQ_REQUIRE(exp && out, "archliq_experiment_summary: null argument");
    ARCHLIQ_REQUIRE(index < exp->result.summary.size(), "archliq_experiment_summary: bad index");
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    const auto& row = exp->result.summary[index];
    *out = {};
    out->sample_size = row.sample_size;
    out->replications = row.replications;
    out->n_real = row.n_real;
    out->n_degenerate = row.n_degenerate;
    out->n_complex = row.n_complex;
    out->pct_complex = row.pct_complex;
    for (size_t i = 0; i < 3; ++i) {
        out->mean[i] = row.parameters[i].mean.value_or(nan);
        out->sd[i] = row.parameters[i].sd.value_or(nan);
        out->pct_in_interval[i] = row.parameters[i].pct_in_interval;
    }
    return ARCHLIQ_OK;
}

archliq_status archliq_experiment_write(const archliq_experiment* exp, const char* dir) {
    ARCHLIQ_REQUIRE(exp && dir, "archliq_experiment_write: null argument");
    return guarded([&] { archliq::write_experiment(exp->result, exp->cfg, dir); });
}

archliq_status archliq_noise_check(const char* kind, double param, size_t n, size_t max_lag,
                                   uint64_t seed, double* empirical, double* theoretical) {
    ARCHLIQ_REQUIRE(kind && empirical && theoretical, "archliq_noise_check: null argument");
    return guarded([&] {
        const std::string k = kind;
        const archliq::SeedSpec s{seed, 0};
        std::vector<double> draws;
        if (k == "fgn") {
            draws = archliq::sample_fgn(s, {param, n});
            for (size_t lag = 0; lag <= max_lag; ++lag)
                theoretical[lag] = archliq::fgn_autocovariance(param, lag);
        } else if (k == "poisson") {
            draws = archliq::sample_compensated_poisson_increments(s, param, n);
            for (size_t lag = 0; lag <= max_lag; ++lag) theoretical[lag] = lag == 0 ? param : 0.0;
        } else if (k == "gaussian") {
            draws = archliq::sample_gaussian_iid(s, n);
            for (size_t lag = 0; lag <= max_lag; ++lag) theoretical[lag] = lag == 0 ? 1.0 : 0.0;
        } else {
            throw archliq::InvalidArgument("noise kind must be fgn, poisson or gaussian");
        }
        if (draws.size() <= max_lag) throw archliq::DimensionError("n must exceed max_lag");
        // All three kinds have mean zero, so use it instead of the sample mean:
        // for long-memory fGn the sample mean converges slowly.
        for (size_t lag = 0; lag <= max_lag; ++lag) {
            long double acc = 0.0L;
            for (size_t t = 0; t + lag < draws.size(); ++t) acc += draws[t] * draws[t + lag];
            empirical[lag] = static_cast<double>(acc / static_cast<long double>(draws.size()));
        }
    });
}

}  // extern "C"
