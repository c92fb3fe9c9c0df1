#include <doctest.h>

#include <archliq/archliq.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

TEST_SUITE("capi") {

TEST_CASE("status strings and errors") {
    CHECK(std::string(archliq_version()) == "0.1.0");
    CHECK(std::string(archliq_status_string(ARCHLIQ_OK)) == "ok");
    archliq_liquidity* liq = nullptr;
    CHECK(archliq_liquidity_parse("fgn:H=2", &liq) == ARCHLIQ_E_INVALID_ARGUMENT);
    CHECK(liq == nullptr);
    CHECK(std::string(archliq_last_error()).find("H") != std::string::npos);
    CHECK(archliq_liquidity_parse(nullptr, &liq) == ARCHLIQ_E_INVALID_ARGUMENT);
    archliq_liquidity_free(nullptr);
    archliq_path_free(nullptr);
}

TEST_CASE("simulate, estimate and write through the C interface") {
    archliq_liquidity* liq = nullptr;
    REQUIRE(archliq_liquidity_parse("fgn:H=0.3333333333333333", &liq) == ARCHLIQ_OK);
    double s0 = 0, s1 = 0;
    CHECK(archliq_liquidity_autocovariance(liq, 0, &s0) == ARCHLIQ_OK);
    CHECK(archliq_liquidity_autocovariance(liq, -1, &s1) == ARCHLIQ_OK);
    CHECK(s0 == 2.0);
    CHECK(s1 > 0.0);

    const archliq_params params{1.0, 0.1, 0.5};
    archliq_path* path = nullptr;
    REQUIRE(archliq_simulate(&params, liq, 5, 0, 100000, 1.7, 0, &path) == ARCHLIQ_OK);
    const size_t n = archliq_path_length(path);
    CHECK(n == 100000);
    const double* x = archliq_path_x_squared(path);
    const double* s = archliq_path_sigma_squared(path);
    const double* l = archliq_path_liquidity(path);
    CHECK(s[0] == doctest::Approx(1.17 + 0.5 * l[0]));
    CHECK(x[0] >= 0.0);

    archliq_noise_moments noise;
    REQUIRE(archliq_noise_parse("gaussian", &noise) == ARCHLIQ_OK);
    CHECK(noise.e8 == 105.0);
    archliq_estimate est;
    REQUIRE(archliq_estimate_single_lag(x, n, liq, 1, &noise, &est) == ARCHLIQ_OK);
    CHECK(est.status == ARCHLIQ_ESTIMATE_REAL);
    CHECK(std::abs(est.alpha1_hat - 0.1) < 0.03);
    REQUIRE(archliq_estimate_two_lag(x, n, liq, 1, 2, &noise, &est) == ARCHLIQ_OK);
    if (est.status == ARCHLIQ_ESTIMATE_COMPLEX_DISCARDED)
        CHECK(std::isnan(est.alpha1_hat));
    else
        CHECK(std::isfinite(est.alpha1_hat));
    CHECK(archliq_estimate_two_lag(x, n, liq, 1, 1, &noise, &est) == ARCHLIQ_E_INVALID_ARGUMENT);

    archliq_acf* acf = nullptr;
    REQUIRE(archliq_acf_compute(x, n, 4, &acf) == ARCHLIQ_OK);
    CHECK(archliq_acf_max_lag(acf) == 4);
    CHECK(archliq_acf_gamma(acf, 0) > 0.0);
    CHECK(std::isnan(archliq_acf_gamma(acf, 5)));
    CHECK(archliq_acf_mean(acf) == doctest::Approx(1.5 / 0.9).epsilon(0.03));
    CHECK(archliq_acf_second_moment(acf) > archliq_acf_mean(acf) * archliq_acf_mean(acf));

    const auto dir = fs::temp_directory_path() / "archliq_capi";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto p = (dir / "path.csv").string();
    CHECK(archliq_path_write_csv(path, p.c_str()) == ARCHLIQ_OK);
    archliq_series* series = nullptr;
    REQUIRE(archliq_series_read_csv(p.c_str(), &series) == ARCHLIQ_OK);
    REQUIRE(archliq_series_length(series) == n);
    for (size_t i = 0; i < n; i += 997) CHECK(archliq_series_data(series)[i] == x[i]);
    CHECK(archliq_acf_write_csv(acf, (dir / "acf.csv").string().c_str()) == ARCHLIQ_OK);
    CHECK(archliq_estimate_write_csv(&est, (dir / "est.csv").string().c_str()) == ARCHLIQ_OK);
    CHECK(archliq_path_write_csv(path, "/nonexistent/dir/p.csv") == ARCHLIQ_E_IO);

    archliq_series_free(series);
    archliq_acf_free(acf);
    archliq_path_free(path);
    archliq_liquidity_free(liq);
    fs::remove_all(dir);
}

TEST_CASE("config and experiment handles") {
    archliq_config* cfg = nullptr;
    REQUIRE(archliq_config_new(&cfg) == ARCHLIQ_OK);
    CHECK(std::string(archliq_config_get(cfg, "alpha1")) == "0.10000000000000001");
    CHECK(archliq_config_get(cfg, "nope") == nullptr);
    CHECK(archliq_config_set(cfg, "sample_sizes", "100,1000") == ARCHLIQ_OK);
    CHECK(archliq_config_set(cfg, "replications", "30") == ARCHLIQ_OK);
    CHECK(archliq_config_set(cfg, "threads", "2") == ARCHLIQ_OK);
    CHECK(archliq_config_set(cfg, "alpha1", "zero") == ARCHLIQ_E_CONFIG);
    CHECK(std::string(archliq_config_get(cfg, "sample_sizes")) == "100,1000");
    archliq_params p;
    CHECK(archliq_config_params(cfg, &p) == ARCHLIQ_OK);
    CHECK(p.l1 == 0.5);

    archliq_experiment* exp = nullptr;
    REQUIRE(archliq_experiment_run(cfg, &exp) == ARCHLIQ_OK);
    REQUIRE(archliq_experiment_summary_count(exp) == 2);
    archliq_summary_row row;
    REQUIRE(archliq_experiment_summary(exp, 1, &row) == ARCHLIQ_OK);
    CHECK(row.sample_size == 1000);
    CHECK(row.replications == 30);
    CHECK(row.n_real + row.n_degenerate + row.n_complex == 30);
    CHECK(archliq_experiment_summary(exp, 2, &row) == ARCHLIQ_E_INVALID_ARGUMENT);
    archliq_experiment_free(exp);

    CHECK(archliq_config_set(cfg, "alpha1", "0.5") == ARCHLIQ_OK);
    CHECK(archliq_experiment_run(cfg, &exp) == ARCHLIQ_E_REGIME);
    archliq_config_free(cfg);

    CHECK(archliq_config_load("/nonexistent.cfg", &cfg) == ARCHLIQ_E_IO);
}

TEST_CASE("noise check") {
    std::vector<double> emp(4), theo(4);
    REQUIRE(archliq_noise_check("fgn", 0.7, 200000, 3, 1, emp.data(), theo.data()) == ARCHLIQ_OK);
    CHECK(theo[0] == 1.0);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(emp[k] - theo[k]) < 0.02);
    REQUIRE(archliq_noise_check("poisson", 2.0, 200000, 3, 1, emp.data(), theo.data()) == ARCHLIQ_OK);
    CHECK(theo[0] == 2.0);
    CHECK(std::abs(emp[0] - 2.0) < 0.05);
    CHECK(archliq_noise_check("cauchy", 1.0, 100, 3, 1, emp.data(), theo.data()) ==
          ARCHLIQ_E_INVALID_ARGUMENT);
}

}  // TEST_SUITE
