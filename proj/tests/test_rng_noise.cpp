#include <doctest.h>

#include <cmath>
#include <numeric>

#include "archliq/errors.hpp"
#include "archliq/rng_noise.hpp"
#include "oracles.hpp"

using namespace archliq;

namespace {

double mean_of(const std::vector<double>& x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance_of(const std::vector<double>& x) {
    const double m = mean_of(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size());
}

// r_H straight from its definition, no shortcuts for small lags.
double rh_reference(double h, double k) {
    return 0.5 * (std::pow(k + 1.0, 2 * h) + std::pow(std::abs(k - 1.0), 2 * h) -
                  2.0 * std::pow(k, 2 * h));
}

}  // namespace

TEST_SUITE("rng_noise") {

TEST_CASE("stream keys are deterministic and distinct") {
    const SeedSpec a{42, 0}, b{42, 1}, c{43, 0};
    CHECK(stream_key(a) == stream_key(SeedSpec{42, 0}));
    CHECK(stream_key(a) != stream_key(b));
    CHECK(stream_key(a) != stream_key(c));
    CHECK(substream(a, 1) != substream(a, 2));
    CHECK(substream(a, 1).stream_index == a.stream_index);
}

TEST_CASE("gaussian iid: n = 0 is rejected") {
    CHECK_THROWS_AS(sample_gaussian_iid({1, 0}, 0), InvalidArgument);
}

TEST_CASE("gaussian iid moments at n = 1e5") {
    const auto z = sample_gaussian_iid({2024, 3}, 100000);
    CHECK(std::abs(mean_of(z)) < 0.02);
    CHECK(std::abs(variance_of(z) - 1.0) < 0.03);
}

TEST_CASE("generators replay bit-identically") {
    const SeedSpec s{99, 5};
    CHECK(sample_gaussian_iid(s, 1000) == sample_gaussian_iid(s, 1000));
    CHECK(sample_fgn(s, {0.3, 777}) == sample_fgn(s, {0.3, 777}));
    CHECK(sample_compensated_poisson_increments(s, 1.0, 1000) ==
          sample_compensated_poisson_increments(s, 1.0, 1000));
    CHECK(sample_compensated_poisson_increments(s, 25.0, 1000) ==
          sample_compensated_poisson_increments(s, 25.0, 1000));
}

TEST_CASE("fGn autocovariance formula") {
    CHECK(fgn_autocovariance(0.3, 0) == 1.0);
    for (std::size_t k = 1; k < 10; ++k) CHECK(fgn_autocovariance(0.5, k) == doctest::Approx(0.0).epsilon(1e-15));
    for (double h : {0.2, 1.0 / 3.0, 0.7, 0.8})
        for (std::size_t k = 1; k < 40; ++k)
            CHECK(fgn_autocovariance(h, k) ==
                  doctest::Approx(rh_reference(h, static_cast<double>(k))).epsilon(1e-13));
    // Boundary value used only as an arithmetic check.
    CHECK(rh_reference(1.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("fGn config validation") {
    CHECK_THROWS_AS(FgnConfig({0.0, 10}).validate(), InvalidArgument);
    CHECK_THROWS_AS(FgnConfig({1.0, 10}).validate(), InvalidArgument);
    CHECK_THROWS_AS(FgnConfig({0.5, 0}).validate(), InvalidArgument);
    CHECK(sample_fgn({1, 1}, {0.4, 1}).size() == 1);
}

TEST_CASE("circulant size is the next power of two of 2(len - 1)") {
    CHECK(circulant_size(2) == 2);
    CHECK(circulant_size(3) == 4);
    CHECK(circulant_size(64) == 128);
    CHECK(circulant_size(65) == 128);
    CHECK(circulant_size(66) == 256);
}

TEST_CASE("circulant and Cholesky covariances match the Toeplitz target") {
    for (double h : {0.3, 0.5, 0.7}) {
        for (std::size_t len : {2u, 3u, 7u, 16u, 33u, 64u}) {
            const FgnConfig cfg{h, len};
            const auto target = fgn_toeplitz(cfg);
            CHECK((circulant_implied_covariance(cfg) - target).cwiseAbs().maxCoeff() < 1e-10);
            CHECK((cholesky_implied_covariance(cfg) - target).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("circulant eigenvalues are nonnegative for fGn") {
    for (double h : {0.1, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.9}) {
        const auto ev = circulant_eigenvalues({h, 1000});
        CHECK(*std::min_element(ev.begin(), ev.end()) > -1e-9);
    }
}

TEST_CASE("forced methods sample the same law") {
    const FgnConfig cfg{0.7, 200};
    const auto a = sample_fgn({5, 0}, cfg, FgnMethod::Circulant);
    const auto b = sample_fgn({5, 0}, cfg, FgnMethod::Cholesky);
    CHECK(a.size() == 200);
    CHECK(b.size() == 200);
}

TEST_CASE("fGn H = 1/3 lag-1 autocovariance at length 2^14") {
    const double h = 1.0 / 3.0;
    const auto x = sample_fgn({11, 0}, {h, 1u << 14});
    const auto g = oracle::naive_acf(x, 1);
    CHECK(std::abs(g[1] - rh_reference(h, 1.0)) < 0.03);
}

TEST_CASE("fGn empirical autocovariance at 1e6 samples, lags 0..5") {
    for (double h : {1.0 / 3.0, 0.5, 2.0 / 3.0, 0.8}) {
        const auto x = sample_fgn({17, 1}, {h, 1000000});
        const auto g = oracle::zero_mean_acf(x, 5);
        for (std::size_t k = 0; k <= 5; ++k) {
            INFO("H = " << h << " lag " << k);
            CHECK(std::abs(g[k] - rh_reference(h, static_cast<double>(k))) < 5e-3);
        }
    }
}

TEST_CASE("compensated Poisson increments") {
    const auto x = sample_compensated_poisson_increments({8, 0}, 1.0, 100000);
    CHECK(std::abs(mean_of(x)) < 0.02);
    CHECK(std::abs(variance_of(x) - 1.0) < 0.03);

    for (double lambda : {4.0, 30.0}) {
        const auto y = sample_compensated_poisson_increments({8, 1}, lambda, 5000);
        for (double v : y) {
            const double k = v + lambda;
            CHECK(k >= 0.0);
            CHECK(k == std::round(k));
        }
        CHECK(std::abs(mean_of(y)) < 4.0 * std::sqrt(lambda / 5000.0));
    }
    CHECK_THROWS_AS(sample_compensated_poisson_increments({1, 0}, 0.0, 10), InvalidArgument);
}

}  // TEST_SUITE
