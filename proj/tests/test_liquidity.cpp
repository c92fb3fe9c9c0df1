#include <doctest.h>

#include <cmath>
#include <numeric>

#include "archliq/errors.hpp"
#include "archliq/liquidity.hpp"
#include "archliq/rng_noise.hpp"
#include "oracles.hpp"

using namespace archliq;

TEST_SUITE("liquidity") {

TEST_CASE("parse and print") {
    CHECK(std::holds_alternative<FgnSquared>(LiquidityModel::parse("fgn:H=0.333").kind()));
    CHECK(std::get<FgnSquared>(LiquidityModel::parse("fgn:H=0.25").kind()).hurst == 0.25);
    CHECK(std::get<CompensatedPoissonSquared>(LiquidityModel::parse("poisson:lambda=2").kind())
              .lambda == 2.0);
    CHECK(std::holds_alternative<WhiteSquared>(LiquidityModel::parse("white").kind()));
    const auto m = LiquidityModel::parse("fgn:H=0.3333333333333333");
    CHECK(LiquidityModel::parse(m.to_string()).to_string() == m.to_string());

    CHECK_THROWS_AS(LiquidityModel::parse("fgn:H=1.5"), InvalidArgument);
    CHECK_THROWS_AS(LiquidityModel::parse("poisson:lambda=-1"), InvalidArgument);
    CHECK_THROWS_AS(LiquidityModel::parse("rosenblatt"), InvalidArgument);
    CHECK_THROWS_AS(LiquidityModel::parse("fgn:H=abc"), InvalidArgument);
}

TEST_CASE("theoretical covariances") {
    const auto fgn = theoretical_covariance(FgnSquared{1.0 / 3.0});
    CHECK(fgn.s0() == 2.0);
    for (long n = 1; n < 20; ++n) {
        const double r = fgn_autocovariance(1.0 / 3.0, static_cast<std::size_t>(n));
        CHECK(fgn.s(n) == doctest::Approx(2.0 * r * r).epsilon(1e-14));
        CHECK(fgn.s(-n) == fgn.s(n));
        CHECK(std::abs(fgn.s(n)) <= fgn.s0());
        CHECK(fgn.f(n) == doctest::Approx(fgn.s(n) + 1.0));
    }
    CHECK(fgn.s(100000) < 1e-6);

    CHECK(theoretical_covariance(FgnSquared{0.5}).s(1) == doctest::Approx(0.0));

    const auto poi = theoretical_covariance(CompensatedPoissonSquared{1.0});
    CHECK(poi.s0() == doctest::Approx(3.0));
    CHECK(poi.s(3) == 0.0);
    CHECK(poi.s(-1) == 0.0);
    CHECK(theoretical_covariance(CompensatedPoissonSquared{4.0}).s0() ==
          doctest::Approx((4.0 + 48.0) / 16.0 - 1.0));

    const auto white = theoretical_covariance(WhiteSquared{});
    CHECK(white.s0() == 2.0);
    CHECK(white.s(1) == 0.0);
}

TEST_CASE("sampling basics") {
    const auto l = sample_liquidity(FgnSquared{0.5}, {3, 0}, 1000000);
    const double m = std::accumulate(l.begin(), l.end(), 0.0) / static_cast<double>(l.size());
    CHECK(std::abs(m - 1.0) < 0.005);

    for (double v : sample_liquidity(CompensatedPoissonSquared{1.0}, {3, 1}, 2000)) {
        const double k = std::sqrt(v) ;  // |N - 1| for N Poisson
        CHECK(k == std::round(k));
    }
    for (const LiquidityModel& model :
         {LiquidityModel(FgnSquared{0.7}), LiquidityModel(CompensatedPoissonSquared{2.0}),
          LiquidityModel(WhiteSquared{})}) {
        const auto one = sample_liquidity(model, {1, 1}, 1);
        REQUIRE(one.size() == 1);
        CHECK(one[0] >= 0.0);
    }
}

TEST_CASE("Poisson s(0) = 3 against a 1e7-draw Monte Carlo") {
    const auto l = sample_liquidity(CompensatedPoissonSquared{1.0}, {77, 0}, 10000000);
    std::vector<double> centered(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) centered[i] = (l[i] - 1.0) * (l[i] - 1.0);
    const auto est = oracle::batch_means(centered);
    CHECK(std::abs(est.mean - 3.0) < 4.0 * est.se);
}

TEST_CASE("empirical autocovariance matches theory at lags 0..5") {
    const std::size_t n = 1000000;
    for (const LiquidityModel& model :
         {LiquidityModel(FgnSquared{1.0 / 3.0}), LiquidityModel(FgnSquared{0.8}),
          LiquidityModel(CompensatedPoissonSquared{1.0}), LiquidityModel(WhiteSquared{})}) {
        const auto l = sample_liquidity(model, {21, 4}, n);
        const auto cov = theoretical_covariance(model);
        for (long k = 0; k <= 5; ++k) {
            // Known mean 1, so centre on it and use batch means for the SE.
            std::vector<double> prod(n - static_cast<std::size_t>(k));
            for (std::size_t t = 0; t < prod.size(); ++t)
                prod[t] = (l[t] - 1.0) * (l[t + static_cast<std::size_t>(k)] - 1.0);
            const auto est = oracle::batch_means(prod);
            INFO(model.to_string() << " lag " << k << " est " << est.mean << " se " << est.se);
            CHECK(std::abs(est.mean - cov.s(k)) < 5.0 * est.se);
        }
    }
}

TEST_CASE("fGn^2 cross moment Cov(L0 Ln, Lt) decays") {
    const std::size_t n = 1000000;
    const auto l = sample_liquidity(FgnSquared{1.0 / 3.0}, {5, 5}, n);
    // Cov(L_0 L_1, L_20) estimated with known E L = 1 and E L0 L1 = f(1).
    const double f1 = theoretical_covariance(FgnSquared{1.0 / 3.0}).f(1);
    std::vector<double> prod(n - 20);
    for (std::size_t t = 0; t < prod.size(); ++t) prod[t] = (l[t] * l[t + 1] - f1) * (l[t + 20] - 1.0);
    const auto est = oracle::batch_means(prod);
    CHECK(std::abs(est.mean) < 4.0 * est.se + 1e-3);
}

TEST_CASE("Gaussian triple moment") {
    CHECK(gaussian_triple_moment(0, 0, 0) == doctest::Approx(1.0));
    CHECK(gaussian_triple_moment(1, 1, 1) == doctest::Approx(15.0));

    // Monte Carlo oracle: correlated triples from a hand-rolled Cholesky factor.
    const double r12 = 0.5, r13 = 0.2, r23 = 0.1;
    const double l21 = r12, l22 = std::sqrt(1 - r12 * r12);
    const double l31 = r13, l32 = (r23 - r13 * r12) / l22;
    const double l33 = std::sqrt(1 - l31 * l31 - l32 * l32);
    const std::size_t n = 10000000;
    const auto z = sample_gaussian_iid({31, 0}, 3 * n);
    std::vector<double> prod(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = z[3 * i], b = z[3 * i + 1], c = z[3 * i + 2];
        const double x1 = a, x2 = l21 * a + l22 * b, x3 = l31 * a + l32 * b + l33 * c;
        prod[i] = x1 * x1 * x2 * x2 * x3 * x3;
    }
    const auto est = oracle::batch_means(prod);
    CHECK(std::abs(est.mean - gaussian_triple_moment(r12, r13, r23)) < 3.0 * est.se);
}

}  // TEST_SUITE
