#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "archliq/liquidity.hpp"
#include "archliq/rng_noise.hpp"

namespace archliq {

/// sigma_t^2 = alpha0 + alpha1 X_{t-1}^2 + l1 L_{t-1},  X_t = sigma_t eps_t.
struct ModelParams {
    double alpha0 = 1.0;
    double alpha1 = 0.1;
    double l1 = 0.5;

    /// alpha0 >= 0, alpha1 > 0, l1 > 0, all finite.
    void validate() const;
};

/// Moments of the i.i.d. innovation eps (E eps = 0, E eps^2 = 1).
struct NoiseMoments {
    double e4 = 3.0;
    double e6 = 15.0;
    double e8 = 105.0;
    double var_eps_sq = 2.0;

    static NoiseMoments gaussian() { return {}; }
    /// Builds from e4, e6, e8 with var_eps_sq = e4 - 1.
    static NoiseMoments from_moments(double e4, double e6, double e8);
    /// Parses "gaussian" or "moments:e4=..,e6=..,e8=..".
    static NoiseMoments parse(const std::string& text);

    /// Checks 1 <= sqrt(e4) <= e6^(1/3) <= e8^(1/4).
    void validate() const;

    double fourth_moment_bound() const;  // 1 / sqrt(e4)
    double consistency_bound() const;    // e8^(-1/4)
};

struct SamplePath {
    std::vector<double> x_squared;
    std::vector<double> sigma_squared;
    std::vector<double> liquidity;    // L_{t-1} that entered sigma_t^2
    std::vector<double> innovations;  // eps_t, so x_squared[t] == sigma_squared[t] * eps_t^2
    ModelParams params;
    SeedSpec seed;
};

// Substream tags inside one replication.
inline constexpr std::uint64_t kLiquidityStream = 1;
inline constexpr std::uint64_t kInnovationStream = 2;

/// Forward recursion from X_0^2 = init_x_squared. Uses L_0.. and eps_1..;
/// discards the first burn_in points and returns n points X_{burn_in+1}^2, ...
SamplePath simulate_recursive(const ModelParams& params, const LiquidityModel& liquidity,
                              const SeedSpec& seed, std::size_t n, double init_x_squared = 1.7,
                              std::size_t burn_in = 0);

/// sigma_{t+1}^2 = sum_{i<=K} (prod_{j<i} A_{t-j}) B_{t-i} over a pre-generated
/// buffer of n + K + 1 draws. truncation == 0 selects auto_truncation().
SamplePath simulate_stationary_series(const ModelParams& params, const LiquidityModel& liquidity,
                                      const SeedSpec& seed, std::size_t n,
                                      std::size_t truncation = 0);

/// Smallest K with alpha1^K (alpha0 + l1) / (1 - alpha1) <= 1e-12, before clamping.
std::size_t required_truncation(const ModelParams& params);
/// required_truncation clamped to [64, 1e6].
std::size_t auto_truncation(const ModelParams& params);

// Deterministic cores, usable with injected noise.

/// sigma_squared[t] = alpha0 + alpha1 x_prev + l1 liquidity[t], x = sigma^2 eps^2, with
/// x_prev starting at init_x_squared. All spans have equal length.
void run_recursion(const ModelParams& params, std::span<const double> eps,
                   std::span<const double> liquidity, double init_x_squared,
                   std::span<double> sigma_squared, std::span<double> x_squared);

/// Truncated series for sigma_{t+1}^2 built from eps[t-K..t] and liquidity[t-K..t].
double truncated_series(const ModelParams& params, std::span<const double> eps,
                        std::span<const double> liquidity, std::size_t t, std::size_t truncation);

enum class RegimePurpose { Stationary, FourthMoment, Consistency };

struct RegimeReport {
    bool stationary = false;     // alpha1 < 1
    bool fourth_moment = false;  // alpha1 < e4^(-1/2)
    bool consistency = false;    // alpha1 < e8^(-1/4)
    double fourth_moment_bound = 0.0;
    double consistency_bound = 0.0;
};

/// Throws RegimeError naming the violated bound when `purpose` is not met.
RegimeReport validate_regime(const ModelParams& params, const NoiseMoments& moments,
                             RegimePurpose purpose);

/// (alpha0 + l1) / (1 - alpha1).
double theoretical_mean_x_squared(const ModelParams& params);

/// E(sigma_t^2 L_s) = alpha0/(1-alpha1) + l1 sum_i alpha1^i f(t-s-i-1).
/// truncation == 0 sizes the sum so that its tail is below 1e-12.
double theoretical_sigma2_liquidity_cross_moment(const ModelParams& params,
                                                 const LiquidityCovariance& cov, long t_minus_s,
                                                 std::size_t truncation = 0);

}  // namespace archliq
