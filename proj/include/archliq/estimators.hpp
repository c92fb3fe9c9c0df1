#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "archliq/acov_est.hpp"
#include "archliq/arch_sim.hpp"
#include "archliq/liquidity.hpp"

namespace archliq {

/// Autocovariances of X^2 indexed by lag (symmetric in sign) plus mu = E X^2
/// and mu2 = E X^4. Filled either from sample estimates or from exact moments.
struct MomentStatistics {
    std::vector<double> gamma;  // lags 0..gamma.size()-1
    double mu = 0.0;
    double mu2 = 0.0;

    static MomentStatistics from_acf(const AcfEstimates& acf);

    /// gamma(|lag|); DimensionError past the stored range.
    double at(long lag) const;
    bool has(long lag) const;
};

/// Inputs for the single-lag estimator: the statistics
/// [gamma(n+1), gamma(n), gamma(n-1), gamma(1), gamma(0), mu2] and mu.
struct SingleLagInputs {
    MomentStatistics stats;
    long lag = 1;
    LiquidityCovariance cov;
    NoiseMoments noise;
};

/// Inputs for the two-lag estimator (lags n1 != n2, both nonzero, s(n2) != 0).
struct TwoLagInputs {
    MomentStatistics stats;
    long lag1 = 1;
    long lag2 = 2;
    LiquidityCovariance cov;
    NoiseMoments noise;
};

struct QuadCoeffs {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double discriminant = 0.0;
};

enum class EstimateStatus { Real, ComplexDiscarded, DegenerateLinear };
enum class RootChoice { Plus, Minus, Linear, None };
enum class DiscardReason { None, NegativeDiscriminant, NegativeRadicand };

std::string_view to_string(EstimateStatus s);
std::string_view to_string(RootChoice r);
std::string_view to_string(DiscardReason r);

struct EstimationResult {
    EstimateStatus status = EstimateStatus::ComplexDiscarded;
    RootChoice chosen_root = RootChoice::None;
    DiscardReason discard_reason = DiscardReason::None;
    // Set only when status != ComplexDiscarded.
    std::optional<double> alpha0_hat;
    std::optional<double> alpha1_hat;
    std::optional<double> l1_hat;
    QuadCoeffs coeffs;
    // No root fell inside the admissible band; the one nearest to it was kept.
    bool root_outside_band = false;
    std::vector<double> residuals;  // per auxiliary lag, at the chosen root

    bool has_estimates() const { return status != EstimateStatus::ComplexDiscarded; }
};

/// Admissible band for alpha1 roots before any residual comparison.
inline constexpr double kRootBandLow = -0.05;
inline constexpr double kRootBandHigh = 1.05;
inline constexpr int kAuxiliaryLagCount = 5;

/// Residual of the lag-m moment equation
/// alpha^2 gamma(m) - alpha (gamma(m+1) + gamma(m-1)) + gamma(m) - l1^2 s(m).
double moment_equation_residual(const MomentStatistics& stats, const LiquidityCovariance& cov,
                                long m, double alpha1, double l1_squared);

/// What select_root needs to score a candidate root.
struct ResidualContext {
    const MomentStatistics* stats = nullptr;
    const LiquidityCovariance* cov = nullptr;
    std::vector<long> auxiliary_lags;
    /// l1^2 implied by a candidate alpha1 (may be negative).
    std::function<double(double)> implied_l1_squared;
};

struct RootSelection {
    std::optional<std::size_t> index;  // into the roots array; empty = NoAdmissibleRoot
    std::array<bool, 2> admissible{};
    std::array<double, 2> score{};     // summed squared residual (admissible roots only)
    bool residual_test_used = false;
};

/// Band filter, then smaller summed squared residual over the auxiliary lags;
/// ties go to the root inside (0,1), then the smaller one.
RootSelection select_root(const std::array<double, 2>& roots, const ResidualContext& ctx);

QuadCoeffs quad_coeffs_single_lag(const SingleLagInputs& in);
EstimationResult estimate_single_lag(const SingleLagInputs& in);

QuadCoeffs quad_coeffs_two_lag(const TwoLagInputs& in);
EstimationResult estimate_two_lag(const TwoLagInputs& in);

/// Largest gamma lag the single-lag estimator reads (including auxiliary lags).
std::size_t required_max_lag(long lag);

}  // namespace archliq
