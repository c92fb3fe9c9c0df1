#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "archliq/rng_noise.hpp"

namespace archliq {

/// L_t = (fGn increment)^2.
struct FgnSquared {
    double hurst = 0.5;
};

/// L_t = (compensated Poisson increment)^2 / lambda, so that E L = 1 for any intensity.
struct CompensatedPoissonSquared {
    double lambda = 1.0;
};

/// L_t = Z_t^2 for i.i.d. standard normals. Uncorrelated baseline.
struct WhiteSquared {};

/// A strictly stationary positive liquidity process with unit mean.
class LiquidityModel {
public:
    using Kind = std::variant<FgnSquared, CompensatedPoissonSquared, WhiteSquared>;

    LiquidityModel() = default;
    LiquidityModel(Kind kind);  // NOLINT(google-explicit-constructor)
    template <class K>
        requires std::is_constructible_v<Kind, K>
    LiquidityModel(K kind) : LiquidityModel(Kind(std::move(kind))) {}  // NOLINT

    /// Parses "fgn:H=0.333", "poisson:lambda=1" or "white".
    static LiquidityModel parse(std::string_view text);

    const Kind& kind() const noexcept { return kind_; }
    std::string to_string() const;

private:
    Kind kind_ = WhiteSquared{};
};

/// Autocovariance s(n) of the liquidity process, with f(n) = s(n) + 1 = E(L_0 L_n).
/// Immutable.
class LiquidityCovariance {
public:
    LiquidityCovariance(double s0, std::function<double(std::size_t)> s_positive);

    double s0() const noexcept { return s0_; }
    double s(long lag) const;
    double f(long lag) const { return s(lag) + 1.0; }

private:
    double s0_;
    std::function<double(std::size_t)> s_positive_;  // lags >= 1
};

std::vector<double> sample_liquidity(const LiquidityModel& model, const SeedSpec& seed,
                                     std::size_t n);

LiquidityCovariance theoretical_covariance(const LiquidityModel& model);

/// E(X1^2 X2^2 X3^2) for unit-variance centered jointly Gaussian variables
/// with the given pairwise correlations (Isserlis).
double gaussian_triple_moment(double rho12, double rho13, double rho23);

}  // namespace archliq
