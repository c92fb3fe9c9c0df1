#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace archliq {

/// Sample moments of an observed X^2 series.
struct AcfEstimates {
    std::size_t n_obs = 0;
    double mu_hat = 0.0;   // (1/N) sum X_t^2
    double mu2_hat = 0.0;  // (1/N) sum X_t^4, uncentered
    std::vector<double> gamma_hat;  // lags 0..max_lag, divisor N at every lag

    std::size_t max_lag() const { return gamma_hat.empty() ? 0 : gamma_hat.size() - 1; }
};

/// gamma_hat[n] = (1/N) sum_{t=1}^{N-n} (X_t^2 - mean)(X_{t+n}^2 - mean).
/// Requires N >= max_lag + 2. Two-pass; compensated sums from N >= 1e5.
AcfEstimates estimate_acf(std::span<const double> x_squared, std::size_t max_lag);

}  // namespace archliq
