#include "archliq/acov_est.hpp"

#include <cmath>
#include <string>

#include "archliq/errors.hpp"

namespace archliq {

namespace {

constexpr std::size_t kCompensatedThreshold = 100'000;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) comp_ += (sum_ - t) + v;
        else comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class PlainSum {
public:
    void add(double v) { sum_ += v; }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
};

template <class Sum>
AcfEstimates estimate(std::span<const double> x, std::size_t max_lag) {
    const std::size_t n = x.size();
    const auto dn = static_cast<double>(n);

    Sum s1, s2;
    for (double v : x) {
        s1.add(v);
        s2.add(v * v);
    }
    AcfEstimates out;
    out.n_obs = n;
    out.mu_hat = s1.value() / dn;
    out.mu2_hat = s2.value() / dn;

    std::vector<double> centered(n);
    for (std::size_t t = 0; t < n; ++t) centered[t] = x[t] - out.mu_hat;

    out.gamma_hat.resize(max_lag + 1);
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        Sum acc;
        for (std::size_t t = 0; t + lag < n; ++t) acc.add(centered[t] * centered[t + lag]);
        out.gamma_hat[lag] = acc.value() / dn;
    }
    return out;
}

}  // namespace

AcfEstimates estimate_acf(std::span<const double> x_squared, std::size_t max_lag) {
    if (x_squared.size() < max_lag + 2)
        throw DimensionError("estimate_acf: need at least max_lag + 2 = " +
                             std::to_string(max_lag + 2) + " observations, got " +
                             std::to_string(x_squared.size()));
    if (x_squared.size() >= kCompensatedThreshold) return estimate<CompensatedSum>(x_squared, max_lag);
    return estimate<PlainSum>(x_squared, max_lag);
}

}  // namespace archliq
