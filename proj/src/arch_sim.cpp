#include "archliq/arch_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "archliq/errors.hpp"

namespace archliq {

namespace {

constexpr double kOverflowLimit = 1e300;
constexpr double kTailTolerance = 1e-12;
constexpr std::size_t kMinTruncation = 64;
constexpr std::size_t kMaxTruncation = 1'000'000;

void check_value(double sigma_squared, std::size_t index) {
    if (!std::isfinite(sigma_squared) || sigma_squared > kOverflowLimit)
        throw SimulationError("sigma^2 overflow or non-finite value", index);
}

void require_stationary(const ModelParams& params) {
    params.validate();
    if (!(params.alpha1 < 1.0))
        throw RegimeError("stationarity requires alpha1 < 1 (alpha1 = " +
                          std::to_string(params.alpha1) + ")");
}

}  // namespace

void ModelParams::validate() const {
    if (!std::isfinite(alpha0) || !std::isfinite(alpha1) || !std::isfinite(l1))
        throw InvalidArgument("model parameters must be finite");
    if (alpha0 < 0.0) throw InvalidArgument("alpha0 must be nonnegative");
    if (!(alpha1 > 0.0)) throw InvalidArgument("alpha1 must be positive");
    if (!(l1 > 0.0)) throw InvalidArgument("l1 must be positive");
}

NoiseMoments NoiseMoments::from_moments(double e4, double e6, double e8) {
    NoiseMoments m{e4, e6, e8, e4 - 1.0};
    m.validate();
    return m;
}

NoiseMoments NoiseMoments::parse(const std::string& text) {
    if (text == "gaussian") return gaussian();
    const std::string prefix = "moments:";
    if (text.rfind(prefix, 0) != 0)
        throw InvalidArgument("unknown noise preset '" + text +
                              "' (expected gaussian or moments:e4=..,e6=..,e8=..)");
    double e4 = NAN, e6 = NAN, e8 = NAN;
    std::stringstream ss(text.substr(prefix.size()));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidArgument("bad noise moment entry '" + item + "'");
        const std::string key = item.substr(0, eq);
        const double value = std::strtod(item.c_str() + eq + 1, nullptr);
        if (key == "e4") e4 = value;
        else if (key == "e6") e6 = value;
        else if (key == "e8") e8 = value;
        else throw InvalidArgument("unknown noise moment '" + key + "'");
    }
    if (std::isnan(e4) || std::isnan(e6) || std::isnan(e8))
        throw InvalidArgument("noise moments need e4, e6 and e8");
    return from_moments(e4, e6, e8);
}

void NoiseMoments::validate() const {
    // Lyapunov: 1 = E eps^2 <= (E eps^4)^(1/2) <= (E eps^6)^(1/3) <= (E eps^8)^(1/4).
    constexpr double slack = 1e-12;
    const double r4 = std::sqrt(e4);
    const double r6 = std::cbrt(e6);
    const double r8 = std::pow(e8, 0.25);
    if (!(e4 >= 1.0 - slack) || !(r4 <= r6 * (1 + slack)) || !(r6 <= r8 * (1 + slack)))
        throw InvalidArgument("noise moments violate 1 <= sqrt(e4) <= e6^(1/3) <= e8^(1/4)");
    if (std::abs(var_eps_sq - (e4 - 1.0)) > 1e-12 * e4)
        throw InvalidArgument("var_eps_sq must equal e4 - 1");
}

double NoiseMoments::fourth_moment_bound() const { return 1.0 / std::sqrt(e4); }
double NoiseMoments::consistency_bound() const { return std::pow(e8, -0.25); }

void run_recursion(const ModelParams& params, std::span<const double> eps,
                   std::span<const double> liquidity, double init_x_squared,
                   std::span<double> sigma_squared, std::span<double> x_squared) {
    const std::size_t n = eps.size();
    if (liquidity.size() != n || sigma_squared.size() != n || x_squared.size() != n)
        throw DimensionError("run_recursion: buffers must have equal length");
    double x_prev = init_x_squared;
    for (std::size_t t = 0; t < n; ++t) {
        const double s2 = params.alpha0 + params.alpha1 * x_prev + params.l1 * liquidity[t];
        check_value(s2, t);
        sigma_squared[t] = s2;
        x_prev = s2 * eps[t] * eps[t];
        x_squared[t] = x_prev;
    }
}

double truncated_series(const ModelParams& params, std::span<const double> eps,
                        std::span<const double> liquidity, std::size_t t, std::size_t truncation) {
    if (t < truncation || t >= eps.size() || t >= liquidity.size())
        throw DimensionError("truncated_series: index window outside the noise buffer");
    // Horner form: B_t + A_t (B_{t-1} + A_{t-1} (... B_{t-K})).
    double acc = params.alpha0 + params.l1 * liquidity[t - truncation];
    for (std::size_t i = truncation; i-- > 0;) {
        const std::size_t u = t - i;
        acc = params.alpha0 + params.l1 * liquidity[u] + params.alpha1 * eps[u] * eps[u] * acc;
    }
    return acc;
}

SamplePath simulate_recursive(const ModelParams& params, const LiquidityModel& liquidity,
                              const SeedSpec& seed, std::size_t n, double init_x_squared,
                              std::size_t burn_in) {
    require_stationary(params);
    if (n < 1) throw InvalidArgument("simulate_recursive: n must be at least 1");
    if (!(init_x_squared >= 0.0) || !std::isfinite(init_x_squared))
        throw InvalidArgument("initial X^2 must be finite and nonnegative");

    const std::size_t total = n + burn_in;
    auto liq = sample_liquidity(liquidity, substream(seed, kLiquidityStream), total);
    auto eps = sample_gaussian_iid(substream(seed, kInnovationStream), total);

    std::vector<double> sigma2(total);
    std::vector<double> x2(total);
    run_recursion(params, eps, liq, init_x_squared, sigma2, x2);

    const auto skip = static_cast<std::ptrdiff_t>(burn_in);
    SamplePath path;
    path.x_squared.assign(x2.begin() + skip, x2.end());
    path.sigma_squared.assign(sigma2.begin() + skip, sigma2.end());
    path.liquidity.assign(liq.begin() + skip, liq.end());
    path.innovations.assign(eps.begin() + skip, eps.end());
    path.params = params;
    path.seed = seed;
    return path;
}

std::size_t required_truncation(const ModelParams& params) {
    require_stationary(params);
    const double mean = (params.alpha0 + params.l1) / (1.0 - params.alpha1);
    const double k = std::ceil(std::log(kTailTolerance / mean) / std::log(params.alpha1));
    if (!(k >= 1.0)) return 1;
    if (k > static_cast<double>(kMaxTruncation)) return kMaxTruncation + 1;
    return static_cast<std::size_t>(k);
}

std::size_t auto_truncation(const ModelParams& params) {
    return std::clamp(required_truncation(params), kMinTruncation, kMaxTruncation);
}

SamplePath simulate_stationary_series(const ModelParams& params, const LiquidityModel& liquidity,
                                      const SeedSpec& seed, std::size_t n, std::size_t truncation) {
    require_stationary(params);
    if (n < 1) throw InvalidArgument("simulate_stationary_series: n must be at least 1");
    const std::size_t needed = required_truncation(params);
    if (truncation == 0) {
        truncation = auto_truncation(params);
        if (truncation < needed)
            throw ConfigError("alpha1 too close to 1: series truncation would exceed " +
                              std::to_string(kMaxTruncation) + " terms");
    } else if (truncation < needed) {
        throw ConfigError("truncation " + std::to_string(truncation) +
                          " too small; tail bound needs at least " + std::to_string(needed));
    }

    const std::size_t buffer = n + truncation + 1;
    auto liq = sample_liquidity(liquidity, substream(seed, kLiquidityStream), buffer);
    auto eps = sample_gaussian_iid(substream(seed, kInnovationStream), buffer);

    SamplePath path;
    path.x_squared.resize(n);
    path.sigma_squared.resize(n);
    path.liquidity.resize(n);
    path.innovations.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t u = truncation + 1 + k;  // sigma_u^2 uses draws up to u-1
        const double s2 = truncated_series(params, eps, liq, u - 1, truncation);
        check_value(s2, k);
        path.sigma_squared[k] = s2;
        path.x_squared[k] = s2 * eps[u] * eps[u];
        path.liquidity[k] = liq[u - 1];
        path.innovations[k] = eps[u];
    }
    path.params = params;
    path.seed = seed;
    return path;
}

RegimeReport validate_regime(const ModelParams& params, const NoiseMoments& moments,
                             RegimePurpose purpose) {
    params.validate();
    moments.validate();
    RegimeReport r;
    r.fourth_moment_bound = moments.fourth_moment_bound();
    r.consistency_bound = moments.consistency_bound();
    r.stationary = params.alpha1 < 1.0;
    r.fourth_moment = params.alpha1 < r.fourth_moment_bound;
    r.consistency = params.alpha1 < r.consistency_bound;

    const auto a1 = std::to_string(params.alpha1);
    switch (purpose) {
        case RegimePurpose::Consistency:
            if (!r.consistency)
                throw RegimeError("consistency bound violated: alpha1 = " + a1 +
                                  " >= E(eps^8)^(-1/4) = " + std::to_string(r.consistency_bound));
            [[fallthrough]];
        case RegimePurpose::FourthMoment:
            if (!r.fourth_moment)
                throw RegimeError("fourth-moment bound violated: alpha1 = " + a1 +
                                  " >= E(eps^4)^(-1/2) = " + std::to_string(r.fourth_moment_bound));
            [[fallthrough]];
        case RegimePurpose::Stationary:
            if (!r.stationary)
                throw RegimeError("stationarity bound violated: alpha1 = " + a1 + " >= 1");
    }
    return r;
}

double theoretical_mean_x_squared(const ModelParams& params) {
    require_stationary(params);
    return (params.alpha0 + params.l1) / (1.0 - params.alpha1);
}

double theoretical_sigma2_liquidity_cross_moment(const ModelParams& params,
                                                 const LiquidityCovariance& cov, long t_minus_s,
                                                 std::size_t truncation) {
    require_stationary(params);
    const double a = params.alpha1;
    if (truncation == 0) {
        // |f| <= s(0) + 1, so the tail after K terms is at most l1 (s0+1) a^(K+1) / (1-a).
        const double bound = params.l1 * (cov.s0() + 1.0) / (1.0 - a);
        const double k = std::ceil(std::log(kTailTolerance / bound) / std::log(a));
        truncation = std::clamp<std::size_t>(k > 1.0 ? static_cast<std::size_t>(k) : 1,
                                             kMinTruncation, kMaxTruncation);
    }
    double sum = 0.0;
    double weight = 1.0;
    for (std::size_t i = 0; i <= truncation; ++i) {
        sum += weight * cov.f(t_minus_s - static_cast<long>(i) - 1);
        weight *= a;
    }
    return params.alpha0 / (1.0 - a) + params.l1 * sum;
}

}  // namespace archliq
