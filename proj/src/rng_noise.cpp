#include "archliq/rng_noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include <unsupported/Eigen/FFT>

#include "archliq/errors.hpp"

namespace archliq {

namespace {

constexpr double kNegativeEigenTolerance = 1e-9;
// Dense Toeplitz factorization beyond this size is not attempted.
constexpr std::size_t kMaxCholeskyLength = 8192;

using Spectrum = std::vector<std::complex<double>>;

// sqrt(lambda_k / m) for the clamped embedding, shared between replications
// that request the same (H, length).
class EmbeddingCache {
public:
    std::shared_ptr<const std::vector<double>> find(double hurst, std::size_t length) {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key(hurst, length));
        return it == entries_.end() ? nullptr : it->second;
    }

    void insert(double hurst, std::size_t length, std::shared_ptr<const std::vector<double>> v) {
        std::lock_guard lock(mutex_);
        if (entries_.size() >= 32) entries_.clear();
        entries_.emplace(key(hurst, length), std::move(v));
    }

private:
    static std::pair<std::uint64_t, std::size_t> key(double hurst, std::size_t length) {
        return {std::bit_cast<std::uint64_t>(hurst), length};
    }

    std::mutex mutex_;
    std::map<std::pair<std::uint64_t, std::size_t>, std::shared_ptr<const std::vector<double>>>
        entries_;
};

EmbeddingCache& embedding_cache() {
    static EmbeddingCache cache;
    return cache;
}

std::vector<double> circulant_row(const FgnConfig& cfg, std::size_t m) {
    std::vector<double> row(m, 0.0);
    for (std::size_t k = 0; k <= m / 2; ++k) {
        const double r = fgn_autocovariance(cfg.hurst, k);
        row[k] = r;
        if (k != 0 && k != m / 2) row[m - k] = r;
    }
    return row;
}

// Returns empty when some eigenvalue is below the tolerance.
std::vector<double> clamped_eigenvalues(const FgnConfig& cfg, double* worst = nullptr) {
    auto lambda = circulant_eigenvalues(cfg);
    const double most_negative = *std::min_element(lambda.begin(), lambda.end());
    if (worst != nullptr) *worst = most_negative;
    if (most_negative < -kNegativeEigenTolerance) return {};
    for (double& l : lambda) l = std::max(l, 0.0);
    return lambda;
}

std::vector<double> sample_circulant(Engine& engine, const std::vector<double>& scale,
                                     std::size_t length) {
    const std::size_t m = scale.size();
    const std::size_t half = m / 2;
    std::normal_distribution<double> normal;

    Spectrum w(m);
    w[0] = {scale[0] * normal(engine), 0.0};
    w[half] = {scale[half] * normal(engine), 0.0};
    for (std::size_t k = 1; k < half; ++k) {
        const double re = normal(engine);
        const double im = normal(engine);
        const double s = scale[k] * std::sqrt(0.5);
        w[k] = {s * re, s * im};
        w[m - k] = std::conj(w[k]);
    }

    Eigen::FFT<double> fft;
    Spectrum out;
    fft.fwd(out, w);
    std::vector<double> x(length);
    for (std::size_t j = 0; j < length; ++j) x[j] = out[j].real();
    return x;
}

std::vector<double> sample_cholesky(Engine& engine, const Eigen::MatrixXd& factor) {
    const auto n = factor.rows();
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z[i] = normal(engine);
    const Eigen::VectorXd x = factor.triangularView<Eigen::Lower>() * z;
    return {x.data(), x.data() + n};
}

// Lower factor of the Toeplitz covariance, or an explanation in `why`.
bool toeplitz_factor(const FgnConfig& cfg, Eigen::MatrixXd& factor, std::string& why) {
    if (cfg.length > kMaxCholeskyLength) {
        why = "Cholesky fallback refused for length " + std::to_string(cfg.length) +
              " (limit " + std::to_string(kMaxCholeskyLength) + ")";
        return false;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(fgn_toeplitz(cfg));
    if (llt.info() != Eigen::Success) {
        why = "Cholesky factorization failed: covariance not numerically positive definite";
        return false;
    }
    factor = llt.matrixL();
    return true;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_key(const SeedSpec& seed) noexcept {
    return splitmix64(splitmix64(seed.master_seed) ^
                      splitmix64(seed.stream_index ^ 0xD1B54A32D192ED03ULL));
}

SeedSpec substream(const SeedSpec& seed, std::uint64_t tag) noexcept {
    return {splitmix64(seed.master_seed ^ splitmix64(tag + 0x632BE59BD9B4E019ULL)),
            seed.stream_index};
}

Engine make_engine(const SeedSpec& seed) { return Engine(stream_key(seed)); }

void FgnConfig::validate() const {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw InvalidArgument("Hurst parameter must lie in (0, 1), got " + std::to_string(hurst));
    if (length < 1) throw InvalidArgument("fGn length must be at least 1");
}

double fgn_autocovariance(double hurst, std::size_t lag) {
    if (lag == 0) return 1.0;
    const double two_h = 2.0 * hurst;
    const auto k = static_cast<double>(lag);
    return 0.5 * (std::pow(k + 1.0, two_h) + std::pow(k - 1.0, two_h) - 2.0 * std::pow(k, two_h));
}

std::vector<double> sample_gaussian_iid(const SeedSpec& seed, std::size_t n) {
    if (n < 1) throw InvalidArgument("sample_gaussian_iid: n must be at least 1");
    Engine engine = make_engine(seed);
    std::normal_distribution<double> normal;
    std::vector<double> out(n);
    for (double& v : out) v = normal(engine);
    return out;
}

std::size_t circulant_size(std::size_t length) {
    if (length <= 1) return 1;
    return std::bit_ceil(2 * (length - 1));
}

std::vector<double> circulant_eigenvalues(const FgnConfig& cfg) {
    cfg.validate();
    const std::size_t m = circulant_size(cfg.length);
    const auto row = circulant_row(cfg, m);
    Spectrum in(row.begin(), row.end());
    Spectrum out;
    Eigen::FFT<double> fft;
    fft.fwd(out, in);
    std::vector<double> lambda(m);
    for (std::size_t k = 0; k < m; ++k) lambda[k] = out[k].real();
    return lambda;
}

Eigen::MatrixXd fgn_toeplitz(const FgnConfig& cfg) {
    cfg.validate();
    const auto n = static_cast<Eigen::Index>(cfg.length);
    Eigen::MatrixXd t(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            t(i, j) = fgn_autocovariance(cfg.hurst, static_cast<std::size_t>(std::abs(i - j)));
    return t;
}

Eigen::MatrixXd circulant_implied_covariance(const FgnConfig& cfg) {
    double worst = 0.0;
    const auto lambda = clamped_eigenvalues(cfg, &worst);
    if (lambda.empty())
        throw GenerationError("circulant embedding has eigenvalue " + std::to_string(worst));
    const std::size_t m = lambda.size();
    Spectrum in(lambda.begin(), lambda.end());
    Spectrum row;
    Eigen::FFT<double> fft;
    fft.inv(row, in);  // scaled by 1/m

    const auto n = static_cast<Eigen::Index>(cfg.length);
    Eigen::MatrixXd c(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            c(i, j) = row[static_cast<std::size_t>(std::abs(i - j)) % m].real();
    return c;
}

Eigen::MatrixXd cholesky_implied_covariance(const FgnConfig& cfg) {
    cfg.validate();
    Eigen::MatrixXd factor;
    std::string why;
    if (!toeplitz_factor(cfg, factor, why)) throw GenerationError(why);
    return factor * factor.transpose();
}

std::vector<double> sample_fgn(const SeedSpec& seed, const FgnConfig& cfg, FgnMethod method) {
    cfg.validate();
    Engine engine = make_engine(seed);
    if (cfg.length == 1) {
        std::normal_distribution<double> normal;
        return {normal(engine)};
    }

    std::string embedding_failure;
    if (method != FgnMethod::Cholesky) {
        auto scale = embedding_cache().find(cfg.hurst, cfg.length);
        if (!scale) {
            double worst = 0.0;
            auto lambda = clamped_eigenvalues(cfg, &worst);
            if (!lambda.empty()) {
                const auto m = static_cast<double>(lambda.size());
                for (double& l : lambda) l = std::sqrt(l / m);
                scale = std::make_shared<const std::vector<double>>(std::move(lambda));
                embedding_cache().insert(cfg.hurst, cfg.length, scale);
            } else {
                embedding_failure =
                    "circulant embedding not nonnegative (min eigenvalue " + std::to_string(worst) + ")";
            }
        }
        if (scale) return sample_circulant(engine, *scale, cfg.length);
        if (method == FgnMethod::Circulant) throw GenerationError(embedding_failure);
    }

    Eigen::MatrixXd factor;
    std::string cholesky_failure;
    if (toeplitz_factor(cfg, factor, cholesky_failure)) return sample_cholesky(engine, factor);
    if (embedding_failure.empty()) throw GenerationError(cholesky_failure);
    throw GenerationError("fGn generation failed: " + embedding_failure + "; " + cholesky_failure);
}

std::vector<double> sample_compensated_poisson_increments(const SeedSpec& seed, double lambda,
                                                          std::size_t n) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidArgument("Poisson intensity must be positive");
    if (n < 1) throw InvalidArgument("sample_compensated_poisson_increments: n must be at least 1");

    Engine engine = make_engine(seed);
    std::vector<double> out(n);
    if (lambda <= 10.0) {
        // Sequential inversion of the CDF.
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        const double p0 = std::exp(-lambda);
        for (double& v : out) {
            const double u = uniform(engine);
            double p = p0;
            double cdf = p0;
            long k = 0;
            while (u > cdf && k < 1000) {
                ++k;
                p *= lambda / static_cast<double>(k);
                cdf += p;
            }
            v = static_cast<double>(k) - lambda;
        }
    } else {
        std::poisson_distribution<long> poisson(lambda);
        for (double& v : out) v = static_cast<double>(poisson(engine)) - lambda;
    }
    return out;
}

}  // namespace archliq
