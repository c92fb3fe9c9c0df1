#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace archliq {

/// Identifies one reproducible random stream. Generators are pure functions
/// of this value: the same (master_seed, stream_index) always yields the
/// same draws, independent of thread count or call order.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// 64-bit engine key for a stream: a SplitMix64 mix of both seed words.
std::uint64_t stream_key(const SeedSpec& seed) noexcept;

/// Child stream for an independent purpose (liquidity vs innovations)
/// within one replication. Keeps stream_index, rehashes the master word.
SeedSpec substream(const SeedSpec& seed, std::uint64_t tag) noexcept;

Engine make_engine(const SeedSpec& seed);

struct FgnConfig {
    double hurst = 0.5;
    std::size_t length = 1;

    void validate() const;
};

/// Autocovariance of unit-spaced fGn increments,
/// r_H(k) = ((k+1)^{2H} + |k-1|^{2H} - 2 k^{2H}) / 2, with r_H(0) = 1.
double fgn_autocovariance(double hurst, std::size_t lag);

std::vector<double> sample_gaussian_iid(const SeedSpec& seed, std::size_t n);

enum class FgnMethod {
    Automatic,  // circulant embedding, Cholesky when the embedding is not PSD
    Circulant,
    Cholesky,
};

/// Circulant size used for a sequence of `length` points: the smallest
/// power of two >= 2(length - 1).
std::size_t circulant_size(std::size_t length);

/// Eigenvalues of the minimal circulant embedding of the fGn Toeplitz
/// covariance, before any clamping.
std::vector<double> circulant_eigenvalues(const FgnConfig& cfg);

/// Leading length x length block of the covariance the circulant method
/// actually samples from (eigenvalues after clamping). Throws
/// GenerationError when the embedding is not usable.
Eigen::MatrixXd circulant_implied_covariance(const FgnConfig& cfg);

/// L L^T of the Toeplitz Cholesky factor. Throws GenerationError when the
/// factorization fails.
Eigen::MatrixXd cholesky_implied_covariance(const FgnConfig& cfg);

Eigen::MatrixXd fgn_toeplitz(const FgnConfig& cfg);

std::vector<double> sample_fgn(const SeedSpec& seed, const FgnConfig& cfg,
                               FgnMethod method = FgnMethod::Automatic);

/// Increments of a compensated Poisson process with intensity lambda on a
/// unit grid: Poisson(lambda) - lambda.
std::vector<double> sample_compensated_poisson_increments(const SeedSpec& seed, double lambda,
                                                          std::size_t n);

}  // namespace archliq
