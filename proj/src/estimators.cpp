#include "archliq/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "archliq/errors.hpp"

namespace archliq {

namespace {

constexpr double kDegenerateTolerance = 1e-12;
constexpr double kTieTolerance = 1e-12;

bool in_band(double root) { return root >= kRootBandLow && root <= kRootBandHigh; }
double band_distance(double root) {
    if (root < kRootBandLow) return kRootBandLow - root;
    if (root > kRootBandHigh) return root - kRootBandHigh;
    return 0.0;
}
bool in_unit_interval(double root) { return root > 0.0 && root < 1.0; }

// Roots of a x^2 + b x + c with disc >= 0, without cancellation:
// [plus, minus] = (-b +/- sqrt(disc)) / (2a).
std::array<double, 2> stable_roots(const QuadCoeffs& q) {
    const double sq = std::sqrt(q.discriminant);
    if (q.b == 0.0 && sq == 0.0) return {0.0, 0.0};
    const double big = -0.5 * (q.b + std::copysign(sq, q.b));  // same sign as -b
    const double r_big = big / q.a;
    const double r_small = q.c / big;
    // For b >= 0, big = -(b + sqrt)/2 gives the minus root.
    return q.b >= 0.0 ? std::array{r_small, r_big} : std::array{r_big, r_small};
}

std::vector<long> auxiliary_lags_after(long base) {
    std::vector<long> lags;
    for (int k = 1; k <= kAuxiliaryLagCount; ++k) lags.push_back(base + k);
    return lags;
}

// Shared tail of both estimator families: degenerate/complex handling, root
// selection, then l1 and alpha0.
EstimationResult finish(const QuadCoeffs& q, const MomentStatistics& stats,
                        const ResidualContext& ctx,
                        const std::function<double(double)>& l1_radicand) {
    EstimationResult res;
    res.coeffs = q;

    double alpha1 = 0.0;
    const double scale = std::max({1.0, std::abs(q.b), std::abs(q.c)});
    if (std::abs(q.a) < kDegenerateTolerance * scale) {
        if (std::abs(q.b) < kDegenerateTolerance * std::max(1.0, std::abs(q.c)))
            throw UnidentifiableError("quadratic and linear coefficients both vanish; alpha1 is "
                                      "not identifiable at this lag");
        alpha1 = -q.c / q.b;
        res.root_outside_band = !in_band(alpha1);
        res.status = EstimateStatus::DegenerateLinear;
        res.chosen_root = RootChoice::Linear;
    } else {
        if (q.discriminant < 0.0) {
            res.discard_reason = DiscardReason::NegativeDiscriminant;
            return res;
        }
        const auto roots = stable_roots(q);
        const auto sel = select_root(roots, ctx);
        std::size_t pick = 0;
        if (sel.index) {
            pick = *sel.index;
        } else {
            // Small samples routinely push the true root just below zero; keep
            // it as a (real, out-of-interval) estimate instead of discarding.
            pick = band_distance(roots[0]) <= band_distance(roots[1]) ? 0 : 1;
            res.root_outside_band = true;
        }
        alpha1 = roots[pick];
        res.status = EstimateStatus::Real;
        res.chosen_root = pick == 0 ? RootChoice::Plus : RootChoice::Minus;
    }

    const double radicand = l1_radicand(alpha1);
    if (!(radicand >= 0.0)) {
        res.status = EstimateStatus::ComplexDiscarded;
        res.discard_reason = DiscardReason::NegativeRadicand;
        return res;
    }
    const double l1 = std::sqrt(radicand);
    res.alpha1_hat = alpha1;
    res.l1_hat = l1;
    res.alpha0_hat = stats.mu * (1.0 - alpha1) - l1;
    for (long m : ctx.auxiliary_lags) {
        if (stats.has(m + 1))
            res.residuals.push_back(
                moment_equation_residual(stats, *ctx.cov, m, alpha1, radicand));
    }
    return res;
}

}  // namespace

std::string_view to_string(EstimateStatus s) {
    switch (s) {
        case EstimateStatus::Real: return "real";
        case EstimateStatus::ComplexDiscarded: return "complex";
        case EstimateStatus::DegenerateLinear: return "degenerate_linear";
    }
    return "?";
}

std::string_view to_string(RootChoice r) {
    switch (r) {
        case RootChoice::Plus: return "plus";
        case RootChoice::Minus: return "minus";
        case RootChoice::Linear: return "linear";
        case RootChoice::None: return "none";
    }
    return "?";
}

std::string_view to_string(DiscardReason r) {
    switch (r) {
        case DiscardReason::None: return "none";
        case DiscardReason::NegativeDiscriminant: return "negative_discriminant";
        case DiscardReason::NegativeRadicand: return "negative_radicand";
    }
    return "?";
}

MomentStatistics MomentStatistics::from_acf(const AcfEstimates& acf) {
    return {acf.gamma_hat, acf.mu_hat, acf.mu2_hat};
}

bool MomentStatistics::has(long lag) const {
    return static_cast<std::size_t>(std::labs(lag)) < gamma.size();
}

double MomentStatistics::at(long lag) const {
    if (!has(lag))
        throw DimensionError("autocovariance at lag " + std::to_string(lag) +
                             " not available (max lag " +
                             std::to_string(gamma.empty() ? 0 : gamma.size() - 1) + ")");
    return gamma[static_cast<std::size_t>(std::labs(lag))];
}

std::size_t required_max_lag(long lag) {
    return static_cast<std::size_t>(std::labs(lag)) + kAuxiliaryLagCount + 1;
}

double moment_equation_residual(const MomentStatistics& stats, const LiquidityCovariance& cov,
                                long m, double alpha1, double l1_squared) {
    const double g = stats.at(m);
    return alpha1 * alpha1 * g - alpha1 * (stats.at(m + 1) + stats.at(m - 1)) + g -
           l1_squared * cov.s(m);
}

RootSelection select_root(const std::array<double, 2>& roots, const ResidualContext& ctx) {
    RootSelection sel;
    for (std::size_t i = 0; i < 2; ++i) sel.admissible[i] = in_band(roots[i]);

    if (sel.admissible[0] != sel.admissible[1]) {
        sel.index = sel.admissible[0] ? 0 : 1;
        return sel;
    }
    if (!sel.admissible[0]) return sel;
    if (roots[0] == roots[1]) {
        sel.index = 0;
        return sel;
    }

    sel.residual_test_used = true;
    for (std::size_t i = 0; i < 2; ++i) {
        const double l1_sq = ctx.implied_l1_squared ? ctx.implied_l1_squared(roots[i]) : 0.0;
        double score = 0.0;
        for (long m : ctx.auxiliary_lags) {
            if (!ctx.stats->has(m + 1)) continue;
            const double r = moment_equation_residual(*ctx.stats, *ctx.cov, m, roots[i], l1_sq);
            score += r * r;
        }
        sel.score[i] = score;
    }

    const double diff = std::abs(sel.score[0] - sel.score[1]);
    const bool tie = diff <= kTieTolerance * std::max(sel.score[0], sel.score[1]);
    if (!tie) {
        sel.index = sel.score[0] < sel.score[1] ? 0 : 1;
        return sel;
    }
    const bool inside0 = in_unit_interval(roots[0]);
    const bool inside1 = in_unit_interval(roots[1]);
    if (inside0 != inside1) sel.index = inside0 ? 0 : 1;
    else sel.index = roots[0] <= roots[1] ? 0 : 1;
    return sel;
}

QuadCoeffs quad_coeffs_single_lag(const SingleLagInputs& in) {
    if (in.lag == 0) throw InvalidArgument("single-lag estimator needs lag n != 0");
    const double s0 = in.cov.s0();
    if (!(s0 > 0.0)) throw CovarianceError("single-lag estimator needs s(0) > 0");
    const auto& g = in.stats;
    const long n = in.lag;
    const double ratio = in.cov.s(n) / s0;
    const double kurtosis_term = g.mu2 * in.noise.var_eps_sq / in.noise.e4;

    QuadCoeffs q;
    q.a = g.at(n) - ratio * g.at(0);
    q.b = 2.0 * ratio * g.at(1) - (g.at(n + 1) + g.at(n - 1));
    q.c = g.at(n) + ratio * (kurtosis_term - g.at(0));
    q.discriminant = q.b * q.b - 4.0 * q.a * q.c;
    return q;
}

EstimationResult estimate_single_lag(const SingleLagInputs& in) {
    const QuadCoeffs q = quad_coeffs_single_lag(in);
    const auto& g = in.stats;
    const double s0 = in.cov.s0();
    const double kurtosis_term = g.mu2 * in.noise.var_eps_sq / in.noise.e4;
    const auto radicand = [&](double a1) {
        return (a1 * a1 * g.at(0) - 2.0 * a1 * g.at(1) + g.at(0) - kurtosis_term) / s0;
    };

    ResidualContext ctx;
    ctx.stats = &in.stats;
    ctx.cov = &in.cov;
    ctx.auxiliary_lags = auxiliary_lags_after(std::labs(in.lag));
    ctx.implied_l1_squared = radicand;
    return finish(q, g, ctx, radicand);
}

QuadCoeffs quad_coeffs_two_lag(const TwoLagInputs& in) {
    if (in.lag1 == 0 || in.lag2 == 0 || in.lag1 == in.lag2)
        throw InvalidArgument("two-lag estimator needs lags n1 != n2, both nonzero");
    const double s2 = in.cov.s(in.lag2);
    if (std::abs(s2) <= 1e-14 * std::max(in.cov.s0(), 1e-300))
        throw CovarianceError("s(n2) = 0: the liquidity is uncorrelated at lag " +
                              std::to_string(in.lag2) + "; use the single-lag estimator");
    const auto& g = in.stats;
    const long n1 = in.lag1;
    const long n2 = in.lag2;
    const double ratio = in.cov.s(n1) / s2;

    QuadCoeffs q;
    q.a = g.at(n1) - ratio * g.at(n2);
    q.b = ratio * (g.at(n2 + 1) + g.at(n2 - 1)) - (g.at(n1 + 1) + g.at(n1 - 1));
    q.c = q.a;
    q.discriminant = q.b * q.b - 4.0 * q.a * q.a;
    return q;
}

EstimationResult estimate_two_lag(const TwoLagInputs& in) {
    const QuadCoeffs q = quad_coeffs_two_lag(in);
    const auto& g = in.stats;
    const long n2 = in.lag2;
    const double s2 = in.cov.s(n2);
    const auto radicand = [&](double a1) {
        return (a1 * a1 * g.at(n2) - a1 * (g.at(n2 + 1) + g.at(n2 - 1)) + g.at(n2)) / s2;
    };

    ResidualContext ctx;
    ctx.stats = &in.stats;
    ctx.cov = &in.cov;
    ctx.auxiliary_lags = auxiliary_lags_after(std::max(std::labs(in.lag1), std::labs(in.lag2)));
    ctx.implied_l1_squared = radicand;
    return finish(q, g, ctx, radicand);
}

}  // namespace archliq
