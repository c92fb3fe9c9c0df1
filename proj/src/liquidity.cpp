#include "archliq/liquidity.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

#include "archliq/errors.hpp"

namespace archliq {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_named_value(std::string_view body, std::string_view name, std::string_view text) {
    body = trim(body);
    const auto eq = body.find('=');
    if (eq == std::string_view::npos || trim(body.substr(0, eq)) != name)
        throw InvalidArgument("liquidity spec '" + std::string(text) + "': expected " +
                              std::string(name) + "=<value>");
    const std::string value(trim(body.substr(eq + 1)));
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(v))
        throw InvalidArgument("liquidity spec '" + std::string(text) + "': bad number '" + value +
                              "'");
    return v;
}

void validate(const LiquidityModel::Kind& kind) {
    std::visit(Overloaded{
                   [](const FgnSquared& k) {
                       if (!(k.hurst > 0.0 && k.hurst < 1.0))
                           throw InvalidArgument("fgn liquidity: H must lie in (0, 1)");
                   },
                   [](const CompensatedPoissonSquared& k) {
                       if (!(k.lambda > 0.0) || !std::isfinite(k.lambda))
                           throw InvalidArgument("poisson liquidity: lambda must be positive");
                   },
                   [](const WhiteSquared&) {},
               },
               kind);
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

LiquidityModel::LiquidityModel(Kind kind) : kind_(kind) { validate(kind_); }

LiquidityModel LiquidityModel::parse(std::string_view text) {
    const auto spec = trim(text);
    const auto colon = spec.find(':');
    const auto name = trim(spec.substr(0, colon));
    const auto body = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

    if (name == "white") {
        if (!trim(body).empty())
            throw InvalidArgument("liquidity spec 'white' takes no parameters");
        return LiquidityModel(WhiteSquared{});
    }
    if (name == "fgn") return LiquidityModel(FgnSquared{parse_named_value(body, "H", text)});
    if (name == "poisson")
        return LiquidityModel(CompensatedPoissonSquared{parse_named_value(body, "lambda", text)});
    throw InvalidArgument("unknown liquidity kind in '" + std::string(text) +
                          "' (expected fgn:H=..., poisson:lambda=... or white)");
}

std::string LiquidityModel::to_string() const {
    return std::visit(Overloaded{
                          [](const FgnSquared& k) { return "fgn:H=" + format_number(k.hurst); },
                          [](const CompensatedPoissonSquared& k) {
                              return "poisson:lambda=" + format_number(k.lambda);
                          },
                          [](const WhiteSquared&) { return std::string("white"); },
                      },
                      kind_);
}

LiquidityCovariance::LiquidityCovariance(double s0, std::function<double(std::size_t)> s_positive)
    : s0_(s0), s_positive_(std::move(s_positive)) {
    if (!(s0_ >= 0.0)) throw CovarianceError("liquidity variance s(0) must be nonnegative");
}

double LiquidityCovariance::s(long lag) const {
    if (lag == 0) return s0_;
    return s_positive_(static_cast<std::size_t>(std::labs(lag)));
}

std::vector<double> sample_liquidity(const LiquidityModel& model, const SeedSpec& seed,
                                     std::size_t n) {
    if (n < 1) throw InvalidArgument("sample_liquidity: n must be at least 1");
    std::vector<double> out = std::visit(
        Overloaded{
            [&](const FgnSquared& k) { return sample_fgn(seed, FgnConfig{k.hurst, n}); },
            [&](const CompensatedPoissonSquared& k) {
                auto v = sample_compensated_poisson_increments(seed, k.lambda, n);
                const double scale = 1.0 / std::sqrt(k.lambda);
                for (double& x : v) x *= scale;
                return v;
            },
            [&](const WhiteSquared&) { return sample_gaussian_iid(seed, n); },
        },
        model.kind());
    for (double& x : out) x *= x;
    return out;
}

LiquidityCovariance theoretical_covariance(const LiquidityModel& model) {
    return std::visit(
        Overloaded{
            [](const FgnSquared& k) {
                const double h = k.hurst;
                return LiquidityCovariance(2.0, [h](std::size_t lag) {
                    const double r = fgn_autocovariance(h, lag);
                    return 2.0 * r * r;
                });
            },
            [](const CompensatedPoissonSquared& k) {
                // E N~^4 = lambda + 3 lambda^2, rescaled by 1/lambda^2.
                const double lambda = k.lambda;
                const double s0 = (lambda + 3.0 * lambda * lambda) / (lambda * lambda) - 1.0;
                return LiquidityCovariance(s0, [](std::size_t) { return 0.0; });
            },
            [](const WhiteSquared&) {
                return LiquidityCovariance(2.0, [](std::size_t) { return 0.0; });
            },
        },
        model.kind());
}

double gaussian_triple_moment(double rho12, double rho13, double rho23) {
    return 1.0 + 2.0 * (rho12 * rho12 + rho13 * rho13 + rho23 * rho23) +
           8.0 * rho12 * rho13 * rho23;
}

}  // namespace archliq
