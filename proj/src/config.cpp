#include "archliq/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "archliq/errors.hpp"

namespace archliq {

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return s;
}

double to_double(std::string_view key, std::string_view value) {
    const std::string v(value);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(d))
        throw ConfigError("config key '" + std::string(key) + "': not a number: '" + v + "'");
    return d;
}

template <class Int>
Int to_integer(std::string_view key, std::string_view value) {
    Int out{};
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError("config key '" + std::string(key) + "': not an integer: '" +
                          std::string(value) + "'");
    return out;
}

std::vector<std::size_t> to_size_list(std::string_view key, std::string_view value) {
    std::vector<std::size_t> out;
    std::string item;
    std::stringstream ss{std::string(value)};
    while (std::getline(ss, item, ',')) {
        const auto t = trim(item);
        if (t.empty()) continue;
        out.push_back(to_integer<std::size_t>(key, t));
    }
    if (out.empty()) throw ConfigError("config key '" + std::string(key) + "': empty list");
    return out;
}

}  // namespace

std::vector<std::string> config_keys() {
    return {"alpha0",       "alpha1",      "l1",          "liquidity",      "noise",
            "sample_sizes", "replications", "lag",        "master_seed",    "init_x_squared",
            "burn_in",      "output_dir",  "threads",     "hist_bins"};
}

void apply_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
    value = trim(value);
    try {
        if (key == "alpha0") cfg.params.alpha0 = to_double(key, value);
        else if (key == "alpha1") cfg.params.alpha1 = to_double(key, value);
        else if (key == "l1") cfg.params.l1 = to_double(key, value);
        else if (key == "liquidity") cfg.liquidity = LiquidityModel::parse(value);
        else if (key == "noise") {
            cfg.noise = NoiseMoments::parse(std::string(value));
            cfg.noise_name = std::string(value);
        }
        else if (key == "sample_sizes") cfg.sample_sizes = to_size_list(key, value);
        else if (key == "replications") cfg.replications = to_integer<std::size_t>(key, value);
        else if (key == "lag") cfg.lag = to_integer<long>(key, value);
        else if (key == "master_seed") cfg.master_seed = to_integer<std::uint64_t>(key, value);
        else if (key == "init_x_squared") cfg.init_x_squared = to_double(key, value);
        else if (key == "burn_in") cfg.burn_in = to_integer<std::size_t>(key, value);
        else if (key == "output_dir") cfg.output_dir = std::string(value);
        else if (key == "threads") cfg.threads = to_integer<unsigned>(key, value);
        else if (key == "hist_bins") cfg.hist_bins = to_integer<std::size_t>(key, value);
        else throw ConfigError("unknown config key '" + std::string(key) + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("config key '" + std::string(key) + "': " + e.what());
    }
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::stringstream ss{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        std::string_view l = line;
        if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
        l = trim(l);
        if (l.empty()) continue;
        const auto eq = l.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        // Values may contain '=' (liquidity = fgn:H=0.3), so split at the first one.
        apply_config_value(cfg, trim(l.substr(0, eq)), l.substr(eq + 1));
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void ExperimentConfig::validate() const {
    try {
        params.validate();
        noise.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (replications < 1) throw ConfigError("replications must be at least 1");
    if (lag == 0) throw ConfigError("lag must be nonzero");
    if (sample_sizes.empty()) throw ConfigError("sample_sizes must not be empty");
    const auto min_size = static_cast<std::size_t>(std::labs(lag)) + 3;
    for (auto n : sample_sizes)
        if (n < min_size)
            throw ConfigError("sample size " + std::to_string(n) + " below lag + 3 = " +
                              std::to_string(min_size));
    if (!(init_x_squared >= 0.0)) throw ConfigError("init_x_squared must be nonnegative");
    if (hist_bins < 1) throw ConfigError("hist_bins must be at least 1");
}

}  // namespace archliq
