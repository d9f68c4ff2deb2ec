#include "lamelab/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "lamelab/error.hpp"

namespace lamelab {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        fail("config key '" + key + "': '" + v + "' is not a number");
    }
    require(pos == v.size(), "config key '" + key + "': trailing characters in '" + v + "'");
    return x;
}

long long to_integer(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &pos);
    } catch (const std::exception&) {
        fail("config key '" + key + "': '" + v + "' is not an integer");
    }
    require(pos == v.size(), "config key '" + key + "': '" + v + "' is not an integer");
    return x;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    if (trim(v).empty()) return out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
    return s;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;
using Getter = std::function<std::string(const ExperimentConfig&)>;

struct Key {
    Setter set;
    Getter get;
};

template <class T>
Key number(T ExperimentConfig::*m) {
    return {[m](ExperimentConfig& c, const std::string& v) {
                if constexpr (std::is_floating_point_v<T>) {
                    c.*m = to_double("", v);
                } else {
                    const long long x = to_integer("", v);
                    require(x >= 0 || std::is_signed_v<T>, "negative value for an unsigned key");
                    c.*m = static_cast<T>(x);
                }
            },
            [m](const ExperimentConfig& c) {
                if constexpr (std::is_floating_point_v<T>) return fmt(c.*m);
                else return std::to_string(c.*m);
            }};
}

Key text(std::string ExperimentConfig::*m) {
    return {[m](ExperimentConfig& c, const std::string& v) { c.*m = v; },
            [m](const ExperimentConfig& c) { return c.*m; }};
}

Key list(std::vector<double> ExperimentConfig::*m) {
    return {[m](ExperimentConfig& c, const std::string& v) { c.*m = to_list("", v); },
            [m](const ExperimentConfig& c) { return fmt(c.*m); }};
}

const std::map<std::string, Key>& keys() {
    using C = ExperimentConfig;
    static const std::map<std::string, Key> k{
        {"d", number(&C::d)},
        {"n", number(&C::n)},
        {"L", number(&C::L)},
        {"mu", number(&C::mu)},
        {"lambda", number(&C::lambda)},
        {"potential", text(&C::potential)},
        {"potential_params", list(&C::potential_params)},
        {"field", text(&C::field)},
        {"field_params", list(&C::field_params)},
        {"sigma", number(&C::sigma)},
        {"k_re", number(&C::k_re)},
        {"k_im", number(&C::k_im)},
        {"k_re_min", number(&C::k_re_min)},
        {"k_re_max", number(&C::k_re_max)},
        {"k_im_min", number(&C::k_im_min)},
        {"k_im_max", number(&C::k_im_max)},
        {"k_re_points", number(&C::k_re_points)},
        {"k_im_points", number(&C::k_im_points)},
        {"eta", number(&C::eta)},
        {"tol", number(&C::tol)},
        {"residual_tol", number(&C::residual_tol)},
        {"max_iter", number(&C::max_iter)},
        {"seed", number(&C::seed)},
        {"threads", number(&C::threads)},
        {"C_margin", number(&C::C_margin)},
        {"regularity_s", number(&C::regularity_s)},
        {"trials", number(&C::trials)},
        {"n_eigs", number(&C::n_eigs)},
        {"shift_re", number(&C::shift_re)},
        {"shift_im", number(&C::shift_im)},
        {"drift_tol", number(&C::drift_tol)},
        {"drift_floor", number(&C::drift_floor)},
        {"localization_min", number(&C::localization_min)},
        {"dense_limit", number(&C::dense_limit)},
    };
    return k;
}

}  // namespace

std::string ExperimentConfig::echo() const {
    std::string out;
    for (const auto& [name, key] : keys()) out += name + "=" + key.get(*this) + "\n";
    return out;
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        require(eq != std::string::npos, "config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = keys().find(key);
        require(it != keys().end(), "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        try {
            it->second.set(cfg, value);
        } catch (const Error& e) {
            fail("config key '" + key + "': " + e.what());
        }
    }
    validate_config(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate_config(const ExperimentConfig& c) {
    require(c.d >= 1 && c.d <= 6, "d must lie in [1, 6]");
    require(c.n >= 8 && c.n % 2 == 0, "n must be even and at least 8");
    require(c.L > 0.0, "L must be positive");
    require(c.sigma > 0.0, "sigma must be positive");
    require(c.k_re_points >= 1 && c.k_im_points >= 1, "k grid needs at least one point per direction");
    require(c.k_re_min <= c.k_re_max && c.k_im_min <= c.k_im_max, "k bounds are reversed");
    require(c.tol > 0.0 && c.residual_tol > 0.0, "tolerances must be positive");
    require(c.max_iter >= 1, "max_iter must be positive");
    require(c.threads >= 1, "threads must be at least 1");
    require(c.C_margin >= 0.0, "C_margin must be non-negative");
    require(c.trials >= 1, "trials must be at least 1");
    require(c.n_eigs >= 1, "n_eigs must be at least 1");
    require(c.drift_tol > 0.0 && c.drift_floor > 0.0, "drift thresholds must be positive");
    require(c.localization_min >= 0.0 && c.localization_min <= 1.0, "localization_min must lie in [0, 1]");
    require(c.dense_limit >= 0, "dense_limit must be non-negative");
}

}  // namespace lamelab
