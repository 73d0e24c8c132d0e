#include "mvsde/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mvsde {

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ConfigError("config: bad numeric value for key '" + key + "': " + v);
    }
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ConfigError("config: bad integer value for key '" + key + "': " + v);
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config: bad boolean value for key '" + key + "': " + v);
}

std::vector<int> to_int_list(const std::string& key, std::string v) {
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') throw ConfigError("config: unbalanced brackets for key '" + key + "'");
        v = v.substr(1, v.size() - 2);
    }
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(static_cast<int>(to_int(key, item)));
    }
    if (out.empty()) throw ConfigError("config: empty list for key '" + key + "'");
    return out;
}

std::string fmt(double x) {
    char buf[40];
    snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

NonlinearF ExperimentConfig::make_F() const {
    if (F_kind == "sin") return NonlinearF::sine(F_amplitude);
    if (F_kind == "cos") return NonlinearF::cosine();
    if (F_kind == "sigmoid") return NonlinearF::sigmoid(F_steepness, F_center);
    throw std::runtime_error("config: unknown F kind '" + F_kind + "'");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    bool have_beta = false, have_hurst = false;

    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config: expected key=value, got: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.empty()) throw ConfigError("config: empty value for key '" + key + "'");

        if (key == "beta") {
            cfg.beta = to_double(key, val);
            have_beta = true;
        } else if (key == "lambda") {
            cfg.lambda = to_double(key, val);
        } else if (key == "hurst") {
            cfg.hurst = to_double(key, val);
            have_hurst = true;
        } else if (key == "T") {
            cfg.T = to_double(key, val);
        } else if (key == "L") {
            cfg.L = to_double(key, val);
        } else if (key == "n_space") {
            cfg.n_space = static_cast<int>(to_int(key, val));
        } else if (key == "m_ref") {
            cfg.m_ref = static_cast<int>(to_int(key, val));
        } else if (key == "levels") {
            cfg.levels = to_int_list(key, val);
        } else if (key == "n_paths") {
            cfg.n_paths = static_cast<int>(to_int(key, val));
        } else if (key == "n_runs") {
            cfg.n_runs = static_cast<int>(to_int(key, val));
        } else if (key == "fixed_drift") {
            cfg.fixed_drift = to_bool(key, val);
        } else if (key == "F") {
            if (val != "sin" && val != "cos" && val != "sigmoid")
                throw ConfigError("config: unknown F '" + val + "' (want sin, cos or sigmoid)");
            cfg.F_kind = val;
        } else if (key == "F_amplitude") {
            cfg.F_amplitude = to_double(key, val);
        } else if (key == "F_steepness") {
            cfg.F_steepness = to_double(key, val);
        } else if (key == "F_center") {
            cfg.F_center = to_double(key, val);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(to_int(key, val));
        } else if (key == "pde_abs_tol") {
            cfg.pde.abs_tol = to_double(key, val);
        } else if (key == "pde_rel_tol") {
            cfg.pde.rel_tol = to_double(key, val);
        } else if (key == "pde_store_count") {
            cfg.pde.store_count = static_cast<int>(to_int(key, val));
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    if (!have_beta) throw ConfigError("config: required key 'beta' is missing");
    if (!(cfg.beta > 0.0 && cfg.beta < 0.5))
        throw ConfigError("config: key 'beta' must be in (0, 1/2)");
    if (!have_hurst) cfg.hurst = 1.0 - cfg.beta;
    if (!(cfg.hurst > 0.5 && cfg.hurst < 1.0))
        throw ConfigError("config: key 'hurst' must be in (1/2, 1)");
    if (!(cfg.lambda > 0.0 && cfg.lambda < 0.5 - cfg.beta))
        throw ConfigError("config: key 'lambda' must be in (0, 1/2 - beta)");
    if (!(cfg.T > 0.0)) throw ConfigError("config: key 'T' must be > 0");
    if (!(cfg.L > 0.0)) throw ConfigError("config: key 'L' must be > 0");
    if (cfg.n_space < 2) throw ConfigError("config: key 'n_space' must be >= 2");
    if (cfg.m_ref < 1) throw ConfigError("config: key 'm_ref' must be >= 1");
    if (cfg.n_paths < 1) throw ConfigError("config: key 'n_paths' must be >= 1");
    if (cfg.n_runs < 1) throw ConfigError("config: key 'n_runs' must be >= 1");
    for (int m : cfg.levels)
        if (m < 1 || cfg.m_ref % m != 0)
            throw ConfigError("config: key 'levels' entry " + std::to_string(m) +
                              " does not divide m_ref");
    if (cfg.pde.store_count < 2) throw ConfigError("config: key 'pde_store_count' must be >= 2");
    if (!(cfg.pde.abs_tol > 0.0 && cfg.pde.rel_tol > 0.0))
        throw ConfigError("config: PDE tolerances must be > 0");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_echo(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "beta = " << fmt(cfg.beta) << "\n";
    out << "lambda = " << fmt(cfg.lambda) << "\n";
    out << "hurst = " << fmt(cfg.hurst) << "\n";
    out << "T = " << fmt(cfg.T) << "\n";
    out << "L = " << fmt(cfg.L) << "\n";
    out << "n_space = " << cfg.n_space << "\n";
    out << "m_ref = " << cfg.m_ref << "\n";
    out << "levels = [";
    for (std::size_t i = 0; i < cfg.levels.size(); ++i)
        out << (i ? "," : "") << cfg.levels[i];
    out << "]\n";
    out << "n_paths = " << cfg.n_paths << "\n";
    out << "n_runs = " << cfg.n_runs << "\n";
    out << "fixed_drift = " << (cfg.fixed_drift ? "true" : "false") << "\n";
    out << "F = " << cfg.F_kind << "\n";
    out << "F_amplitude = " << fmt(cfg.F_amplitude) << "\n";
    out << "F_steepness = " << fmt(cfg.F_steepness) << "\n";
    out << "F_center = " << fmt(cfg.F_center) << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "pde_abs_tol = " << fmt(cfg.pde.abs_tol) << "\n";
    out << "pde_rel_tol = " << fmt(cfg.pde.rel_tol) << "\n";
    out << "pde_store_count = " << cfg.pde.store_count << "\n";
    return out.str();
}

}  // namespace mvsde
