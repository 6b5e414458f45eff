#include "dsi/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dsi/error.hpp"

namespace dsi {

namespace {

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::string normalize_key(std::string key) {
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
}

template <class Int>
Int parse_integer(const std::string& key, const std::string& text) {
    Int value{};
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::ConfigError, "key '" + key + "': not an integer: '" + text + "'");
    }
    return value;
}

double parse_real(const std::string& key, const std::string& text) {
    double value = 0.0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::ConfigError, "key '" + key + "': not a number: '" + text + "'");
    }
    return value;
}

}  // namespace

Command parse_command(const std::string& name) {
    if (name == "simulate") return Command::Simulate;
    if (name == "covariance") return Command::Covariance;
    if (name == "spectrum") return Command::Spectrum;
    if (name == "invert") return Command::Invert;
    if (name == "verify") return Command::Verify;
    throw Error(ErrorCode::ConfigError, "unknown command '" + name + "'");
}

std::string_view command_name(Command command) {
    switch (command) {
        case Command::Simulate: return "simulate";
        case Command::Covariance: return "covariance";
        case Command::Spectrum: return "spectrum";
        case Command::Invert: return "invert";
        case Command::Verify: return "verify";
    }
    return "unknown";
}

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = {
        "H",     "alpha",        "T",   "q",          "s",      "R0",
        "R1",    "paths",        "seed", "tau_max",   "omega_points",
        "inversion_points",       "tol", "method",    "kappa_min",
        "kappa_max",              "out",
    };
    return keys;
}

KeyValues parse_config_text(const std::string& text) {
    KeyValues values;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ConfigError,
                        "line " + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = normalize_key(trim(stripped.substr(0, eq)));
        if (key.empty()) {
            throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": empty key");
        }
        if (values.count(key) != 0) {
            throw Error(ErrorCode::ConfigError, "duplicate key '" + key + "'");
        }
        values[key] = trim(stripped.substr(eq + 1));
    }
    return values;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot read config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

std::vector<double> parse_double_list(const std::string& key, const std::string& text) {
    std::vector<double> values;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        values.push_back(parse_real(key, trim(item)));
    }
    if (values.empty() || (!text.empty() && text.back() == ',')) {
        throw Error(ErrorCode::ConfigError, "key '" + key + "': malformed list '" + text + "'");
    }
    return values;
}

RunConfig make_run_config(Command command, const KeyValues& file, const KeyValues& overrides) {
    KeyValues merged;
    for (const auto* source : {&file, &overrides}) {
        for (const auto& [raw_key, value] : *source) {
            merged[normalize_key(raw_key)] = value;
        }
    }
    const auto& known = known_config_keys();
    for (const auto& [key, value] : merged) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw Error(ErrorCode::ConfigError, "unknown key '" + key + "'");
        }
    }
    const auto require = [&](const std::string& key) -> const std::string& {
        const auto it = merged.find(key);
        if (it == merged.end() || it->second.empty()) {
            throw Error(ErrorCode::ConfigError, "missing required key '" + key + "'");
        }
        return it->second;
    };
    const auto find = [&](const std::string& key) -> const std::string* {
        const auto it = merged.find(key);
        return it == merged.end() ? nullptr : &it->second;
    };

    RunConfig config;
    config.command = command;
    config.scheme.H = parse_real("H", require("H"));
    config.scheme.alpha = parse_real("alpha", require("alpha"));
    config.scheme.T = parse_integer<int>("T", require("T"));
    config.scheme.s = parse_double_list("s", require("s"));
    config.scheme.q = static_cast<int>(config.scheme.s.size());
    if (const auto* q = find("q")) {
        const int declared = parse_integer<int>("q", *q);
        if (declared != config.scheme.q) {
            throw Error(ErrorCode::ConfigError, "q=" + *q + " does not match the " +
                                                    std::to_string(config.scheme.q) +
                                                    " entries of s");
        }
    }
    if (const auto* v = find("R0")) config.R0 = parse_double_list("R0", *v);
    if (const auto* v = find("R1")) config.R1 = parse_double_list("R1", *v);
    if (config.R0.has_value() != config.R1.has_value()) {
        throw Error(ErrorCode::ConfigError, "R0 and R1 must be given together");
    }
    if (const auto* v = find("paths")) config.paths = parse_integer<std::size_t>("paths", *v);
    if (const auto* v = find("seed")) config.seed = parse_integer<std::uint64_t>("seed", *v);
    if (const auto* v = find("tau_max")) config.tau_max = parse_integer<std::int64_t>("tau_max", *v);
    if (const auto* v = find("omega_points")) {
        config.omega_points = parse_integer<std::size_t>("omega_points", *v);
    }
    if (const auto* v = find("inversion_points")) {
        config.inversion_points = parse_integer<std::size_t>("inversion_points", *v);
    }
    if (const auto* v = find("tol")) config.tol = parse_real("tol", *v);
    if (const auto* v = find("method")) config.method = *v;
    if (const auto* v = find("kappa_min")) {
        config.kappa_min = parse_integer<std::int64_t>("kappa_min", *v);
    }
    if (const auto* v = find("kappa_max")) {
        config.kappa_max = parse_integer<std::int64_t>("kappa_max", *v);
    }
    if (const auto* v = find("out")) config.out = *v;

    if (config.paths < 1) throw Error(ErrorCode::ConfigError, "paths must be >= 1");
    if (config.tau_max < 0) throw Error(ErrorCode::ConfigError, "tau_max must be >= 0");
    if (config.omega_points < 1 || config.inversion_points < 1) {
        throw Error(ErrorCode::ConfigError, "omega_points and inversion_points must be >= 1");
    }
    if (!(config.tol > 0.0)) throw Error(ErrorCode::ConfigError, "tol must be > 0");
    if (config.method != "markov" && config.method != "series" && config.method != "sbm") {
        throw Error(ErrorCode::ConfigError,
                    "method must be one of markov, series, sbm (got '" + config.method + "')");
    }
    if (config.method == "sbm" && config.R0) {
        throw Error(ErrorCode::ConfigError, "method=sbm cannot be combined with R0/R1");
    }
    return config;
}

}  // namespace dsi
