#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsi/core.hpp"

namespace dsi {

using KeyValues = std::map<std::string, std::string>;

enum class Command { Simulate, Covariance, Spectrum, Invert, Verify };

Command parse_command(const std::string& name);
std::string_view command_name(Command command);

/// Every key a config file or flag may set.
const std::vector<std::string>& known_config_keys();

/// Fully validated run settings.
struct RunConfig {
    Command command = Command::Verify;
    SchemeParams scheme;
    std::optional<std::vector<double>> R0;
    std::optional<std::vector<double>> R1;
    std::size_t paths = 20000;
    std::uint64_t seed = 42;
    std::int64_t tau_max = 4;
    std::size_t omega_points = 256;
    std::size_t inversion_points = 16384;
    double tol = 1e-10;
    std::string method = "markov";
    std::int64_t kappa_min = 0;
    std::optional<std::int64_t> kappa_max;
    std::string out;
};

/// Parses flat `key = value` lines. Blank lines and lines starting with '#'
/// are ignored. Keys are normalized (dashes become underscores).
KeyValues parse_config_text(const std::string& text);

KeyValues read_config_file(const std::string& path);

/// Builds a RunConfig; `overrides` wins over `file`. Unknown keys, malformed
/// numbers and missing scheme keys raise ConfigError.
RunConfig make_run_config(Command command, const KeyValues& file, const KeyValues& overrides);

std::vector<double> parse_double_list(const std::string& key, const std::string& text);

}  // namespace dsi
