#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsp/errors.hpp"
#include "rsp/protocol.hpp"

namespace rsp {

// Schema violation in a run configuration; the CLI maps this to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class Mode { verify, enumerate, sample, sweep, table2, trace };

Mode mode_from_name(const std::string& name);
std::string mode_name(Mode mode);

// One experiment: a JSON document plus command-line overrides.
struct ExperimentConfig {
    Mode mode = Mode::verify;
    int m = 0;
    std::vector<double> alphas;
    std::vector<double> etas;
    std::vector<double> channel_x;
    long trials = 10000;
    std::uint64_t seed = 1;
    std::vector<std::vector<double>> grid;
    std::optional<std::pair<std::vector<int>, std::vector<int>>> forced_outcome;
    std::string output_path;    // empty = stdout
    std::string format;         // "json" or "csv"
    int verify_count = 100;

    DesiredStateSpec desired() const;
    ChannelSpec channels() const;
};

struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<std::string> output_path;
    std::optional<std::string> format;
    bool normalize = false;
};

// Parses and validates a config for the given mode. `config_path` may be
// empty for the modes that need no spec (verify, table2).
ExperimentConfig parse_config(Mode mode, const std::string& config_path,
                              const ConfigOverrides& overrides);
ExperimentConfig parse_config_text(Mode mode, const std::string& json_text,
                                   const ConfigOverrides& overrides);

}  // namespace rsp
