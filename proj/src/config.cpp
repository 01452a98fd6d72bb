#include "rsp/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "rsp/harness.hpp"

namespace rsp {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& why) {
    throw ConfigError(field + ": " + why);
}

std::vector<double> number_list(const json& j, const std::string& field) {
    if (!j.is_array()) {
        bad(field, "expected an array of numbers");
    }
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) {
            bad(field, "expected an array of numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<int> parse_bitstring(const json& j, const std::string& field, int m) {
    if (!j.is_string()) {
        bad(field, "expected a bit string like \"01\"");
    }
    const std::string s = j.get<std::string>();
    if (s.size() != static_cast<std::size_t>(m)) {
        bad(field, "expected " + std::to_string(m) + " bits, got " + std::to_string(s.size()));
    }
    std::vector<int> bits;
    for (char ch : s) {
        if (ch != '0' && ch != '1') {
            bad(field, "bits must be 0 or 1");
        }
        bits.push_back(ch - '0');
    }
    return bits;
}

std::size_t default_resolution(int m) {
    return m >= 3 ? 20 : 50;
}

bool needs_spec(Mode mode) {
    return mode == Mode::enumerate || mode == Mode::sample || mode == Mode::trace;
}

}  // namespace

Mode mode_from_name(const std::string& name) {
    if (name == "verify") return Mode::verify;
    if (name == "enumerate") return Mode::enumerate;
    if (name == "sample") return Mode::sample;
    if (name == "sweep") return Mode::sweep;
    if (name == "table2") return Mode::table2;
    if (name == "trace") return Mode::trace;
    throw ConfigError("mode: unknown mode '" + name + "'");
}

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::verify: return "verify";
        case Mode::enumerate: return "enumerate";
        case Mode::sample: return "sample";
        case Mode::sweep: return "sweep";
        case Mode::table2: return "table2";
        case Mode::trace: return "trace";
    }
    return "?";
}

DesiredStateSpec ExperimentConfig::desired() const {
    try {
        return DesiredStateSpec(m, alphas, etas);
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("alphas/etas: ") + e.what());
    }
}

ChannelSpec ExperimentConfig::channels() const {
    try {
        return ChannelSpec::from_x(m, channel_x);
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("channel_x: ") + e.what());
    }
}

ExperimentConfig parse_config_text(Mode mode, const std::string& json_text,
                                   const ConfigOverrides& overrides) {
    json doc;
    if (json_text.empty()) {
        doc = json::object();
    } else {
        doc = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
        if (doc.is_discarded()) {
            throw ConfigError("config: not valid JSON");
        }
        if (!doc.is_object()) {
            throw ConfigError("config: top level must be a JSON object");
        }
    }

    ExperimentConfig cfg;
    cfg.mode = mode;  // the subcommand overrides any "mode" field

    if (doc.contains("mode") && !doc["mode"].is_string()) {
        bad("mode", "expected a string");
    }
    if (doc.contains("m")) {
        if (!doc["m"].is_number_integer() || doc["m"].get<int>() < 1) {
            bad("m", "expected a positive integer");
        }
        cfg.m = doc["m"].get<int>();
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
            bad("seed", "expected an integer");
        }
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("trials")) {
        if (!doc["trials"].is_number_integer() || doc["trials"].get<long>() < 1) {
            bad("trials", "expected a positive integer");
        }
        cfg.trials = doc["trials"].get<long>();
    }
    if (doc.contains("count")) {
        if (!doc["count"].is_number_integer() || doc["count"].get<int>() < 1) {
            bad("count", "expected a positive integer");
        }
        cfg.verify_count = doc["count"].get<int>();
    }
    if (doc.contains("output_path")) {
        if (!doc["output_path"].is_string()) {
            bad("output_path", "expected a string");
        }
        cfg.output_path = doc["output_path"].get<std::string>();
    }
    if (doc.contains("format")) {
        if (!doc["format"].is_string()) {
            bad("format", "expected \"json\" or \"csv\"");
        }
        cfg.format = doc["format"].get<std::string>();
    }

    if (needs_spec(mode) || mode == Mode::sweep) {
        if (cfg.m < 1) {
            bad("m", "required for mode " + mode_name(mode));
        }
    }

    const std::size_t l = cfg.m >= 1 ? (std::size_t{1} << cfg.m) : 0;
    if (needs_spec(mode)) {
        if (!doc.contains("alphas")) {
            bad("alphas", "required for mode " + mode_name(mode));
        }
        cfg.alphas = number_list(doc["alphas"], "alphas");
        if (cfg.alphas.size() != l) {
            bad("alphas", "expected " + std::to_string(l) + " values for m=" +
                              std::to_string(cfg.m) + ", got " +
                              std::to_string(cfg.alphas.size()));
        }
        if (doc.contains("etas")) {
            cfg.etas = number_list(doc["etas"], "etas");
            if (cfg.etas.size() != l) {
                bad("etas", "expected " + std::to_string(l) + " values for m=" +
                                std::to_string(cfg.m));
            }
        } else {
            cfg.etas.assign(l, 0.0);
        }
        if (!doc.contains("channel_x")) {
            bad("channel_x", "required for mode " + mode_name(mode));
        }
        cfg.channel_x = number_list(doc["channel_x"], "channel_x");
        if (cfg.channel_x.size() != static_cast<std::size_t>(cfg.m)) {
            bad("channel_x", "expected " + std::to_string(cfg.m) + " values");
        }

        if (overrides.normalize) {
            double norm2 = 0.0;
            for (double a : cfg.alphas) {
                norm2 += a * a;
            }
            if (norm2 <= 0.0) {
                bad("alphas", "cannot normalize an all-zero magnitude list");
            }
            const double scale = 1.0 / std::sqrt(norm2);
            for (double& a : cfg.alphas) {
                a *= scale;
            }
        }
    }

    if (mode == Mode::sweep) {
        if (doc.contains("grid")) {
            const json& g = doc["grid"];
            if (g.is_object() && g.contains("axes")) {
                if (!g["axes"].is_array() ||
                    g["axes"].size() != static_cast<std::size_t>(cfg.m)) {
                    bad("grid.axes", "expected " + std::to_string(cfg.m) + " axes");
                }
                for (std::size_t k = 0; k < g["axes"].size(); ++k) {
                    cfg.grid.push_back(
                        number_list(g["axes"][k], "grid.axes[" + std::to_string(k) + "]"));
                }
            } else if (g.is_object() && g.contains("resolution")) {
                if (!g["resolution"].is_number_integer() || g["resolution"].get<int>() < 2) {
                    bad("grid.resolution", "expected an integer >= 2");
                }
                cfg.grid.assign(cfg.m, uniform_axis(g["resolution"].get<std::size_t>()));
            } else {
                bad("grid", "expected an object with \"axes\" or \"resolution\"");
            }
        } else {
            cfg.grid.assign(cfg.m, uniform_axis(default_resolution(cfg.m)));
        }
    }

    if (mode == Mode::trace) {
        if (!doc.contains("forced_outcome")) {
            bad("forced_outcome", "required for mode trace");
        }
        const json& f = doc["forced_outcome"];
        if (!f.is_object() || !f.contains("i") || !f.contains("j")) {
            bad("forced_outcome", "expected an object with \"i\" and \"j\" bit strings");
        }
        cfg.forced_outcome = {parse_bitstring(f["i"], "forced_outcome.i", cfg.m),
                              parse_bitstring(f["j"], "forced_outcome.j", cfg.m)};
    }

    if (overrides.seed) {
        cfg.seed = *overrides.seed;
    }
    if (overrides.trials) {
        if (*overrides.trials < 1) {
            bad("trials", "expected a positive integer");
        }
        cfg.trials = *overrides.trials;
    }
    if (overrides.output_path) {
        cfg.output_path = *overrides.output_path;
    }
    if (overrides.format) {
        cfg.format = *overrides.format;
    }
    if (cfg.format.empty()) {
        cfg.format = (mode == Mode::sweep) ? "csv" : "json";
    }
    if (cfg.format != "json" && cfg.format != "csv") {
        bad("format", "expected \"json\" or \"csv\", got \"" + cfg.format + "\"");
    }

    // Surface spec-level problems (normalization, coefficient range) now so
    // the caller sees them as config errors with the offending field.
    if (needs_spec(mode)) {
        cfg.desired();
        cfg.channels();
    }
    return cfg;
}

ExperimentConfig parse_config(Mode mode, const std::string& config_path,
                              const ConfigOverrides& overrides) {
    if (config_path.empty()) {
        if (needs_spec(mode) || mode == Mode::sweep) {
            throw ConfigError("config: mode " + mode_name(mode) + " requires --config");
        }
        return parse_config_text(mode, "", overrides);
    }
    std::ifstream in(config_path);
    if (!in) {
        throw ConfigError("config: cannot open '" + config_path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(mode, buf.str(), overrides);
}

}  // namespace rsp
