#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "truthdiscover/baselines.hpp"
#include "truthdiscover/engine.hpp"
#include "truthdiscover/prior.hpp"
#include "truthdiscover/source.hpp"
#include "truthdiscover/synth.hpp"

namespace truthdiscover {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every tunable of one CLI invocation.
struct RunConfig {
    PriorConfig prior;
    EngineConfig engine;
    TruthFinderConfig truthfinder;
    SynthConfig synth;

    std::vector<std::string> inputs;
    SourcePolicy policy = SourcePolicy::Host;
    std::string alignment;
    std::string out = ".";
    std::string gold;
    bool strict = false;
    std::size_t seeds = 10;
    std::string method = "all";

    RunConfig();
};

/// Sets one `section.key` from its textual value. Throws ConfigError for
/// unknown keys and unparsable values.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);

/// Every key accepted by set_config_value, as `section.key`.
std::vector<std::string> config_keys();

/// INI text: `[section]` headers and `key = value` lines; `#` and `;` start
/// comments; values may be wrapped in double quotes. `run.input` takes a
/// whitespace-separated list of paths.
void apply_config_text(RunConfig& cfg, std::string_view text);
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

}  // namespace truthdiscover
