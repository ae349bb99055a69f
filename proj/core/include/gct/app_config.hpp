#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gct/hydrosim.hpp"
#include "gct/sonfis.hpp"
#include "gct/sorst.hpp"

namespace gct {

struct SplitSpec {
    std::size_t n_train = 150;
    std::size_t n_test = 19;
    std::uint64_t seed = 7;
    bool stratify = false;
};

/// Resolved run configuration: the flattened key=value file maps one key
/// to one field here; unknown keys are rejected.
struct AppConfig {
    CycloneSimConfig sim;
    SplitSpec split;
    SomTrainConfig som;
    NfisTrainConfig nfis;
    SonfisConfig sonfis;
    SorstConfig sorst;

    /// Pushes the shared som/nfis schedules into both controllers.
    void finalize();

    /// Every key with its resolved value, in file order, for audit headers.
    std::vector<std::string> resolved_lines() const;
};

/// Parses a plain-text `key=value` config file ('#' starts a comment).
/// Throws ConfigError naming the offending key on unknown keys or
/// unparsable values.
AppConfig load_app_config(const std::string& path);

/// Applies defaults only (no file).
AppConfig default_app_config();

}  // namespace gct
