#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "interp/verify.hpp"

namespace interp {

/// Invalid or unreadable experiment configuration. The message names the field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An experiment plus the inputs used by the table-producing commands.
struct LoadedConfig {
    ExperimentConfig experiment;
    std::vector<CVector> points{}; ///< optional explicit x vectors
    std::vector<double> t_grid{};  ///< optional K-profile grid
    int n_max = -1;              ///< Taylor order limit; -1 means the map degree + 2
};

/// JSON document:
///   {
///     "couple_X": {"p": 1, "X0": SPACE, "X1": SPACE, "c": 2.0},
///     "couple_Y": {...},                  (defaults to couple_X)
///     "map": "conv(x,x)", "r": 1.0, "thetas": [0.5],
///     "q": 2, "n_samples": 1000, "seed": 42, "tolerance": 1e-9,
///     "points": [[1, [0, 2]], ...], "t_grid": [...], "n_max": 4
///   }
/// SPACE is {"weights": [...]} or {"family": "poly", "s": 1, "N": 64} or
/// {"family": "exp", "a": 0.1, "N": 64}, with optional "p" and "scale".
/// Complex numbers are written as a number or a [re, im] pair.
LoadedConfig parse_config(const std::string& text);
LoadedConfig load_config(const std::filesystem::path& path);

} // namespace interp
