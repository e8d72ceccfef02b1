#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "interp/report.hpp"

namespace interp {

/// Exit codes of the command line tool.
enum ExitCode : int { kExitPass = 0, kExitViolation = 1, kExitConfig = 2 };

struct RunConfig {
    std::string command; ///< norms, kprofile, verify-theorem, verify-corollary, taylor, proof-walkthrough
    std::filesystem::path config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::vector<double>> thetas;
    std::optional<std::filesystem::path> out;
    std::optional<Format> format;
    std::optional<double> force_M0;
    unsigned threads = 0; ///< 0: hardware concurrency
};

const std::vector<std::string>& cli_commands();

/// Runs one command. Reports go to `out` (or to run.out when set); the
/// one-line summary and error messages go to `log`.
int run(const RunConfig& run, std::ostream& out, std::ostream& log);

/// Parses argv and calls run(). Usage errors return kExitConfig.
int cli_main(int argc, char** argv);

} // namespace interp
