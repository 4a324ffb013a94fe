#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greedy/properties.hpp"

namespace greedy {

// Exit codes of the experiment runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitIo = 4;

struct RunOptions {
    std::optional<std::uint64_t> seed;  // overrides the config seed
    std::string out_dir = "out";
    bool force = false;
    std::optional<int> workers;
    std::vector<std::string> inputs;  // emit-plotdata source files
};

// Flat key = value configuration; '#' starts a comment. Unknown keys are hard
// errors at validation time.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Runs one experiment. `experiment` may be empty when the config names one;
// when both are present they must agree. Returns a process exit code and
// writes artifacts plus a run manifest under options.out_dir.
int run_experiment(const std::string& experiment, const std::string& config_text,
                   const RunOptions& options, std::ostream& out, std::ostream& err);

// The default verification suite (also the `verify` subcommand body).
std::vector<CheckReport> default_verify_suite(std::uint64_t seed, int workers);

// FNV-1a hash of the configuration text, recorded in the manifest.
std::uint64_t fnv1a64(const std::string& text);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace greedy
