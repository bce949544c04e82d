#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "run_config.hpp"

namespace cwlm::cli {

struct Options {
    bool force = false;
    bool plots = false;
    std::optional<std::filesystem::path> out_override;
};

/// Exit codes shared by all commands:
///   0 success, 1 usage/parse error (raised by the caller),
///   2 detector-validity violation, 3 runtime numeric failure.
int cmd_validate(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, const Options& opt, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, const Options& opt, std::ostream& out);

} // namespace cwlm::cli
