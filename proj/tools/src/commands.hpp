#pragma once

#include <string>

#include "config.hpp"

namespace glin::tool {

struct CliOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

// Exit codes: 0 ok, 1 certificate-failed, 2 max-iter, 3 diverged,
// 4 singular operator, 64 config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCertificateFailed = 1;
inline constexpr int kExitMaxIterations = 2;
inline constexpr int kExitDiverged = 3;
inline constexpr int kExitSingular = 4;
inline constexpr int kExitConfig = 64;

int cmd_solve(const CliOptions& cli);
int cmd_certify(const CliOptions& cli);
int cmd_compare(const CliOptions& cli);
int cmd_sweep(const CliOptions& cli);

}  // namespace glin::tool
