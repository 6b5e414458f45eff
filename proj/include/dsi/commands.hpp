#pragma once

#include <ostream>

#include "dsi/config.hpp"

namespace dsi {

enum ExitStatus : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitConfigError = 2,
    kExitModelUnstable = 3,
    kExitIoError = 4,
};

/// Dispatches one command; output goes to config.out (a file, or a directory
/// for verify) or to `out` when config.out is empty. Errors are reported on
/// `err` and mapped to exit statuses.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dsi
