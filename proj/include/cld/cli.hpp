#pragma once

#include <ostream>

namespace cld {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitScenario = 2,
  kExitRuntime = 3,
};

/// Entry point of the cldsim tool: run | validate | access-report.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cld
