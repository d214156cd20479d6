#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace buildvol::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kDomain = 3,
  kInconsistent = 4,
  kBudget = 5,
};

/// Environment variable holding the default element/vertex budget.
inline constexpr const char* kBudgetEnv = "BUILDVOL_BUDGET";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace buildvol::cli
