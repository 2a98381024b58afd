#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fewn::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitDomain = 3,
  kExitDegenerate = 4,
  kExitNotFound = 5,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search reached its cap without an answer.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out` (or to --out PATH, written atomically); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fewn::cli
