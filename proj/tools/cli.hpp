#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ahp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInternal = 2;

/// Entry point shared by the `ahp` binary and the tests. Data goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ahp::cli
