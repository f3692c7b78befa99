#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace darboux::cli {

inline constexpr int kSchemaVersion = 1;

/// Runs one command line; returns 0 on success, 1 when a verification or
/// expectation fails, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace darboux::cli
