#pragma once

#include <iosfwd>

namespace uavcov::cli {

/// Entry point of the `uavcov` tool. Returns 0 on success, 1 when an input
/// or the instance is invalid, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uavcov::cli
