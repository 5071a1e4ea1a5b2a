#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topotess::cli {

/// Exit codes: 0 success, 1 configuration error, 2 data error, 3 numeric failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace topotess::cli
