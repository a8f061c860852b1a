#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bldg {

/// 0 success, 1 failed checks, 2 usage or input errors
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace bldg
