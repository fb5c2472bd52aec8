#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hilbert::cli {

/// Exit codes: 0 success, 1 validation or usage error, 2 numeric failure.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hilbert::cli
