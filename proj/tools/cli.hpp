#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hrql {

// Exit codes: 0 found / stable, 1 decided NO / unstable, 2 error.
int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace hrql
