#pragma once

#include <string>
#include <vector>

#include "relkit/perm_group.hpp"

namespace relkit {

// Command-line group spec: a catalog or family name ("M11@11", "D10@5",
// "S6"), a ';'-separated generator list in cycle notation, or a wreath
// expression "wr(spec, spec)".
PermutationGroup parse_group_spec(const std::string& spec);

// Runs one relkit command.  Fills `out` with the JSON report (or the help
// text) and returns the process exit code: 0 success, 1 failed computation,
// 2 verify-paper violation, 3 cap exceeded, 4 parse or usage error.
int run_cli(const std::vector<std::string>& args, std::string& out);

}  // namespace relkit
