#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lotl {

// The lotl command line: parse | compile | eval | oracle | run | sat |
// selftest. Takes the arguments after the program name. Returns 0 for a
// definitive answer; errors map to stable nonzero codes (usage/parse 2,
// shape 3, no run 4, resource exhausted or UNKNOWN 5, io 6).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lotl
