#ifndef GW_CLI_HPP
#define GW_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gw {

/// Exit codes: 0 success / query answered, 1 check failure, 2 parse or
/// validation error (including usage errors).
int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace gw

#endif
