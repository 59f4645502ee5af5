#ifndef GRADIM_CLI_HPP
#define GRADIM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gradim {

/// Entry point of the `gradim` tool; args excludes the program name.
/// Returns 0 on success, 1 on a failed case or computation error, 2 on a
/// usage or input error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gradim

#endif
