#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eggcli {

/// Parses and runs one CLI invocation (arguments exclude the program name).
/// Payload goes to `out` unless an --output path is given; diagnostics go to
/// `err`. Returns the process exit code:
///   classify: 0 = LuQiKeng, 1 = NotLuQiKeng, 2 = Borderline;
///   all subcommands: 64 usage error, 65 data/validation error,
///   70 internal numeric failure (and a failed `verify`).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace eggcli
