#pragma once

// Library side of the command-line subcommands, kept free of argument
// parsing so tests can call it directly.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rbd {

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// "[3,2,2,2,2,2,10,2]  lens order 225" for (15, 7).
std::string chain_line(std::int64_t p, std::int64_t q);

/// "class T; (d,n,a)=(1,2,1); C(2,1)" for [4].
std::string tclass_line(const std::vector<std::int64_t>& bs);

/// One chain per line; chains reduced to the base [3,3] carry a trailing " *".
std::vector<std::string> enum_t_lines(std::size_t max_len, std::int64_t max_b);

/// Runs each script, prints its report to out and diagnostics to err, and
/// optionally writes the JSON report(s) to json_path.
int verify_files(const std::vector<std::string>& paths, const std::optional<std::string>& json_path,
                 std::ostream& out, std::ostream& err, bool color);

} // namespace rbd
