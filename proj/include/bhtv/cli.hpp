#pragma once

// Command-line front end of the bhrestore tool.
//
// Exit codes: 0 success, 1 solver divergence, 2 usage error, 3 I/O error.

#include <iosfwd>
#include <string>
#include <vector>

namespace bhtv::cli {

enum ExitCode : int { Ok = 0, Diverged = 1, Usage = 2, Io = 3 };

/// `args` excludes the program name. Results go to files named by flags (and,
/// for `metrics`, to `out`); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace bhtv::cli
