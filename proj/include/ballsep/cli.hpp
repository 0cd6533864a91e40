#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ballsep {

// The CLI front end, callable in-process for tests. `args` excludes the
// program name. Returns the process exit code: 0 success, 1 error, 2 when
// the result carries warnings (fallback separator, violated conditions).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ballsep
