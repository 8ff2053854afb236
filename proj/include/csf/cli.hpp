#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csf {

/// Entry point of the `csflab` command line tool. `args` excludes the program name. Returns the
/// exit status (0 ok, 2 config, 3 numerical, 4 check failure); on failure the last line written
/// to `err` is `ERROR <status>: <message>`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csf
