#ifndef NEWTONSCOPE_CLI_HPP
#define NEWTONSCOPE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace newtonscope {

/// Command-line surface: witness / oracle / polytope / tropical / traces.
/// Returns the process exit code: 0 decisive, 2 inconclusive, 1 error.
int runCli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace newtonscope

#endif
