#ifndef NEWTONSCOPE_SYSTEMFILE_HPP
#define NEWTONSCOPE_SYSTEMFILE_HPP

#include <optional>
#include <string>
#include <vector>

#include "newtonscope/polynomial.hpp"

namespace newtonscope {

/// Line-oriented input format:
///   vars: x y t
///   eq: x*y*t-(x-y-t)^2+3*x+t
///   eq: x+y^2+t^2
///   project: t
///   seed: 42
/// Blank lines and '#' comments are ignored.
struct SystemFile {
  std::vector<std::string> variables;
  std::vector<std::string> equations;
  std::vector<std::string> projectNames;  // dropped variables
  std::optional<uint64_t> seed;

  PolySystem parseSystem() const;
  std::vector<int> dropIndices() const;
};

SystemFile parseSystemFile(const std::string& text);
SystemFile loadSystemFile(const std::string& path);

}  // namespace newtonscope

#endif
