#include "newtonscope/systemfile.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace newtonscope {

PolySystem SystemFile::parseSystem() const {
  if (variables.empty()) throw std::invalid_argument("system file declares no variables");
  std::vector<Polynomial> polys;
  polys.reserve(equations.size());
  for (size_t i = 0; i < equations.size(); ++i) {
    try {
      polys.push_back(parsePolynomial(equations[i], variables));
    } catch (const ParseError& err) {
      throw std::invalid_argument("equation " + std::to_string(i + 1) + ": " + err.what());
    }
  }
  return PolySystem(variables, std::move(polys));
}

std::vector<int> SystemFile::dropIndices() const {
  std::vector<int> drop;
  for (const auto& name : projectNames) {
    auto it = std::find(variables.begin(), variables.end(), name);
    if (it == variables.end())
      throw std::invalid_argument("projected variable '" + name + "' is not declared");
    drop.push_back(static_cast<int>(it - variables.begin()));
  }
  return drop;
}

SystemFile parseSystemFile(const std::string& text) {
  SystemFile file;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  auto tokens = [](const std::string& s) {
    std::istringstream ts(s);
    std::vector<std::string> out;
    std::string tok;
    while (ts >> tok) out.push_back(tok);
    return out;
  };
  while (std::getline(in, line)) {
    ++lineNo;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineNo) + ": expected 'key: value'");
    std::string key = line.substr(first, colon - first);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string value = line.substr(colon + 1);

    if (key == "vars") {
      file.variables = tokens(value);
    } else if (key == "eq") {
      auto start = value.find_first_not_of(" \t");
      auto stop = value.find_last_not_of(" \t\r\n");
      if (start == std::string::npos)
        throw std::invalid_argument("line " + std::to_string(lineNo) + ": empty equation");
      file.equations.push_back(value.substr(start, stop - start + 1));
    } else if (key == "project") {
      for (auto& name : tokens(value)) file.projectNames.push_back(name);
    } else if (key == "seed") {
      auto toks = tokens(value);
      if (toks.size() != 1)
        throw std::invalid_argument("line " + std::to_string(lineNo) + ": seed expects one integer");
      file.seed = std::stoull(toks[0]);
    } else {
      throw std::invalid_argument("line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
    }
  }
  if (file.variables.empty()) throw std::invalid_argument("system file declares no variables");
  if (file.equations.empty()) throw std::invalid_argument("system file declares no equations");
  // validate now so errors carry context
  file.parseSystem();
  file.dropIndices();
  return file;
}

SystemFile loadSystemFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open system file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parseSystemFile(buf.str());
}

}  // namespace newtonscope
