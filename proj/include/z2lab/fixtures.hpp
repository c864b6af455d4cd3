#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "z2lab/json_io.hpp"

namespace z2lab {

/// Directory holding the shipped example graphs: $Z2LAB_FIXTURES when set,
/// otherwise ./fixtures.
inline std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("Z2LAB_FIXTURES")) return env;
  return "fixtures";
}

inline BiGraph load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return bigraph_from_json_string(buf.str());
}

/// Load a shipped fixture by bare name (e.g. "thm2_2") or a path to any graph
/// JSON file.
inline BiGraph load_fixture(const std::string& name) {
  std::filesystem::path p(name);
  if (!p.has_extension() && p.filename() == p) p = fixture_dir() / (name + ".json");
  return load_graph_file(p);
}

}  // namespace z2lab
