#pragma once

#include <splice/splice.hpp>

#include <fstream>
#include <string>

inline splice::ResolutionGraph load_data(const std::string& name) {
  const std::string path = std::string(TEST_DATA_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing test data file: " + path);
  return splice::parse_graph(in);
}

inline splice::Rat q(long long num, long long den) {
  return splice::Rat(num, den);
}

template <class G>
std::size_t idx(const G& g, const std::string& id) {
  const auto i = g.index_of(id);
  if (!i) throw std::runtime_error("no vertex named " + id);
  return *i;
}
