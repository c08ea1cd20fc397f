#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "domgame/forest.hpp"

namespace domgame {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Line-oriented edge-list format: '#' comments, one "n <count>" header and
// "e <u> <v>" lines with arbitrary non-negative ids. Ids are remapped to
// internal labels 0, 2, 4, ... in first-appearance order.
struct ParsedGraph {
  Forest forest;
  std::vector<long long> original_ids;  // internal label 2*i -> input id

  int label_of(long long id) const;     // -1 when unknown
  long long id_of(int label) const;
};

ParsedGraph parse_graph(const std::string& text);

}  // namespace domgame
