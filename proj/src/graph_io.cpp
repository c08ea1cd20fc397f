#include "domgame/graph_io.hpp"

#include <sstream>

namespace domgame {

int ParsedGraph::label_of(long long id) const {
  for (size_t i = 0; i < original_ids.size(); ++i)
    if (original_ids[i] == id) return static_cast<int>(2 * i);
  return -1;
}

long long ParsedGraph::id_of(int label) const {
  size_t i = static_cast<size_t>(label) / 2;
  if (label < 0 || label % 2 != 0 || i >= original_ids.size())
    throw std::invalid_argument("id_of: unknown internal label");
  return original_ids[i];
}

ParsedGraph parse_graph(const std::string& text) {
  ParsedGraph out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  long long declared = -1;
  std::vector<std::pair<int, int>> edges;

  auto intern = [&](long long id, int line) {
    int known = out.label_of(id);
    if (known >= 0) return known;
    if (out.original_ids.size() >= 24) throw ParseError(line, "too many vertices");
    out.original_ids.push_back(id);
    return static_cast<int>(2 * (out.original_ids.size() - 1));
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "n") {
      long long count;
      if (!(ls >> count) || count < 0) throw ParseError(lineno, "malformed vertex count");
      if (declared >= 0) throw ParseError(lineno, "duplicate vertex count");
      declared = count;
    } else if (tag == "e") {
      long long a, b;
      if (!(ls >> a >> b) || a < 0 || b < 0) throw ParseError(lineno, "malformed edge");
      if (a == b) throw ParseError(lineno, "self-loop");
      int u = intern(a, lineno);
      int v = intern(b, lineno);
      if (out.forest.has_edge(u, v)) throw ParseError(lineno, "duplicate edge");
      out.forest.add_vertex(u);
      out.forest.add_vertex(v);
      out.forest.add_edge(u, v);
      if (!out.forest.is_acyclic()) throw ParseError(lineno, "edge closes a cycle");
    } else {
      throw ParseError(lineno, "unknown directive '" + tag + "'");
    }
    std::string trailing;
    if (ls >> trailing) throw ParseError(lineno, "trailing tokens");
  }

  if (declared < 0) throw ParseError(lineno, "missing 'n <count>' header");
  long long seen = static_cast<long long>(out.original_ids.size());
  if (seen != declared) {
    // Any undeclared vertex would have no edges, hence be isolated.
    throw ParseError(lineno, seen < declared
                                 ? "declared count implies isolated vertices"
                                 : "more vertices than declared");
  }
  if (!out.forest.is_isolate_free()) throw ParseError(lineno, "isolated vertex");
  return out;
}

}  // namespace domgame
