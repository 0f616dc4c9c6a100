#include "extremal/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace extremal {

SimpleGraph::SimpleGraph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 1 || n > 255) throw ParseError("vertex count out of range: " + std::to_string(n));
  adj_.assign(static_cast<size_t>(n) * n, 0);
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw ParseError("edge endpoint out of range: " + std::to_string(i) + "-" + std::to_string(j));
    if (i == j) throw LoopError("loop at vertex " + std::to_string(i));
    adj_[static_cast<size_t>(i) * n + j] = 1;
    adj_[static_cast<size_t>(j) * n + i] = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adjacent(i, j)) edges_.emplace_back(i, j);

  // connectivity (n = 1 is trivially connected)
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w)
      if (adjacent(v, w) && !seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  if (count != n) throw DisconnectedError("graph is not connected");
}

std::vector<std::pair<int, int>> SimpleGraph::nonedges() const {
  std::vector<std::pair<int, int>> r;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (!adjacent(i, j)) r.emplace_back(i, j);
  return r;
}

std::string SimpleGraph::serialize() const {
  std::ostringstream os;
  os << n_ << "\n";
  for (size_t k = 0; k < edges_.size(); ++k) {
    if (k) os << ",";
    os << edges_[k].first << "-" << edges_[k].second;
  }
  return os.str();
}

namespace {

std::vector<std::pair<int, int>> parse_edges_str(const std::string& s, std::vector<std::string>* warnings) {
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) {
    // trim
    size_t a = tok.find_first_not_of(" \t\r\n");
    size_t b = tok.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) continue;
    tok = tok.substr(a, b - a + 1);
    size_t dash = tok.find('-');
    if (dash == std::string::npos) throw ParseError("malformed edge token: '" + tok + "'");
    int i, j;
    try {
      i = std::stoi(tok.substr(0, dash));
      j = std::stoi(tok.substr(dash + 1));
    } catch (const std::exception&) {
      throw ParseError("malformed edge token: '" + tok + "'");
    }
    auto e = std::minmax(i, j);
    if (i != j && !seen.insert({e.first, e.second}).second) {
      if (warnings) warnings->push_back("duplicate edge " + tok);
      continue;
    }
    edges.emplace_back(i, j);
  }
  return edges;
}

}  // namespace

SimpleGraph parse_graph(const std::string& text, std::vector<std::string>* warnings) {
  std::istringstream is(text);
  std::string first;
  if (!std::getline(is, first)) throw ParseError("empty graph text");
  int n;
  try {
    n = std::stoi(first);
  } catch (const std::exception&) {
    throw ParseError("first line must be the vertex count");
  }
  std::string rest, line;
  while (std::getline(is, line)) {
    if (!rest.empty()) rest += ",";
    rest += line;
  }
  return SimpleGraph(n, parse_edges_str(rest, warnings));
}

SimpleGraph parse_edge_list(int n, const std::string& edges, std::vector<std::string>* warnings) {
  return SimpleGraph(n, parse_edges_str(edges, warnings));
}

SimpleGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return SimpleGraph(n, edges);
}

SimpleGraph permute_graph(const SimpleGraph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.n()) throw ParseError("permutation size mismatch");
  std::vector<int> inv(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) inv[static_cast<size_t>(perm[i])] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (auto [i, j] : g.edges()) edges.emplace_back(inv[i], inv[j]);
  return SimpleGraph(g.n(), edges);
}

}  // namespace extremal
