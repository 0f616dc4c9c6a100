#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "extremal/field.hpp"

namespace extremal {

struct ParseError : Error {
  using Error::Error;
};
struct LoopError : Error {
  using Error::Error;
};
struct DisconnectedError : Error {
  using Error::Error;
};

using Gen = std::uint8_t;  // vertex id; the ascending id order is the total order on the vertex set

/* Finite simple connected graph; immutable after construction. */
class SimpleGraph {
 public:
  SimpleGraph(int n, std::vector<std::pair<int, int>> edges);  // validates

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool adjacent(int i, int j) const { return adj_[static_cast<size_t>(i) * n_ + j]; }
  std::vector<std::pair<int, int>> nonedges() const;
  std::string serialize() const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;  // i < j, sorted, no duplicates
  std::vector<char> adj_;
};

SimpleGraph parse_graph(const std::string& text, std::vector<std::string>* warnings = nullptr);
SimpleGraph parse_edge_list(int n, const std::string& edges, std::vector<std::string>* warnings = nullptr);
SimpleGraph complete_graph(int n);

// relabel vertices: vertex i of the result is perm[i] of g
SimpleGraph permute_graph(const SimpleGraph& g, const std::vector<int>& perm);

}  // namespace extremal
