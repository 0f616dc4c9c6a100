#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extremal/graph.hpp"

namespace extremal {

/* Catalog of all connected graphs on 2..5 vertices. Labels encode the degree
   sequence, with A/B suffixes telling apart graphs that share one; entries
   are matched to result rows by their (dim X, dim L(0)) fingerprint. */
struct CatalogEntry {
  std::string label;
  int n;
  std::string edges;
  int dim_x;
  int dim_l0;          // characteristic 0 (and every odd characteristic except where noted)
  int dim_l0_char3;    // differs only for the complete graph on 5 vertices
  int quotient_dim;
  std::string type;
  bool heavy;          // gated behind --include-heavy
};

const std::vector<CatalogEntry>& catalog();
std::optional<CatalogEntry> catalog_find(const std::string& label);
SimpleGraph catalog_graph(const CatalogEntry& e);

}  // namespace extremal
