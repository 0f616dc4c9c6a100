#include "extremal/catalog.hpp"

namespace extremal {

const std::vector<CatalogEntry>& catalog() {
  // dim X / dim L(0) / generic quotient per the computational-results tables
  static const std::vector<CatalogEntry> entries = {
      {"G11", 2, "0-1", 1, 3, 3, 3, "A1", false},

      {"G211", 3, "0-1,1-2", 2, 6, 6, 3, "A1", false},
      {"G222", 3, "0-1,0-2,1-2", 4, 8, 8, 8, "A2", false},

      {"G3111", 4, "0-1,0-2,0-3", 3, 12, 12, 3, "A1", false},
      {"G2211", 4, "0-1,1-2,2-3", 3, 10, 10, 10, "B2", false},
      {"G2222", 4, "0-1,1-2,2-3,0-3", 5, 15, 15, 15, "A3", false},
      {"G3221", 4, "0-1,0-2,1-2,2-3", 5, 15, 15, 15, "A3", false},
      {"G3322", 4, "0-1,0-2,0-3,1-2,1-3", 8, 21, 21, 21, "B3", false},
      {"G3333", 4, "0-1,0-2,0-3,1-2,1-3,2-3", 12, 28, 28, 28, "D4", false},

      {"G41111", 5, "0-1,0-2,0-3,0-4", 5, 28, 28, 28, "D4", false},
      {"G32111", 5, "0-1,1-2,1-3,2-4", 4, 20, 20, 10, "B2", false},
      {"G22211", 5, "0-1,1-2,2-3,3-4", 4, 15, 15, 10, "B2", false},
      {"G42211", 5, "0-1,0-2,1-2,0-3,0-4", 7, 36, 36, 36, "B4", false},
      {"G33211", 5, "0-1,0-2,1-2,0-3,1-4", 6, 30, 30, 15, "A3", false},
      {"G32221A", 5, "0-1,0-2,1-2,2-3,3-4", 6, 24, 24, 24, "A4", false},
      {"G32221B", 5, "0-1,1-2,2-3,0-3,3-4", 6, 30, 30, 15, "A3", false},
      {"G22222", 5, "0-1,1-2,2-3,3-4,0-4", 6, 24, 24, 24, "A4", false},
      {"G43221", 5, "0-1,0-2,1-2,1-3,2-3,1-4", 10, 52, 52, 52, "F4", false},
      {"G42222", 5, "0-1,0-2,1-2,0-3,0-4,3-4", 9, 45, 45, 45, "D5", false},
      {"G33321", 5, "0-1,0-2,1-2,1-3,2-3,0-4", 9, 45, 45, 45, "D5", false},
      {"G33222A", 5, "0-2,0-3,0-4,1-2,1-3,1-4", 10, 52, 52, 52, "F4", false},
      {"G33222B", 5, "0-1,1-2,2-3,0-3,0-4,1-4", 9, 45, 45, 45, "D5", false},
      {"G44222", 5, "0-1,0-2,1-2,0-3,1-3,0-4,1-4", 13, 86, 86, 28, "D4", false},
      {"G43331", 5, "0-1,0-2,0-3,1-2,1-3,2-3,0-4", 14, 78, 78, 78, "E6", false},
      {"G43322", 5, "0-1,0-2,0-3,0-4,1-2,2-3,3-4", 14, 78, 78, 78, "E6", false},
      {"G33332", 5, "0-2,0-3,0-4,1-3,1-4,2-3,2-4", 14, 78, 78, 78, "E6", false},
      {"G44332", 5, "0-2,0-3,0-4,1-3,1-4,2-3,2-4,3-4", 12, 134, 134, 28, "D4", false},
      {"G43333", 5, "0-2,0-3,0-4,1-2,1-3,1-4,2-4,3-4", 21, 133, 133, 133, "E7", false},
      {"G44433", 5, "0-2,0-3,0-4,1-2,1-3,1-4,2-3,2-4,3-4", 21, 249, 249, 78, "E6", true},
      {"G44444", 5, "0-1,0-2,0-3,0-4,1-2,1-3,1-4,2-3,2-4,3-4", 0, 537, 538, 0, "trivial", true},
  };
  return entries;
}

std::optional<CatalogEntry> catalog_find(const std::string& label) {
  for (const auto& e : catalog())
    if (e.label == label) return e;
  return std::nullopt;
}

SimpleGraph catalog_graph(const CatalogEntry& e) { return parse_edge_list(e.n, e.edges); }

}  // namespace extremal
