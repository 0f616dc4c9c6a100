#pragma once

#include <unordered_map>
#include <vector>

#include "extremal/free_algebra.hpp"
#include "extremal/monomial.hpp"

namespace extremal {

/* Ordered monomial set B projecting to a basis of L(f) for every f in X.
   Generators come first; every later element is [x, b] with b an earlier
   element, and lengths never decrease along the order. */
struct MonomialBasis {
  int n = 0;
  std::vector<LieMonomial> elems;
  std::unordered_map<Word, int, WordHash> index;
  std::vector<std::pair<Gen, int>> parent;  // elems[i] = [parent[i].first, elems[parent[i].second]], i >= n
  std::vector<int> per_length;              // per_length[l] = number of elements of length l

  int size() const { return static_cast<int>(elems.size()); }
  int length_of(int i) const { return static_cast<int>(elems[i].size()); }
  int max_length() const { return static_cast<int>(per_length.size()) - 1; }
  int find(const Word& w) const {
    auto it = index.find(w);
    return it == index.end() ? -1 : it->second;
  }
};

/* Algorithm: grow B length by length inside the free associative algebra,
   extending the sandwich ideal with mu([x,[x,b]]) for each new b and keeping
   a truncated Groebner basis to decide span membership.
   max_length = 0 means run to termination. */
MonomialBasis compute_basis(const SimpleGraph& g, const FieldContext& K, int max_length = 0,
                            std::string* gb_dump = nullptr);

}  // namespace extremal
