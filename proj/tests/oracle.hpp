#pragma once

// Test-only brute-force model of the specialized Lie algebra: embed the free
// Lie algebra into the free associative algebra by commutator expansion, span
// the ideal generated by nonedge commutators and the extremality elements
// [x,[x,b]] - f_x(b) x (closed under ad by generators, up to a degree cap),
// row-reduce, and read everything off in coordinates. Shares no code path
// with the Groebner/table implementation it is used to check.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "extremal/free_algebra.hpp"
#include "extremal/graph.hpp"

namespace extremal::testing {

class Oracle {
 public:
  Oracle(const SimpleGraph& g, const std::vector<Word>& basis_words, const FieldContext& K,
         const std::function<Scalar(int, int)>& f_on_basis, int extra_degree = 2);

  bool ok() const { return ok_; }
  const std::string& fail_reason() const { return fail_; }
  int dim() const { return static_cast<int>(basis_.size()); }

  // coordinates of a left-normed monomial over the basis words
  std::optional<std::vector<Scalar>> coords_of_word(const Word& m) const;
  // coordinates of the bracket of two left-normed monomials
  std::optional<std::vector<Scalar>> coords_of_product(const Word& a, const Word& b) const;

 private:
  using Vec = std::vector<Scalar>;  // dense over all words of length <= cap

  int widx(const Word& w) const;
  Vec psi(const Word& m) const;              // commutator expansion of a monomial
  Vec mul_commutator(const Vec& a, const Vec& b) const;
  Vec ad_gen(int z, const Vec& v) const;     // z v - v z
  Vec reduce_mod_ideal(Vec v) const;
  std::optional<std::vector<Scalar>> in_basis(Vec v) const;

  const SimpleGraph& g_;
  const FieldContext& K_;
  std::vector<Word> basis_;
  int cap_;
  std::vector<size_t> offset_;  // per length
  size_t total_ = 0;

  struct Row {
    Vec v;
    size_t pivot;
  };
  std::vector<Row> ideal_;                      // echelon of the ideal span
  std::vector<Row> span_;                       // echelon of reduced basis images
  std::vector<std::vector<Scalar>> span_combo_; // expression of each span row over basis ids
  bool ok_ = false;
  std::string fail_;
};

}  // namespace extremal::testing
