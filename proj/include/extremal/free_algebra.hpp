#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "extremal/field.hpp"
#include "extremal/graph.hpp"

namespace extremal {

struct DegreeExceedsTruncation : Error {
  using Error::Error;
};

/* A word of the free associative algebra U on the generators; empty = unit.
   Order: degree first, ties broken lexicographically with *smaller generator
   id counting as the larger letter*, so for x < y the word xy beats yx. */
using Word = std::basic_string<Gen>;

inline bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

std::string word_str(const Word& w);

struct WordHash {
  size_t operator()(const Word& w) const {
    size_t h = 1469598103934665603ull;
    for (Gen g : w) h = (h ^ g) * 1099511628211ull;
    return h;
  }
};

/* Sparse element of U: terms sorted descending by word order, no zeros. */
class NCPoly {
 public:
  using Term = std::pair<Word, Scalar>;

  NCPoly() = default;
  static NCPoly monomial(Word w, Scalar c, const FieldContext& K);

  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Word& leading_word() const { return terms_.front().first; }
  const Scalar& leading_coeff() const { return terms_.front().second; }
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.size()); }
  bool is_homogeneous() const;

  void add_term(const Word& w, const Scalar& c, const FieldContext& K);

  static NCPoly add(const NCPoly& a, const NCPoly& b, const FieldContext& K);
  static NCPoly sub(const NCPoly& a, const NCPoly& b, const FieldContext& K);
  // a + c * l ^ m ^ r  (words l, r concatenated around every word of m)
  static NCPoly add_scaled_framed(const NCPoly& a, const Scalar& c, const Word& l, const NCPoly& m,
                                  const Word& r, const FieldContext& K);
  static NCPoly mul(const NCPoly& a, const NCPoly& b, const FieldContext& K);
  NCPoly scaled(const Scalar& c, const FieldContext& K) const;
  void make_monic(const FieldContext& K);
  // over Q: multiply by the lcm of denominators, divide by gcd of numerators;
  // cleared denominators are reported to the context's prime collector
  void normalize_content(const FieldContext& K);

  bool equals(const NCPoly& o, const FieldContext& K) const;
  std::string str(const FieldContext& K) const;

 private:
  std::vector<Term> terms_;
};

/* Degree-truncated two-sided Groebner basis of a homogeneous ideal of U.
   Elements are monic, homogeneous, inter-reduced. */
class TruncatedGB {
 public:
  explicit TruncatedGB(const FieldContext& K, int truncation = 0) : K_(&K), trunc_(truncation) {}

  int truncation() const { return trunc_; }
  // raise truncation to d and complete with the given new generators
  void extend(std::vector<NCPoly> new_gens, int d);
  NCPoly normal_form(const NCPoly& p) const;

  std::vector<const NCPoly*> elements() const;
  std::string dump(const FieldContext& K) const;

 private:
  void insert_reduced(NCPoly p);
  void complete_to(int d);
  bool reducible_word(const Word& w, size_t* pos, int* gen_idx) const;

  const FieldContext* K_;
  int trunc_ = 0;
  std::vector<NCPoly> gens_;       // append-only; retired entries become empty
  std::vector<char> alive_;
  std::unordered_map<Word, int, WordHash> by_lw_;
  std::vector<std::unordered_set<Word, WordHash>> lw_by_len_;
  size_t paired_ = 0;  // pairs among gens below this index are done for the current truncation
};

/* Row-echelon span of normal forms, kept per degree; rows remember their
   expression over the inserted elements so membership returns coordinates. */
class IncrementalSpan {
 public:
  explicit IncrementalSpan(const FieldContext& K) : K_(&K) {}

  struct Row {
    NCPoly nf;                                   // monic, pivot = leading word
    std::vector<std::pair<int, Scalar>> combo;   // expression over element ids
  };

  // Reduce p against the span. Dependent: coordinates over the inserted
  // elements (empty when p reduces to 0 mod the ideal). Independent: nullopt;
  // the reduced row is then recorded under the id `next_id`.
  std::optional<std::vector<std::pair<int, Scalar>>> reduce_or_insert(NCPoly p, int next_id);

  size_t rows(int degree) const;

 private:
  const FieldContext* K_;
  std::vector<std::vector<Row>> by_degree_;
  std::vector<std::unordered_map<Word, int, WordHash>> pivot_;
};

}  // namespace extremal
