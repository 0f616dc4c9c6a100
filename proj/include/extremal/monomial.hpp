#pragma once

#include <map>
#include <memory>
#include <string>

#include "extremal/fpoly.hpp"
#include "extremal/free_algebra.hpp"
#include "extremal/graph.hpp"

namespace extremal {

struct LengthTooShort : Error {
  using Error::Error;
};
struct IndexOutOfRange : Error {
  using Error::Error;
};

/* A left-normed monomial [x1,[x2,[...,[x_{l-1},x_l]]]] is stored as its
   generator sequence; it shares the Word representation of the free algebra. */
using LieMonomial = Word;

// zero in F(K,Gamma): the innermost bracket [x_{l-1},x_l] vanishes
inline bool monomial_is_zero(const LieMonomial& m, const SimpleGraph& g) {
  size_t l = m.size();
  if (l < 2) return false;
  Gen a = m[l - 2], b = m[l - 1];
  return a == b || !g.adjacent(a, b);
}

std::string monomial_str(const LieMonomial& m);

/* Bracket expression: leaf = left-normed monomial, node = Lie bracket of two
   subexpressions. Built bottom-up; [x, m] with x a single generator and m a
   monomial is flattened back to a monomial, so only genuinely non-left-normed
   shapes stay as nodes. */
class BracketExpr {
 public:
  using Ptr = std::shared_ptr<const BracketExpr>;

  static Ptr mono(LieMonomial m);
  static Ptr br(Ptr a, Ptr b);

  bool is_leaf() const { return !l_; }
  const LieMonomial& leaf() const { return m_; }
  const Ptr& left() const { return l_; }
  const Ptr& right() const { return r_; }
  int degree() const { return deg_; }
  std::string str() const;

  static int compare(const BracketExpr& a, const BracketExpr& b);

 private:
  BracketExpr() = default;
  LieMonomial m_;
  Ptr l_, r_;
  int deg_ = 0;
};

using ExprPtr = BracketExpr::Ptr;

struct ExprLess {
  bool operator()(const ExprPtr& a, const ExprPtr& b) const {
    return BracketExpr::compare(*a, *b) < 0;
  }
};

/* Formal linear combination with coefficients in R_F. */
template <class T, class Less>
class LinComb {
 public:
  using Map = std::map<T, FPoly, Less>;

  void add(const T& t, FPoly c, const FieldContext& K) {
    auto it = terms_.find(t);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(t, std::move(c));
      return;
    }
    it->second = FPoly::add(it->second, c, K);
    if (it->second.is_zero()) terms_.erase(it);
  }
  const Map& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }

 private:
  Map terms_;
};

struct WordLessF {
  bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

using MonoComb = LinComb<LieMonomial, WordLessF>;
using ExprComb = LinComb<ExprPtr, ExprLess>;

/* Full Jacobi unfolding of a left-normed monomial of length l >= 3:
   one swapped left-normed monomial [x2,[x1,[x3,...]]] plus 2^(l-3) signed
   left-normed monomials ending in ...,x1,x2. */
ExprComb jacobi_unfold(const LieMonomial& m, const FieldContext& K);

/* Regroup m = [x1,...,xl] around position i (1-based, 3 <= i <= l-1):
   one nested term [x1,[[x_{i-1},...,x2],[x_i,[x_{i+1},...,x_l]]]] plus i-3
   correction terms of the same degree. */
ExprComb regroup_prefix(const LieMonomial& m, int i, const FieldContext& K);

}  // namespace extremal
