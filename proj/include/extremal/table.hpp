#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "extremal/fset.hpp"
#include "extremal/monomial.hpp"

namespace extremal {

struct KCapExceeded : Error {
  using Error::Error;
};
struct SingularSystem : Error {
  using Error::Error;
};

/* Sparse vector over the basis, sorted by basis index. */
using BasisVec = std::vector<std::pair<int, FPoly>>;

BasisVec vec_add(const BasisVec& a, const BasisVec& b, const FieldContext& K);
BasisVec vec_scale(const BasisVec& a, const FPoly& c, const FieldContext& K);
bool vec_is_zero(const BasisVec& a);

/* Structure constants a_{xbc} over R_F for x a generator and b in B, plus a
   memoized extension to products of two arbitrary basis elements. Rows are
   populated stagewise by ascending length of b. */
class MultTable {
 public:
  MultTable(const MonomialBasis& B, const SimpleGraph& g) : B_(&B), g_(&g) {
    rows_.assign(static_cast<size_t>(g.n()) * B.size(), std::nullopt);
  }

  int completed_length() const { return completed_len_; }
  void mark_completed(int len) { completed_len_ = len; }

  bool has_row(Gen x, int b) const { return rows_[idx(x, b)].has_value(); }
  const BasisVec& row(Gen x, int b) const { return *rows_[idx(x, b)]; }
  void set_row(Gen x, int b, BasisVec v) { rows_[idx(x, b)] = std::move(v); }

  // [x, c] with the basis-word fallback (valid before the row is solved)
  std::optional<BasisVec> lookup(Gen x, int b, const FieldContext& K) const;

  // [b, c] for arbitrary basis elements, derived recursively from generator rows
  BasisVec pair_product(int b, int c, const FSetState& st) const;

  void substitute_var(VarId v, const FPoly& expr, const FieldContext& K);
  MultTable converted(const FieldContext& to) const;
  void clear_product_cache() const { cache_.clear(); }

  const MonomialBasis& basis() const { return *B_; }

 private:
  size_t idx(Gen x, int b) const { return static_cast<size_t>(b) * g_->n() + x; }

  const MonomialBasis* B_;
  const SimpleGraph* g_;
  std::vector<std::optional<BasisVec>> rows_;
  mutable std::unordered_map<std::uint64_t, BasisVec> cache_;
  int completed_len_ = 0;
};

/* Inside-out evaluation of a monomial of length <= completed_length()+1. */
BasisVec eval_monomial(const LieMonomial& m, const MultTable& T, const FSetState& st);
// [x, v] for a basis combination v
BasisVec apply_gen(Gen x, const BasisVec& v, const MultTable& T, const FSetState& st);
// [u, v] by bilinearity over pair products
BasisVec bracket_vec(const BasisVec& u, const BasisVec& v, const MultTable& T, const FSetState& st);

/* f_x(m) by expressing m over the basis and applying r linearly. */
FPoly f_of_monomial(Gen x, const LieMonomial& m, const FSetState& st, const MultTable& T);

/* Algorithm MonomialToBasis: inside-out evaluation, the nonedge shortcut,
   extremality at a repeat x_i = x_{i+1}, or the first Premet identity at
   x_i = x_{i+2}; nullopt = fail. */
std::optional<BasisVec> monomial_to_basis(const LieMonomial& m, const MultTable& T,
                                          const FSetState& st);

/* The shortening rewrite at a repeat x_i = x_j (1-based, j - i >= 3): three
   monomials of length < l carrying f-coefficients plus j-i-2 same-degree
   bracket terms. */
ExprComb shorten_repeat(const LieMonomial& m, int i, int j, const FSetState& st,
                        const MultTable& T);

struct TableOptions {
  int k_cap = 4;
  // called after each completed length; harvested carries relation vectors
  // over B that fell out of rank-deficient row combinations
  std::function<void(MultTable&, int completed_len, std::vector<BasisVec>&& harvested)>
      on_stage_complete;
};

/* Algorithm ComputeMultiplicationTable. st is mutated only through the
   on_stage_complete hook (interleaved minimization). */
MultTable compute_mult_table(const SimpleGraph& g, const MonomialBasis& B, const FSetState& st,
                             const TableOptions& opts = {});

}  // namespace extremal
