#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extremal/basis.hpp"
#include "extremal/fpoly.hpp"

namespace extremal {

struct NeedsTableEntry : Error {
  using Error::Error;
};

struct FVar {
  Gen y;   // generator
  int c;   // basis index
};

/* Order on Pi x B: (x,b) < (y,c) whenever b < c, or b = c and x < y.
   Basis indices already order B by length then creation. */
inline int pair_order_compare(Gen x, int b, Gen y, int c) {
  if (b != c) return b < c ? -1 : 1;
  if (x != y) return x < y ? -1 : 1;
  return 0;
}

/* The f-set (F, r): surviving parameter pairs F inside Pi x B plus the total
   expression map r : Pi x B -> R_F. Variable ids are handed out in ascending
   pair order and stay stable across eliminations. */
class FSetState {
 public:
  FSetState(const SimpleGraph& g, const MonomialBasis& B, const FieldContext& K);

  const SimpleGraph& graph() const { return *g_; }
  const MonomialBasis& basis() const { return *B_; }
  const FieldContext& field() const { return *K_; }

  int var_count() const { return static_cast<int>(vars_.size()); }
  int active_count() const { return active_count_; }
  const FVar& var(VarId v) const { return vars_[v]; }
  bool is_active(VarId v) const { return active_[v]; }
  std::vector<VarId> active_vars() const;
  std::string var_name(VarId v) const;

  const FPoly& r(Gen y, int c) const { return r_[idx(y, c)]; }
  void set_r(Gen y, int c, FPoly p) { r_[idx(y, c)] = std::move(p); }

  VarId admit(Gen y, int c);                  // create the variable f_y(c), set r_y(c) to it
  void eliminate(VarId v, const FPoly& expr); // substitute expr for v in every r entry, drop v from F

  // f_x(u) for a basis combination u (linearity through r)
  FPoly f_of_vec(Gen x, const std::vector<std::pair<int, FPoly>>& u) const;

  // reinterpret every r entry over another field (same graph and basis)
  FSetState converted(const FieldContext& K2) const;

  // reduction log from the initial f-set construction: (y, c, rule fired)
  struct Reduction {
    Gen y;
    int c;
    std::string rule;
  };
  std::vector<Reduction> reductions;

 private:
  size_t idx(Gen y, int c) const { return static_cast<size_t>(c) * g_->n() + y; }

  const SimpleGraph* g_;
  const MonomialBasis* B_;
  const FieldContext* K_;
  std::vector<FPoly> r_;
  std::vector<FVar> vars_;
  std::vector<char> active_;
  int active_count_ = 0;
};

/* Algorithm: traverse Pi x B in ascending pair order; express f_y(c) through
   strictly smaller pairs via the f-identities where possible, otherwise admit
   a fresh variable. Returns a sufficient f-set. */
FSetState initial_fset(const SimpleGraph& g, const MonomialBasis& B, const FieldContext& K);

/* f_x(m) for an arbitrary monomial. Without a table this applies the
   f-identities as reductions (used by InitialFSet); the variant taking a
   basis expansion applies linearity directly. */
std::optional<FPoly> reduce_f_monomial_rules(Gen x, const LieMonomial& m, const FSetState& st,
                                             Gen cur_y, int cur_c);

}  // namespace extremal
