#include "extremal/fset.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace extremal {

FSetState::FSetState(const SimpleGraph& g, const MonomialBasis& B, const FieldContext& K)
    : g_(&g), B_(&B), K_(&K) {
  r_.assign(static_cast<size_t>(g.n()) * B.size(), FPoly());
}

std::vector<VarId> FSetState::active_vars() const {
  std::vector<VarId> v;
  for (VarId i = 0; i < static_cast<VarId>(vars_.size()); ++i)
    if (active_[i]) v.push_back(i);
  return v;
}

std::string FSetState::var_name(VarId v) const {
  const FVar& f = vars_[v];
  return "f[" + std::to_string(static_cast<int>(f.y)) + "][" + std::to_string(f.c) + "]";
}

VarId FSetState::admit(Gen y, int c) {
  VarId v = static_cast<VarId>(vars_.size());
  vars_.push_back({y, c});
  active_.push_back(1);
  ++active_count_;
  set_r(y, c, FPoly::variable(v, *K_));
  return v;
}

void FSetState::eliminate(VarId v, const FPoly& expr) {
  assert(active_[v]);
  active_[v] = 0;
  --active_count_;
  for (auto& p : r_)
    if (!p.is_zero()) p = p.substituted(v, expr, *K_);
}

FSetState FSetState::converted(const FieldContext& K2) const {
  FSetState out(*g_, *B_, K2);
  out.vars_ = vars_;
  out.active_ = active_;
  out.active_count_ = active_count_;
  out.reductions = reductions;
  for (size_t i = 0; i < r_.size(); ++i)
    if (!r_[i].is_zero()) out.r_[i] = r_[i].converted(K2);
  return out;
}

FPoly FSetState::f_of_vec(Gen x, const std::vector<std::pair<int, FPoly>>& u) const {
  FPoly acc;
  for (const auto& [c, coeff] : u) acc = FPoly::add(acc, FPoly::mul(coeff, r(x, c), *K_), *K_);
  return acc;
}

namespace {

/* Rewriting engine behind InitialFSet. A state is a pair (form x, monomial m)
   standing for f_x(m); the identities below are applied left to right, with a
   path-local visited set guarding the length-preserving ones against cycles.
   Only pairs strictly below (cur_y, cur_c) may be consumed. Successes are
   cached (sound: the available set only grows along the traversal); a node
   budget caps pathological searches, in which case the pair simply becomes a
   variable, which never hurts sufficiency. */
struct FEval {
  const FSetState& st;
  const SimpleGraph& g;
  const FieldContext& K;
  Gen cur_y;
  int cur_c;
  std::set<std::pair<Gen, Word>> visited;
  std::map<std::pair<Gen, Word>, FPoly>* cache = nullptr;
  long budget = 200000;
  std::string first_rule;  // rule that fired at the top level

  bool available(Gen x, int c) const { return pair_order_compare(x, c, cur_y, cur_c) < 0; }

  std::optional<FPoly> eval(Gen x, const LieMonomial& m, int depth) {
    if (--budget < 0) return std::nullopt;
    // vanishing bracket inside m
    if (monomial_is_zero(m, g)) return note(depth, "zero-monomial"), FPoly();
    size_t l = m.size();

    if (l == 1) {
      Gen z = m[0];
      if (x == z || !g.adjacent(x, z)) return note(depth, "rule1"), FPoly();
      if (available(x, static_cast<int>(z))) return st.r(x, static_cast<int>(z));
      // rule 2: f_x(z) = f_z(x)
      if (available(z, static_cast<int>(x))) return note(depth, "rule2"), st.r(z, static_cast<int>(x));
      return std::nullopt;
    }

    Gen h = m[0];
    if (x == h || !g.adjacent(x, h)) return note(depth, "rule3"), FPoly();

    // already expressed as a basis pair below the cursor
    int bi = st.basis().find(m);
    if (bi >= 0 && available(x, bi)) return st.r(x, bi);

    auto key = std::make_pair(x, m);
    if (cache) {
      auto it = cache->find(key);
      if (it != cache->end()) return it->second;
    }
    if (visited.count(key)) return std::nullopt;
    visited.insert(key);

    std::optional<FPoly> r = apply_rules(x, m, depth);
    visited.erase(key);
    if (r && cache) cache->emplace(key, *r);
    return r;
  }

  std::optional<FPoly> apply_rules(Gen x, const LieMonomial& m, int depth) {
    size_t l = m.size();

    // rule 4: f_x([y,m']) = -f_y([x,m'])
    {
      LieMonomial w = m;
      w[0] = x;
      auto v = eval(m[0], w, depth + 1);
      if (v) return note(depth, "rule4"), v->negated(K);
    }

    // rule 5: f_x([y,[z,x]]) = f_x(y) f_x(z)
    if (l == 3 && m[2] == x) {
      auto a = eval(x, LieMonomial(1, m[0]), depth + 1);
      auto b = eval(x, LieMonomial(1, m[1]), depth + 1);
      if (a && b) return note(depth, "rule5"), FPoly::mul(*a, *b, K);
    }

    // rule 6: f_x([y,[x,m'']]) = -f_x(y) f_x(m'')
    if (l >= 3 && m[1] == x) {
      auto a = eval(x, LieMonomial(1, m[0]), depth + 1);
      auto b = eval(x, LieMonomial(m, 2), depth + 1);
      if (a && b) return note(depth, "rule6"), FPoly::mul(*a, *b, K).negated(K);
    }

    // rule 7: f_x([y,[z,m'']]) = f_z([y,[x,m'']]) - f_z([x,[y,m'']])
    if (l >= 3) {
      Gen y = m[0], z = m[1];
      LieMonomial w1 = m;
      w1[1] = x;  // (y, x, rest)
      LieMonomial w2 = m;
      w2[0] = x;
      w2[1] = y;  // (x, y, rest)
      auto a = eval(z, w1, depth + 1);
      if (a) {
        auto b = eval(z, w2, depth + 1);
        if (b) return note(depth, "rule7"), FPoly::sub(*a, *b, K);
      }
    }

    // rule 8: f_x([y1,...,yl]) = (-1)^(l-1) f_{yl}([y_{l-1},...,y1,x])
    {
      LieMonomial w;
      w.reserve(l);
      for (size_t i = l - 1; i-- > 0;) w.push_back(m[i]);
      w.push_back(x);
      auto v = eval(m[l - 1], w, depth + 1);
      if (v) {
        note(depth, "rule8");
        return (l % 2 == 1) ? *v : v->negated(K);
      }
    }
    return std::nullopt;
  }

  void note(int depth, const char* rule) {
    if (depth == 0 && first_rule.empty()) first_rule = rule;
  }
};

}  // namespace

std::optional<FPoly> reduce_f_monomial_rules(Gen x, const LieMonomial& m, const FSetState& st,
                                             Gen cur_y, int cur_c) {
  FEval ev{st, st.graph(), st.field(), cur_y, cur_c, {}, nullptr, 200000, {}};
  return ev.eval(x, m, 0);
}

FSetState initial_fset(const SimpleGraph& g, const MonomialBasis& B, const FieldContext& K) {
  FSetState st(g, B, K);
  std::map<std::pair<Gen, Word>, FPoly> cache;
  for (int c = 0; c < B.size(); ++c) {
    for (int y = 0; y < g.n(); ++y) {
      FEval ev{st, g, K, static_cast<Gen>(y), c, {}, &cache, 200000, {}};
      auto v = ev.eval(static_cast<Gen>(y), B.elems[c], 0);
      if (v) {
        st.set_r(static_cast<Gen>(y), c, std::move(*v));
        st.reductions.push_back({static_cast<Gen>(y), c, ev.first_rule.empty() ? "smaller-pair" : ev.first_rule});
      } else {
        st.admit(static_cast<Gen>(y), c);
      }
    }
  }
  return st;
}

}  // namespace extremal
