#include "extremal/table.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace extremal {

BasisVec vec_add(const BasisVec& a, const BasisVec& b, const FieldContext& K) {
  BasisVec r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      FPoly c = FPoly::add(a[i].second, b[j].second, K);
      if (!c.is_zero()) r.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    } else if (a[i].first < b[j].first) {
      r.push_back(a[i++]);
    } else {
      r.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back(b[j]);
  return r;
}

BasisVec vec_scale(const BasisVec& a, const FPoly& c, const FieldContext& K) {
  BasisVec r;
  if (c.is_zero()) return r;
  r.reserve(a.size());
  for (const auto& [i, p] : a) {
    FPoly q = FPoly::mul(p, c, K);
    if (!q.is_zero()) r.emplace_back(i, std::move(q));
  }
  return r;
}

bool vec_is_zero(const BasisVec& a) { return a.empty(); }

std::optional<BasisVec> MultTable::lookup(Gen x, int b, const FieldContext& K) const {
  Word w(1, x);
  w.append(B_->elems[b]);
  int bi = B_->find(w);
  if (bi >= 0) return BasisVec{{bi, FPoly::constant(K.one(), K)}};
  if (rows_[idx(x, b)]) return rows_[idx(x, b)];
  // generator pair the other way around
  if (B_->elems[b].size() == 1) {
    Gen y = B_->elems[b][0];
    if (y == x || !g_->adjacent(x, y)) return BasisVec{};
    Word v(1, y);
    v.push_back(x);
    int vi = B_->find(v);
    if (vi >= 0) return BasisVec{{vi, FPoly::constant(K.from_int(-1), K)}};
  }
  return std::nullopt;
}

BasisVec MultTable::pair_product(int b, int c, const FSetState& st) const {
  const FieldContext& K = st.field();
  if (b == c) return {};
  std::uint64_t key = (static_cast<std::uint64_t>(b) << 32) | static_cast<std::uint64_t>(c);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  BasisVec out;
  if (B_->elems[b].size() == 1) {
    auto r = lookup(B_->elems[b][0], c, K);
    if (!r) throw NeedsTableEntry("pair product needs unsolved row");
    out = *r;
  } else if (B_->elems[c].size() == 1) {
    out = vec_scale(pair_product(c, b, st), FPoly::constant(K.from_int(-1), K), K);
  } else {
    // b = [x, b']: [b,c] = [x,[b',c]] - [b',[x,c]]
    Gen x = B_->parent[b].first;
    int bp = B_->parent[b].second;
    BasisVec inner = pair_product(bp, c, st);
    BasisVec t1 = apply_gen(x, inner, *this, st);
    auto xc = lookup(x, c, K);
    if (!xc) throw NeedsTableEntry("pair product needs unsolved row");
    BasisVec t2;
    for (const auto& [ci, coeff] : *xc)
      t2 = vec_add(t2, vec_scale(pair_product(bp, ci, st), coeff, K), K);
    out = vec_add(t1, vec_scale(t2, FPoly::constant(K.from_int(-1), K), K), K);
  }
  cache_.emplace(key, out);
  return out;
}

void MultTable::substitute_var(VarId v, const FPoly& expr, const FieldContext& K) {
  for (auto& row : rows_) {
    if (!row) continue;
    BasisVec nw;
    nw.reserve(row->size());
    for (auto& [i, p] : *row) {
      FPoly q = p.substituted(v, expr, K);
      if (!q.is_zero()) nw.emplace_back(i, std::move(q));
    }
    *row = std::move(nw);
  }
  for (auto& [key, vec] : cache_) {
    BasisVec nw;
    nw.reserve(vec.size());
    for (auto& [i, p] : vec) {
      FPoly q = p.substituted(v, expr, K);
      if (!q.is_zero()) nw.emplace_back(i, std::move(q));
    }
    vec = std::move(nw);
  }
}

MultTable MultTable::converted(const FieldContext& to) const {
  MultTable out(*B_, *g_);
  out.completed_len_ = completed_len_;
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (!rows_[i]) continue;
    BasisVec v;
    v.reserve(rows_[i]->size());
    for (const auto& [c, p] : *rows_[i]) {
      FPoly q = p.converted(to);
      if (!q.is_zero()) v.emplace_back(c, std::move(q));
    }
    out.rows_[i] = std::move(v);
  }
  return out;
}

BasisVec apply_gen(Gen x, const BasisVec& v, const MultTable& T, const FSetState& st) {
  const FieldContext& K = st.field();
  BasisVec out;
  for (const auto& [c, coeff] : v) {
    auto row = T.lookup(x, c, K);
    if (!row) throw NeedsTableEntry("row (" + std::to_string(int(x)) + ", b" + std::to_string(c) +
                                    ") not yet computed");
    out = vec_add(out, vec_scale(*row, coeff, K), K);
  }
  return out;
}

BasisVec eval_monomial(const LieMonomial& m, const MultTable& T, const FSetState& st) {
  assert(!m.empty());
  BasisVec v{{static_cast<int>(m.back()), FPoly::constant(st.field().one(), st.field())}};
  for (size_t i = m.size() - 1; i-- > 0;) v = apply_gen(m[i], v, T, st);
  return v;
}

BasisVec bracket_vec(const BasisVec& u, const BasisVec& v, const MultTable& T, const FSetState& st) {
  const FieldContext& K = st.field();
  BasisVec out;
  for (const auto& [b, cb] : u)
    for (const auto& [c, cc] : v) {
      if (b == c) continue;
      BasisVec p = T.pair_product(b, c, st);
      out = vec_add(out, vec_scale(p, FPoly::mul(cb, cc, K), K), K);
    }
  return out;
}

FPoly f_of_monomial(Gen x, const LieMonomial& m, const FSetState& st, const MultTable& T) {
  if (monomial_is_zero(m, st.graph())) return FPoly();
  return st.f_of_vec(x, eval_monomial(m, T, st));
}

std::optional<BasisVec> monomial_to_basis(const LieMonomial& m, const MultTable& T,
                                          const FSetState& st) {
  const FieldContext& K = st.field();
  const MonomialBasis& B = st.basis();
  size_t l = m.size();
  if (monomial_is_zero(m, st.graph())) return BasisVec{};
  if (l == 1) return BasisVec{{static_cast<int>(m[0]), FPoly::constant(K.one(), K)}};

  // inside-out evaluation; succeeds when every needed row exists
  {
    LieMonomial tail(m, 1);
    BasisVec tv = eval_monomial(tail, T, st);
    bool ok = true;
    BasisVec out;
    for (const auto& [c, coeff] : tv) {
      auto row = T.lookup(m[0], c, K);
      if (!row) {
        ok = false;
        break;
      }
      out = vec_add(out, vec_scale(*row, coeff, K), K);
    }
    if (ok) return out;
  }

  // extremality at an adjacent repeat: [x,[x,y]] = f_x(y) x
  for (size_t t = 0; t + 1 < l; ++t) {
    if (m[t] != m[t + 1]) continue;
    LieMonomial y(m, t + 2);
    assert(!y.empty());  // t+1 == l-1 is the zero monomial, handled above
    FPoly fv = f_of_monomial(m[t], y, st, T);
    LieMonomial prefix(m, 0, t + 1);
    BasisVec pv = eval_monomial(prefix, T, st);
    return vec_scale(pv, fv, K);
  }

  // first Premet identity at x_i = x_{i+2}
  for (size_t t = 0; t + 3 < l; ++t) {
    if (m[t] != m[t + 2]) continue;
    Gen x = m[t], y = m[t + 1];
    LieMonomial z(m, t + 3);
    LieMonomial yz(1, y);
    yz.append(z);
    FPoly t_xyz = f_of_monomial(x, yz, st, T);
    FPoly t_xy = f_of_monomial(x, LieMonomial(1, y), st, T);
    FPoly t_xz = f_of_monomial(x, z, st, T);
    LieMonomial px(m, 0, t + 1);
    LieMonomial pxy = px;
    pxy.push_back(y);
    LieMonomial pxz = px;
    pxz.append(z);
    BasisVec vx = eval_monomial(px, T, st);
    BasisVec vxy = eval_monomial(pxy, T, st);
    BasisVec vxz = eval_monomial(pxz, T, st);
    Scalar half = K.halve(K.one());
    Scalar mhalf = K.neg(half);
    BasisVec out = vec_scale(vx, t_xyz.scaled(half, K), K);
    out = vec_add(out, vec_scale(vxy, t_xz.scaled(mhalf, K), K), K);
    out = vec_add(out, vec_scale(vxz, t_xy.scaled(mhalf, K), K), K);
    return out;
  }

  return std::nullopt;
}

ExprComb shorten_repeat(const LieMonomial& m, int i, int j, const FSetState& st,
                        const MultTable& T) {
  const FieldContext& K = st.field();
  int l = static_cast<int>(m.size());
  if (i < 1 || j > l || j - i < 3) throw IndexOutOfRange("shorten_repeat needs j - i >= 3");
  assert(m[i - 1] == m[j - 1]);

  Gen x = m[static_cast<size_t>(i - 1)];
  LieMonomial prefix(m, 0, static_cast<size_t>(i - 1));  // x_1..x_{i-1}
  // block P = (x_{j-1},...,x_{i+1}), tail S = (x_{j+1},...,x_l)
  LieMonomial block;
  for (int t = j - 2; t >= i; --t) block.push_back(m[static_cast<size_t>(t)]);
  LieMonomial s_tail(m, static_cast<size_t>(j));

  int q = j - i + 1;  // repeat position inside the suffix
  Scalar sigma = (q % 2 == 0) ? K.from_int(-1) : K.one();

  ExprComb out;
  auto add_mono = [&](LieMonomial w, FPoly c) { out.add(BracketExpr::mono(std::move(w)), std::move(c), K); };

  if (s_tail.empty()) {
    // [x,[P,x]] = -f_x(P) x
    FPoly fp = f_of_monomial(x, block, st, T);
    LieMonomial w = prefix;
    w.push_back(x);
    add_mono(std::move(w), fp.scaled(K.neg(K.one()), K).scaled(sigma, K));
  } else {
    // first Premet identity on [x,[P,[x,S]]]
    BasisVec pv = eval_monomial(block, T, st);
    BasisVec sv = eval_monomial(s_tail, T, st);
    FPoly f_ps = st.f_of_vec(x, bracket_vec(pv, sv, T, st));
    FPoly f_s = st.f_of_vec(x, sv);
    FPoly f_p = st.f_of_vec(x, pv);
    Scalar half = K.halve(sigma);

    LieMonomial w1 = prefix;
    w1.push_back(x);
    add_mono(std::move(w1), f_ps.scaled(half, K));

    LieMonomial w2 = prefix;
    w2.push_back(x);
    w2.append(block);
    add_mono(std::move(w2), f_s.scaled(K.neg(half), K));

    LieMonomial w3 = prefix;
    w3.push_back(x);
    w3.append(s_tail);
    add_mono(std::move(w3), f_p.scaled(K.neg(half), K));
  }

  // same-degree corrections: (-1)^t [x_1..x_i, [x'_{t+1}, [(x'_t..x'_2), (x'_{t+2}..)]]]
  // with x'_r = m[i-1 + r-1] the suffix letters, x'_1 = x_i included in the wrap
  for (int t = 2; t <= q - 2; ++t) {
    LieMonomial blk;
    for (int s = t; s >= 2; --s) blk.push_back(m[static_cast<size_t>(i - 1 + s - 1)]);
    LieMonomial tl(m, static_cast<size_t>(i + t));  // from suffix letter x'_{t+2}
    ExprPtr inner = BracketExpr::br(BracketExpr::mono(std::move(blk)), BracketExpr::mono(std::move(tl)));
    ExprPtr e = BracketExpr::br(BracketExpr::mono(LieMonomial(1, m[static_cast<size_t>(i - 1 + t)])), inner);
    for (int s = i; s >= 1; --s)
      e = BracketExpr::br(BracketExpr::mono(LieMonomial(1, m[static_cast<size_t>(s - 1)])), e);
    Scalar c = (t % 2 == 0) ? K.one() : K.from_int(-1);
    out.add(e, FPoly::constant(c, K), K);
  }
  return out;
}

// ---------------------------------------------------------------------------
// stage machinery for ComputeMultiplicationTable

namespace {

struct MVec {
  std::vector<std::pair<int, FPoly>> m;  // over M columns
  BasisVec b;
};

struct Stage {
  const SimpleGraph& g;
  const MonomialBasis& B;
  const FSetState& st;
  const FieldContext& K;
  MultTable& T;
  int len;  // length of b in M = {[x,b]}
  std::vector<std::pair<Gen, int>> cols;            // M columns
  std::map<std::pair<Gen, int>, int> col_of;
  std::vector<BasisVec> harvested;

  // rows kept fully reduced: each row's lhs has exactly one pivot column
  // entry after insertion of all pivots it meets
  struct Row {
    std::vector<std::pair<int, FPoly>> lhs;
    BasisVec rhs;
  };
  std::vector<Row> rows;
  std::vector<int> pivot_row;  // per column, -1 if none
  int rank = 0;

  int frontier() const { return len + 1; }

  // apply a generator to a basis combination, splitting components that land
  // on the frontier into M columns
  void apply_split(Gen x, const BasisVec& v, const FPoly& coeff, MVec& out) {
    for (const auto& [c, cc] : v) {
      FPoly f = FPoly::mul(cc, coeff, K);
      if (f.is_zero()) continue;
      if (B.length_of(c) < len) {
        auto row = T.lookup(x, c, K);
        assert(row);
        out.b = vec_add(out.b, vec_scale(*row, f, K), K);
      } else {
        add_top(x, c, f, out);
      }
    }
  }

  // express [x, c] with |c| = len as a column or basis element
  void add_top(Gen x, int c, const FPoly& coeff, MVec& out) {
    Word w(1, x);
    w.append(B.elems[c]);
    int bi = B.find(w);
    if (bi >= 0) {
      out.b = vec_add(out.b, BasisVec{{bi, coeff}}, K);
      return;
    }
    auto it = col_of.find({x, c});
    assert(it != col_of.end());
    out.m = vec_add(out.m, {{it->second, coeff}}, K);
  }

  void split_word(const LieMonomial& w, const FPoly& coeff, MVec& out) {
    assert(static_cast<int>(w.size()) == frontier());
    if (auto v = monomial_to_basis(w, T, st)) {
      out.b = vec_add(out.b, vec_scale(*v, coeff, K), K);
      return;
    }
    LieMonomial tail(w, 1);
    BasisVec tv = eval_monomial(tail, T, st);
    for (const auto& [c, cc] : tv) {
      FPoly f = FPoly::mul(cc, coeff, K);
      if (f.is_zero()) continue;
      if (B.length_of(c) < len) {
        auto row = T.lookup(w[0], c, K);
        assert(row);
        out.b = vec_add(out.b, vec_scale(*row, f, K), K);
      } else {
        add_top(w[0], c, f, out);
      }
    }
  }

  void split_expr(const ExprPtr& e, const FPoly& coeff, MVec& out) {
    if (e->is_leaf()) {
      if (e->degree() < frontier()) {
        out.b = vec_add(out.b, vec_scale(eval_monomial(e->leaf(), T, st), coeff, K), K);
      } else {
        split_word(e->leaf(), coeff, out);
      }
      return;
    }
    if (e->degree() < frontier()) {
      BasisVec u = expr_vec(e);
      out.b = vec_add(out.b, vec_scale(u, coeff, K), K);
      return;
    }
    // full-degree node: the left factor is a single generator by construction
    assert(e->left()->is_leaf() && e->left()->leaf().size() == 1);
    Gen x = e->left()->leaf()[0];
    BasisVec rv = expr_vec(e->right());
    for (const auto& [c, cc] : rv) {
      FPoly f = FPoly::mul(cc, coeff, K);
      if (f.is_zero()) continue;
      if (B.length_of(c) < len) {
        auto row = T.lookup(x, c, K);
        assert(row);
        out.b = vec_add(out.b, vec_scale(*row, f, K), K);
      } else {
        add_top(x, c, f, out);
      }
    }
  }

  BasisVec expr_vec(const ExprPtr& e) {
    if (e->is_leaf()) return eval_monomial(e->leaf(), T, st);
    return bracket_vec(expr_vec(e->left()), expr_vec(e->right()), T, st);
  }

  // [e, c] for a basis pair with everything strictly below the frontier
  BasisVec pair_full(int e, int c) {
    if (B.length_of(e) == 1) {
      auto r = T.lookup(B.elems[static_cast<size_t>(e)][0], c, K);
      assert(r);
      return *r;
    }
    Gen u = B.parent[e].first;
    int ep = B.parent[e].second;
    BasisVec t1 = apply_gen(u, pair_full(ep, c), T, st);
    auto ruc = T.lookup(u, c, K);
    assert(ruc);
    BasisVec t2;
    for (const auto& [w, cw] : *ruc) t2 = vec_add(t2, vec_scale(pair_full(ep, w), cw, K), K);
    return vec_add(t1, vec_scale(t2, FPoly::constant(K.from_int(-1), K), K), K);
  }

  // Jacobi applied at the given depth of the parent chain of b: the subtree
  // [l1, [l2, tail]] is replaced by [l2, row(l1, tail)] + [row([l1,l2]), tail],
  // evaluated through solved rows and wrapped back up to the frontier
  void ancestor_rotation(int col, Gen x, int b, int depth) {
    const int n = st.graph().n();
    std::vector<Gen> letters;
    int node = b;
    for (int t = 0; t < depth; ++t) {
      if (node < n) return;
      letters.push_back(B.parent[node].first);
      node = B.parent[node].second;
    }
    if (node < n) return;
    Gen l1 = B.parent[node].first;
    int mid = B.parent[node].second;
    if (mid < n) return;
    Gen l2 = B.parent[mid].first;
    int tail = B.parent[mid].second;
    auto r1 = T.lookup(l1, tail, K);
    auto rp = T.lookup(l1, static_cast<int>(l2), K);
    assert(r1 && rp);
    BasisVec w = apply_gen(l2, *r1, T, st);
    for (const auto& [e, ce] : *rp) w = vec_add(w, vec_scale(pair_full(e, tail), ce, K), K);
    for (int s = depth - 1; s >= 0; --s) w = apply_gen(letters[static_cast<size_t>(s)], w, T, st);
    MVec acc;
    apply_split(x, w, FPoly::constant(K.one(), K), acc);
    auto lhs = vec_add({{col, FPoly::constant(K.one(), K)}},
                       vec_scale(acc.m, FPoly::constant(K.from_int(-1), K), K), K);
    insert_row(std::move(lhs), std::move(acc.b));
  }

  // insert row (lhs | rhs); returns true if it raised the rank
  bool insert_row(std::vector<std::pair<int, FPoly>> lhs, BasisVec rhs) {
    // reduce against existing pivots (full reduction)
    for (;;) {
      int col = -1;
      const FPoly* entry = nullptr;
      for (const auto& [c, p] : lhs)
        if (pivot_row[c] >= 0) {
          col = c;
          entry = &p;
          break;
        }
      if (col < 0) break;
      const Row& pr = rows[static_cast<size_t>(pivot_row[col])];
      const FPoly* pv = nullptr;
      for (const auto& [c, p] : pr.lhs)
        if (c == col) pv = &p;
      if (pv->is_constant()) {
        FPoly f = entry->scaled(K.neg(K.inv(pv->constant_value(K))), K);
        lhs = vec_add(lhs, vec_scale(pr.lhs, f, K), K);
        rhs = vec_add(rhs, vec_scale(pr.rhs, f, K), K);
      } else {
        // fraction-free: pv*row - entry*pivot
        FPoly e = *entry;
        lhs = vec_add(vec_scale(lhs, *pv, K), vec_scale(pr.lhs, e.negated(K), K), K);
        rhs = vec_add(vec_scale(rhs, *pv, K), vec_scale(pr.rhs, e.negated(K), K), K);
      }
    }
    if (lhs.empty()) {
      if (!rhs.empty()) harvested.push_back(std::move(rhs));  // relation over B
      return false;
    }
    // pick pivot: prefer constant entries, then lowest total degree
    int best = -1, best_deg = 0;
    for (const auto& [c, p] : lhs) {
      int d = p.total_degree();
      if (best < 0 || d < best_deg) {
        best = c;
        best_deg = d;
      }
    }
    // normalize on a constant pivot
    for (auto& [c, p] : lhs)
      if (c == best && p.is_constant()) {
        Scalar iv = K.inv(p.constant_value(K));
        lhs = vec_scale(lhs, FPoly::constant(iv, K), K);
        rhs = vec_scale(rhs, FPoly::constant(iv, K), K);
        break;
      }
    // eliminate this column from all existing rows
    const Row nr{std::move(lhs), std::move(rhs)};
    const FPoly* pv = nullptr;
    for (const auto& [c, p] : nr.lhs)
      if (c == best) pv = &p;
    for (auto& r : rows) {
      const FPoly* e = nullptr;
      for (const auto& [c, p] : r.lhs)
        if (c == best) e = &p;
      if (!e) continue;
      if (pv->is_constant()) {
        FPoly f = e->scaled(K.neg(K.inv(pv->constant_value(K))), K);
        r.lhs = vec_add(r.lhs, vec_scale(nr.lhs, f, K), K);
        r.rhs = vec_add(r.rhs, vec_scale(nr.rhs, f, K), K);
      } else {
        FPoly f = e->negated(K);
        r.lhs = vec_add(vec_scale(r.lhs, *pv, K), vec_scale(nr.lhs, f, K), K);
        r.rhs = vec_add(vec_scale(r.rhs, *pv, K), vec_scale(nr.rhs, f, K), K);
      }
    }
    pivot_row[best] = static_cast<int>(rows.size());
    rows.push_back(nr);
    ++rank;
    return true;
  }
};

}  // namespace

MultTable compute_mult_table(const SimpleGraph& g, const MonomialBasis& B, const FSetState& st,
                             const TableOptions& opts) {
  const FieldContext& K = st.field();
  MultTable T(B, g);

  for (int len = 1; len <= B.max_length(); ++len) {
    Stage stage{g, B, st, K, T, len, {}, {}, {}, {}, {}, 0};
    for (int b = 0; b < B.size(); ++b)
      if (B.length_of(b) == len)
        for (int x = 0; x < g.n(); ++x) {
          stage.col_of[{static_cast<Gen>(x), b}] = static_cast<int>(stage.cols.size());
          stage.cols.emplace_back(static_cast<Gen>(x), b);
        }
    stage.pivot_row.assign(stage.cols.size(), -1);
    int mcount = static_cast<int>(stage.cols.size());

    std::vector<char> resolved_done(stage.cols.size(), 0);
    int k = 1;
    bool enrich = false;  // also mine resolved monomials once the rank stalls
    while (stage.rank < mcount) {
      int rank_before = stage.rank;
      if (k > opts.k_cap) {
        std::string missing;
        for (int col = 0; col < mcount; ++col)
          if (stage.pivot_row[static_cast<size_t>(col)] < 0) {
            auto [x, b] = stage.cols[static_cast<size_t>(col)];
            missing += " [" + std::to_string(int(x)) + "," + monomial_str(B.elems[b]) + "]";
          }
        throw KCapExceeded("rank " + std::to_string(stage.rank) + " of " + std::to_string(mcount) +
                           " at length " + std::to_string(len) + " with k cap " +
                           std::to_string(opts.k_cap) + "; unpivoted:" + missing);
      }
      for (int col = 0; col < mcount && stage.rank < mcount; ++col) {
        auto [x, b] = stage.cols[static_cast<size_t>(col)];
        LieMonomial m(1, x);
        m.append(B.elems[b]);
        if (auto v = monomial_to_basis(m, T, st)) {
          if (!resolved_done[col]) {
            resolved_done[col] = 1;
            stage.insert_row({{col, FPoly::constant(K.one(), K)}}, std::move(*v));
          }
          if (!enrich) continue;
        }
        // Jacobi against the parent decomposition b = [y, b']: the solved
        // rows of [x, b'] and [x, y] enter as semantic values, which makes
        // these relations independent of the syntactic unfoldings below
        if ((k == 1 || enrich) && b >= g.n()) {
          Gen y = B.parent[b].first;
          int bp = B.parent[b].second;
          MVec acc;
          const FPoly one = FPoly::constant(K.one(), K);
          auto rxbp = T.lookup(x, bp, K);
          stage.apply_split(y, *rxbp, one, acc);
          auto rxy = T.lookup(x, static_cast<int>(y), K);
          for (const auto& [e, ce] : *rxy) {
            if (B.length_of(e) == 1) {
              auto reb = T.lookup(B.elems[static_cast<size_t>(e)][0], bp, K);
              acc.b = vec_add(acc.b, vec_scale(*reb, ce, K), K);
            } else {
              Gen u = B.elems[static_cast<size_t>(e)][0];
              Gen v = B.elems[static_cast<size_t>(e)][1];
              auto rvb = T.lookup(v, bp, K);
              stage.apply_split(u, *rvb, ce, acc);
              auto rub = T.lookup(u, bp, K);
              stage.apply_split(v, *rub, ce.negated(K), acc);
            }
          }
          auto lhs = vec_add({{col, FPoly::constant(K.one(), K)}},
                             vec_scale(acc.m, FPoly::constant(K.from_int(-1), K), K), K);
          stage.insert_row(std::move(lhs), std::move(acc.b));
          for (int depth = 0; depth + 2 <= len && stage.rank < mcount; ++depth)
            stage.ancestor_rotation(col, x, b, depth);
          if (stage.rank >= mcount) break;
        }
        // MonomialRelations(M, k, m)
        int l = static_cast<int>(m.size());
        if (l - k + 1 >= 3) {
          LieMonomial suffix(m, static_cast<size_t>(k - 1));
          ExprComb s = jacobi_unfold(suffix, K);
          MVec acc;
          for (const auto& [e, c] : s.terms()) {
            assert(e->is_leaf());
            LieMonomial w(m, 0, static_cast<size_t>(k - 1));
            w.append(e->leaf());
            stage.split_word(w, c, acc);
          }
          // m = acc  =>  lhs e_m - acc.m | rhs acc.b
          auto lhs = vec_add({{col, FPoly::constant(K.one(), K)}},
                             vec_scale(acc.m, FPoly::constant(K.from_int(-1), K), K), K);
          stage.insert_row(std::move(lhs), std::move(acc.b));
        }
        for (int i = 1; i <= k && stage.rank < mcount; ++i)
          for (int j = i + 3; j <= l && stage.rank < mcount; ++j) {
            if (m[static_cast<size_t>(i - 1)] != m[static_cast<size_t>(j - 1)]) continue;
            ExprComb s = shorten_repeat(m, i, j, st, T);
            MVec acc;
            for (const auto& [e, c] : s.terms()) stage.split_expr(e, c, acc);
            auto lhs = vec_add({{col, FPoly::constant(K.one(), K)}},
                               vec_scale(acc.m, FPoly::constant(K.from_int(-1), K), K), K);
            stage.insert_row(std::move(lhs), std::move(acc.b));
          }
      }
      if (stage.rank == rank_before && !enrich) {
        enrich = true;  // widen the relation pool before burning a k step
      } else {
        enrich = false;
        ++k;
      }
    }

    // read off the table rows
    for (int col = 0; col < mcount; ++col) {
      const auto& row = stage.rows[static_cast<size_t>(stage.pivot_row[static_cast<size_t>(col)])];
      assert(row.lhs.size() == 1 && row.lhs[0].first == col);
      const FPoly& alpha = row.lhs[0].second;
      BasisVec v;
      if (alpha.is_constant()) {
        if (K.is_one(alpha.constant_value(K)))
          v = row.rhs;
        else
          v = vec_scale(row.rhs, FPoly::constant(K.inv(alpha.constant_value(K)), K), K);
      } else {
        for (const auto& [c, p] : row.rhs) {
          auto q = p.div_exact(alpha, K);
          if (!q)
            throw SingularSystem("non-constant denominator at length " + std::to_string(len) +
                                 "; localization of R_F would be required");
          v.emplace_back(c, std::move(*q));
        }
      }
      auto [x, b] = stage.cols[static_cast<size_t>(col)];
      T.set_row(x, b, std::move(v));
    }
    T.mark_completed(len);
    if (opts.on_stage_complete) opts.on_stage_complete(T, len, std::move(stage.harvested));
  }
  return T;
}

}  // namespace extremal
