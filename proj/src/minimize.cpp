#include "extremal/minimize.hpp"

#include <algorithm>
#include <set>

namespace extremal {

namespace {

struct Rel {
  FPoly t;
  std::string source;
};

/* Shared elimination core: pick a variable occurring only linearly in some
   pool entry, preferring the largest pair, substitute it away everywhere. */
struct Eliminator {
  FSetState& st;
  MultTable& T;
  std::vector<Rel>& pool;
  std::vector<CertStep>& log;
  const FieldContext& K;

  bool try_eliminate_one() {
    VarId best = -1;
    Scalar alpha;
    size_t best_rel = 0;
    for (size_t r = 0; r < pool.size(); ++r) {
      for (auto& [v, a] : pool[r].t.linear_only_vars(K)) {
        if (!st.is_active(v)) continue;  // stale mention cannot happen; keep the guard cheap
        if (v > best) {
          best = v;
          alpha = a;
          best_rel = r;
        }
      }
    }
    if (best < 0) return false;
    const FPoly& t = pool[best_rel].t;
    // r_y(c) = -(1/alpha) (t - alpha f_y(c))
    FPoly rest = FPoly::sub(t, FPoly::variable(best, K).scaled(alpha, K), K);
    FPoly expr = rest.scaled(K.neg(K.inv(alpha)), K);
    log.push_back({best, st.var_name(best), expr, pool[best_rel].source});
    st.eliminate(best, expr);
    T.substitute_var(best, expr, K);
    for (auto& rel : pool)
      if (!rel.t.is_zero()) rel.t = rel.t.substituted(best, expr, K);
    pool.erase(std::remove_if(pool.begin(), pool.end(), [](const Rel& r) { return r.t.is_zero(); }),
               pool.end());
    return true;
  }

  void run() {
    while (try_eliminate_one()) {
    }
  }
};

void feed_vec(std::vector<Rel>& pool, const BasisVec& v, const std::string& src,
              std::set<std::string>* dedupe, const FSetState& st) {
  for (const auto& [c, p] : v) {
    if (p.is_zero()) continue;
    if (dedupe) {
      std::string key = p.str(st.field(), [](VarId w) { return "v" + std::to_string(w); });
      if (!dedupe->insert(std::move(key)).second) continue;
    }
    pool.push_back({p, src});
  }
}

BasisVec extremality_relation(Gen y, int c, const FSetState& st, const MultTable& T) {
  const FieldContext& K = st.field();
  auto yc = T.lookup(y, c, K);
  BasisVec w = apply_gen(y, *yc, T, st);
  BasisVec fy{{static_cast<int>(y), st.r(y, c).negated(K)}};
  return vec_add(w, fy, K);
}

BasisVec jacobi_relation(int a, int b, int c, const FSetState& st, const MultTable& T) {
  const FieldContext& K = st.field();
  const FPoly one = FPoly::constant(K.one(), K);
  BasisVec ea{{a, one}}, eb{{b, one}}, ec{{c, one}};
  BasisVec r = bracket_vec(ea, T.pair_product(b, c, st), T, st);
  r = vec_add(r, bracket_vec(eb, T.pair_product(c, a, st), T, st), K);
  r = vec_add(r, bracket_vec(ec, T.pair_product(a, b, st), T, st), K);
  return r;
}

}  // namespace

int interleave_pass(FSetState& st, MultTable& T, int completed_len,
                    std::vector<BasisVec>&& harvested, std::vector<CertStep>& log) {
  const MonomialBasis& B = st.basis();
  std::vector<Rel> pool;
  for (const auto& v : harvested) feed_vec(pool, v, "harvest(" + std::to_string(completed_len) + ")", nullptr, st);

  for (VarId v : st.active_vars()) {
    const FVar& f = st.var(v);
    if (B.length_of(f.c) != completed_len - 1) continue;  // newly computable pairs only
    BasisVec rel = extremality_relation(f.y, f.c, st, T);
    feed_vec(pool, rel,
             "extremality(" + std::to_string(int(f.y)) + ",b" + std::to_string(f.c) + ")", nullptr, st);
  }
  // Jacobi triples with two generator arguments and fresh third argument
  for (int a = 0; a < st.graph().n(); ++a)
    for (int b = a + 1; b < st.graph().n(); ++b)
      for (int c = 0; c < B.size(); ++c) {
        if (B.length_of(c) != completed_len - 1) continue;
        if (c == a || c == b) continue;
        feed_vec(pool, jacobi_relation(a, b, c, st, T),
                 "jacobi(" + std::to_string(a) + "," + std::to_string(b) + ",b" + std::to_string(c) + ")",
                 nullptr, st);
      }

  size_t before = log.size();
  Eliminator{st, T, pool, log, st.field()}.run();
  return static_cast<int>(log.size() - before);
}

Certificate minimize_fset(FSetState& st, MultTable& T, const MinimizeOptions& opts) {
  const MonomialBasis& B = st.basis();
  const FieldContext& K = st.field();
  Certificate cert;
  std::vector<Rel> pool;
  std::set<std::string> dedupe;
  Eliminator elim{st, T, pool, cert.steps, K};

  // extremality relations for the surviving pairs
  for (VarId v : st.active_vars()) {
    const FVar& f = st.var(v);
    feed_vec(pool, extremality_relation(f.y, f.c, st, T),
             "extremality(" + std::to_string(int(f.y)) + ",b" + std::to_string(f.c) + ")", &dedupe, st);
  }
  elim.run();

  // Jacobi triples streamed by total degree, interleaved with elimination.
  // Triples headed by a generator suffice: the product of two non-generator
  // basis elements is defined by the recursion ad_[x,b'] = [ad_x, ad_b'], and
  // a commutator of derivations is a derivation, so once every ad_x respects
  // the Jacobi identity the remaining triples vanish identically as well.
  // Once F is empty and no residual is pending, every remaining relation is a
  // constant that must vanish at the point 0 of X, so the stream can stop.
  long seen = 0;
  bool complete = true;
  bool shortcut = false;
  const int n = st.graph().n();
  int maxsum = 2 * B.max_length();
  for (int degsum = 2; degsum <= maxsum && complete && !shortcut; ++degsum) {
    for (int x = 0; x < n && complete && !shortcut; ++x) {
      for (int b = 0; b < B.size() && complete && !shortcut; ++b) {
        if (b == x) continue;
        int rem = degsum - B.length_of(b);
        if (B.length_of(b) > rem) break;
        for (int c = b + 1; c < B.size(); ++c) {
          if (B.length_of(c) != rem) continue;
          if (c == x) continue;
          if (opts.triple_budget >= 0 && seen >= opts.triple_budget) {
            complete = false;
            break;
          }
          ++seen;
          feed_vec(pool, jacobi_relation(x, b, c, st, T),
                   "jacobi(" + std::to_string(x) + ",b" + std::to_string(b) + ",b" + std::to_string(c) + ")",
                   &dedupe, st);
          if (pool.size() >= 64) elim.run();
        }
      }
      if (!opts.exhaustive && st.active_count() == 0 && pool.empty()) shortcut = true;
    }
    elim.run();
    if (!opts.exhaustive && st.active_count() == 0 && pool.empty()) shortcut = true;
  }
  elim.run();

  cert.residual_count = static_cast<int>(pool.size());
  cert.free = pool.empty() && complete;
  for (const auto& r : pool)
    cert.residual.push_back(r.t.str(K, [&](VarId v) { return st.var_name(v); }));
  return cert;
}

MultTable replay_certificate(const Certificate& cert, const MultTable& pre, const FSetState& st) {
  MultTable t = pre;
  for (const auto& step : cert.steps) t.substitute_var(step.var, step.expr, st.field());
  return t;
}

std::string certify_affine_report(const FSetState& st, const Certificate& cert) {
  if (cert.free) {
    if (st.active_count() == 0) return "X = {0}; all generators are sandwiches at the unique point";
    return "X is isomorphic to the affine space K^" + std::to_string(st.active_count());
  }
  std::string s = "f-set is not certified free: " + std::to_string(cert.residual_count) +
                  " residual relation(s); X is the closed subvariety of K^" +
                  std::to_string(st.active_count()) + " cut out by:";
  for (const auto& r : cert.residual) s += "\n  " + r;
  return s;
}

}  // namespace extremal
