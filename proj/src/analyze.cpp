#include "extremal/analyze.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

namespace extremal {

namespace {

ScalarVec sv_add(const ScalarVec& a, const ScalarVec& b, const FieldContext& K) {
  ScalarVec r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      Scalar c = K.add(a[i].second, b[j].second);
      if (!K.is_zero(c)) r.emplace_back(a[i].first, std::move(c));
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

ScalarVec sv_scale(const ScalarVec& a, const Scalar& c, const FieldContext& K) {
  ScalarVec r;
  if (K.is_zero(c)) return r;
  r.reserve(a.size());
  for (const auto& [i, s] : a) {
    Scalar q = K.mul(s, c);
    if (!K.is_zero(q)) r.emplace_back(i, std::move(q));
  }
  return r;
}

bool sv_eq(const ScalarVec& a, const ScalarVec& b, const FieldContext& K) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !K.eq(a[i].second, b[i].second)) return false;
  return true;
}

/* sparse row-echelon workspace over K */
struct Echelon {
  const FieldContext* K;
  std::vector<ScalarVec> rows;  // monic, pivot = first entry
  std::map<int, int> pivot;     // column -> row index

  explicit Echelon(const FieldContext& k) : K(&k) {}

  bool insert(ScalarVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    v = sv_scale(v, K->inv(v.front().second), *K);
    pivot.emplace(v.front().first, static_cast<int>(rows.size()));
    rows.push_back(std::move(v));
    return true;
  }

  ScalarVec reduce(ScalarVec v) const {
    while (!v.empty()) {
      auto it = pivot.find(v.front().first);
      if (it == pivot.end()) break;
      v = sv_add(v, sv_scale(rows[it->second], K->neg(v.front().second), *K), *K);
    }
    return v;
  }

  int rank() const { return static_cast<int>(rows.size()); }
};

}  // namespace

void LieAlgebraK::set_product(int i, int j, ScalarVec v) {
  ScalarVec neg;
  neg.reserve(v.size());
  for (const auto& [c, s] : v) neg.emplace_back(c, K_->neg(s));
  prod_[static_cast<size_t>(j) * dim_ + i] = std::move(neg);
  prod_[static_cast<size_t>(i) * dim_ + j] = std::move(v);
}

ScalarVec LieAlgebraK::bracket(const ScalarVec& u, const ScalarVec& v) const {
  ScalarVec out;
  for (const auto& [i, ci] : u)
    for (const auto& [j, cj] : v) {
      if (i == j) continue;
      out = sv_add(out, sv_scale(product(i, j), K_->mul(ci, cj), *K_), *K_);
    }
  return out;
}

ScalarVec LieAlgebraK::ad_apply(int i, const ScalarVec& v) const {
  ScalarVec out;
  for (const auto& [j, cj] : v) {
    if (i == j) continue;
    out = sv_add(out, sv_scale(product(i, j), cj, *K_), *K_);
  }
  return out;
}

LieAlgebraK specialize(const MultTable& T, const FSetState& st, const std::vector<Scalar>& v) {
  const FieldContext& K = st.field();
  const MonomialBasis& B = st.basis();
  const int dim = B.size();
  const int n = st.graph().n();

  std::vector<Scalar> by_var(static_cast<size_t>(st.var_count()), K.zero());
  auto act = st.active_vars();
  assert(act.size() == v.size());
  for (size_t i = 0; i < act.size(); ++i) by_var[static_cast<size_t>(act[i])] = v[i];

  // generator rows, evaluated once
  std::vector<ScalarVec> gen_row(static_cast<size_t>(n) * dim);
  for (int x = 0; x < n; ++x)
    for (int b = 0; b < dim; ++b) {
      if (b == x) continue;
      auto row = T.lookup(static_cast<Gen>(x), b, K);
      assert(row);
      ScalarVec sv;
      for (const auto& [c, p] : *row) {
        Scalar s = p.evaluate(by_var, K);
        if (!K.is_zero(s)) sv.emplace_back(c, std::move(s));
      }
      gen_row[static_cast<size_t>(x) * dim + b] = std::move(sv);
    }

  // extend on demand: [b,c] for b = [x,b'] via ad_b = ad_x ad_b' - ad_b' ad_x
  LieAlgebraK L(dim, K);
  std::vector<char> done(static_cast<size_t>(dim) * dim, 0);
  auto apply_gen_sv = [&](int x, const ScalarVec& u) {
    ScalarVec out;
    for (const auto& [c, s] : u) {
      if (c == x) continue;
      out = sv_add(out, sv_scale(gen_row[static_cast<size_t>(x) * dim + c], s, K), K);
    }
    return out;
  };
  std::function<const ScalarVec&(int, int)> pp = [&](int b, int c) -> const ScalarVec& {
    static const ScalarVec kZero;
    if (b == c) return kZero;
    if (done[static_cast<size_t>(b) * dim + c]) return L.product(b, c);
    done[static_cast<size_t>(b) * dim + c] = 1;
    done[static_cast<size_t>(c) * dim + b] = 1;
    ScalarVec out;
    if (b < n) {
      out = gen_row[static_cast<size_t>(b) * dim + c];
    } else if (c < n) {
      out = sv_scale(pp(c, b), K.from_int(-1), K);
    } else {
      Gen x = B.parent[b].first;
      int bp = B.parent[b].second;
      ScalarVec t1 = apply_gen_sv(x, pp(bp, c));
      ScalarVec t2;
      for (const auto& [w, s] : gen_row[static_cast<size_t>(x) * dim + c])
        t2 = sv_add(t2, sv_scale(pp(bp, w), s, K), K);
      out = sv_add(t1, sv_scale(t2, K.from_int(-1), K), K);
    }
    L.set_product(b, c, std::move(out));
    return L.product(b, c);
  };
  for (int b = 0; b < dim; ++b)
    for (int c = b + 1; c < dim; ++c) pp(b, c);
  return L;
}

std::vector<std::string> verify_lie(const LieAlgebraK& L, const SimpleGraph& g, const FSetState& st,
                                    const std::vector<Scalar>& v, std::uint64_t sample_seed) {
  const FieldContext& K = L.field();
  std::vector<std::string> checks;
  const int d = L.dim();

  auto jacobi_of = [&](int a, int b, int c) {
    ScalarVec r = L.bracket(ScalarVec{{a, K.one()}}, L.product(b, c));
    r = sv_add(r, L.bracket(ScalarVec{{b, K.one()}}, L.product(c, a)), K);
    r = sv_add(r, L.bracket(ScalarVec{{c, K.one()}}, L.product(a, b)), K);
    return r;
  };
  if (d <= 60) {
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b)
        for (int c = b + 1; c < d; ++c)
          if (!jacobi_of(a, b, c).empty())
            throw VerificationFailure("Jacobi fails at (" + std::to_string(a) + "," + std::to_string(b) +
                                      "," + std::to_string(c) + ")");
    checks.push_back("jacobi-exhaustive");
  } else {
    SplitMix64 rng(sample_seed ? sample_seed : 0x6a09e667f3bcc908ull);
    for (int t = 0; t < 10000; ++t) {
      int a = static_cast<int>(rng.next() % d), b = static_cast<int>(rng.next() % d),
          c = static_cast<int>(rng.next() % d);
      if (a == b || b == c || a == c) continue;
      if (!jacobi_of(a, b, c).empty())
        throw VerificationFailure("Jacobi fails at sampled (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
    }
    checks.push_back("jacobi-sampled-10000");
  }

  std::vector<Scalar> by_var(static_cast<size_t>(st.var_count()), K.zero());
  auto act = st.active_vars();
  for (size_t i = 0; i < act.size() && i < v.size(); ++i) by_var[static_cast<size_t>(act[i])] = v[i];
  for (int x = 0; x < g.n(); ++x)
    for (int b = 0; b < d; ++b) {
      ScalarVec got = L.ad_apply(x, L.product(x, b));
      Scalar want = st.r(static_cast<Gen>(x), b).evaluate(by_var, K);
      ScalarVec expect;
      if (!K.is_zero(want)) expect.emplace_back(x, std::move(want));
      if (!sv_eq(got, expect, K))
        throw VerificationFailure("extremality fails at x=" + std::to_string(x) + ", b=" +
                                  std::to_string(b));
    }
  checks.push_back("extremality-all-pairs");

  for (auto [x, y] : g.nonedges())
    if (!L.product(x, y).empty())
      throw VerificationFailure("nonedge commutation fails at (" + std::to_string(x) + "," +
                                std::to_string(y) + ")");
  checks.push_back("nonedge-commutation");
  return checks;
}

namespace {

Scalar killing_entry(const LieAlgebraK& L, int a, int b) {
  const FieldContext& K = L.field();
  Scalar tr = K.zero();
  for (int k = 0; k < L.dim(); ++k) {
    const ScalarVec& w = L.product(b, k);
    if (w.empty()) continue;
    ScalarVec u = L.ad_apply(a, w);
    for (const auto& [i, c] : u)
      if (i == k) {
        tr = K.add(tr, c);
        break;
      }
  }
  return tr;
}

struct RadicalInfo {
  int rad_dim = 0;
  std::string method;
  bool have_quotient = false;
  Echelon radspace;
  std::vector<int> keep;  // coordinate columns representing the quotient
};

RadicalInfo radical_info(const LieAlgebraK& L) {
  const FieldContext& K = L.field();
  const int d = L.dim();
  RadicalInfo info{0, "", false, Echelon(K), {}};

  Echelon derived(K);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) derived.insert(L.product(i, j));

  // gram rows: for each derived-basis vector w, the functional i -> kappa(e_i, w)
  Echelon gram(K);
  std::vector<std::vector<Scalar>> kappa_cache(static_cast<size_t>(d));
  auto kappa_row = [&](int i) -> const std::vector<Scalar>& {
    auto& row = kappa_cache[static_cast<size_t>(i)];
    if (row.empty()) {
      row.reserve(static_cast<size_t>(d));
      for (int j = 0; j < d; ++j) row.push_back(killing_entry(L, i, j));
    }
    return row;
  };
  for (const auto& w : derived.rows) {
    ScalarVec row;
    for (int i = 0; i < d; ++i) {
      Scalar s = K.zero();
      for (const auto& [l, c] : w) s = K.add(s, K.mul(c, kappa_row(i)[static_cast<size_t>(l)]));
      if (!K.is_zero(s)) row.emplace_back(i, std::move(s));
    }
    gram.insert(std::move(row));
  }
  info.rad_dim = d - gram.rank();

  // kernel of the gram rows (the radical candidate space)
  std::vector<ScalarVec> rows = gram.rows;
  const std::map<int, int>& piv = gram.pivot;
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    ScalarVec pr = rows[static_cast<size_t>(it->second)];
    for (auto& r : rows) {
      if (r.empty() || r.front().first == it->first) continue;
      for (const auto& [c, s] : r)
        if (c == it->first) {
          r = sv_add(r, sv_scale(pr, K.neg(s), K), K);
          break;
        }
    }
    rows[static_cast<size_t>(it->second)] = std::move(pr);
  }
  for (int col = 0; col < d; ++col) {
    if (piv.count(col)) continue;
    ScalarVec kv{{col, K.one()}};
    for (const auto& [pc, ri] : piv)
      for (const auto& [c, s] : rows[static_cast<size_t>(ri)])
        if (c == col) {
          kv = sv_add(kv, ScalarVec{{pc, K.neg(s)}}, K);
          break;
        }
    std::sort(kv.begin(), kv.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    info.radspace.insert(std::move(kv));
  }
  for (int c = 0; c < d; ++c)
    if (!info.radspace.pivot.count(c)) info.keep.push_back(c);
  info.have_quotient = info.radspace.rank() == info.rad_dim;
  return info;
}

LieAlgebraK make_quotient(const LieAlgebraK& L, const RadicalInfo& info) {
  const FieldContext& K = L.field();
  std::map<int, int> pos;
  for (size_t i = 0; i < info.keep.size(); ++i) pos[info.keep[i]] = static_cast<int>(i);
  LieAlgebraK Q(static_cast<int>(info.keep.size()), K);
  for (size_t i = 0; i < info.keep.size(); ++i)
    for (size_t j = i + 1; j < info.keep.size(); ++j) {
      ScalarVec w = info.radspace.reduce(L.product(info.keep[i], info.keep[j]));
      ScalarVec q;
      for (const auto& [c, s] : w) q.emplace_back(pos.at(c), s);
      Q.set_product(static_cast<int>(i), static_cast<int>(j), std::move(q));
    }
  return Q;
}

bool is_perfect(const LieAlgebraK& L) {
  Echelon e(L.field());
  for (int i = 0; i < L.dim(); ++i)
    for (int j = i + 1; j < L.dim(); ++j) e.insert(L.product(i, j));
  return e.rank() == L.dim();
}

bool killing_nondegenerate(const LieAlgebraK& L) {
  const FieldContext& K = L.field();
  Echelon e(K);
  for (int i = 0; i < L.dim(); ++i) {
    ScalarVec row;
    for (int j = 0; j < L.dim(); ++j) {
      Scalar s = killing_entry(L, i, j);
      if (!K.is_zero(s)) row.emplace_back(j, std::move(s));
    }
    e.insert(std::move(row));
  }
  return e.rank() == L.dim();
}

std::optional<int> rank_estimate(const LieAlgebraK& Q, std::uint64_t seed) {
  const FieldContext& K = Q.field();
  if (K.is_rationals()) return std::nullopt;  // estimated over finite fields only
  const int d = Q.dim();
  if (d == 0) return 0;
  SplitMix64 rng(seed);
  int best = d;
  for (int trial = 0; trial < 5; ++trial) {
    ScalarVec z;
    for (int i = 0; i < d; ++i) {
      Scalar s = K.from_int(static_cast<long>(rng.next() % K.p()));
      if (!K.is_zero(s)) z.emplace_back(i, std::move(s));
    }
    std::vector<ScalarVec> img(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) img[static_cast<size_t>(i)] = ScalarVec{{i, K.one()}};
    int prev_rank = d;
    for (int it = 0; it < d; ++it) {
      for (auto& w : img) w = Q.bracket(z, w);
      Echelon e(K);
      for (const auto& w : img) e.insert(w);
      if (e.rank() == prev_rank) break;
      prev_rank = e.rank();
    }
    best = std::min(best, d - prev_rank);
  }
  return best;
}

}  // namespace

std::pair<std::optional<int>, std::string> radical_dimension(const LieAlgebraK& L) {
  const FieldContext& K = L.field();
  RadicalInfo info = radical_info(L);
  if (K.is_rationals()) return {info.rad_dim, "killing-perp (exact, char 0)"};
  if (!info.have_quotient) return {std::nullopt, "undetermined (kernel mismatch)"};
  if (info.rad_dim == L.dim()) return {info.rad_dim, "killing-perp (whole algebra)"};
  LieAlgebraK Q = make_quotient(L, info);
  if (!is_perfect(Q)) return {std::nullopt, "undetermined (quotient not perfect)"};
  if (!killing_nondegenerate(Q)) return {std::nullopt, "undetermined (degenerate induced form)"};
  return {info.rad_dim, "killing-perp validated (perfect quotient, nondegenerate form)"};
}

std::string classify_quotient(int quotient_dim, std::optional<int> rank_est) {
  static const std::map<int, std::pair<std::string, int>> lut = {
      {3, {"A1", 1}},  {8, {"A2", 2}},  {10, {"B2", 2}}, {15, {"A3", 3}},
      {21, {"B3", 3}}, {24, {"A4", 4}}, {28, {"D4", 4}}, {36, {"B4", 4}},
      {45, {"D5", 5}}, {52, {"F4", 4}}, {78, {"E6", 6}}, {133, {"E7", 7}}};
  if (quotient_dim == 0) return "trivial";
  auto it = lut.find(quotient_dim);
  if (it == lut.end()) return "unclassified";
  if (rank_est && *rank_est != it->second.second) return "unclassified";
  return it->second.first;
}

AnalysisReport analyze(const LieAlgebraK& L, std::uint64_t seed) {
  const FieldContext& K = L.field();
  AnalysisReport rep;
  rep.dim = L.dim();
  RadicalInfo info = radical_info(L);
  if (K.is_rationals()) {
    rep.radical_method = "killing-perp (exact, char 0)";
  } else if (!info.have_quotient) {
    rep.radical_method = "undetermined (kernel mismatch)";
    return rep;
  }
  std::optional<LieAlgebraK> Q;
  if (info.have_quotient && info.rad_dim < L.dim()) Q.emplace(make_quotient(L, info));
  if (!K.is_rationals() && info.rad_dim < L.dim()) {
    if (!is_perfect(*Q)) {
      rep.radical_method = "undetermined (quotient not perfect)";
      return rep;
    }
    if (!killing_nondegenerate(*Q)) {
      rep.radical_method = "undetermined (degenerate induced form)";
      return rep;
    }
    rep.radical_method = "killing-perp validated";
  } else if (!K.is_rationals()) {
    rep.radical_method = "killing-perp (whole algebra)";
  }
  rep.radical_dim = info.rad_dim;
  rep.quotient_dim = L.dim() - info.rad_dim;
  if (*rep.quotient_dim == 0) {
    rep.type_label = "trivial";
    return rep;
  }
  std::optional<int> rk = Q ? rank_estimate(*Q, seed) : std::nullopt;
  rep.type_label = classify_quotient(*rep.quotient_dim, rk);
  return rep;
}

SurveyResult generic_survey(const MultTable& T, const FSetState& st, const FieldContext& Kp,
                            int trials, std::uint64_t seed) {
  (void)Kp;
  SurveyResult res;
  res.trials = trials;
  std::map<std::pair<int, std::string>, int> tally;
  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<Scalar> v = random_point(st.field(), st.active_count(), rng);
    LieAlgebraK L = specialize(T, st, v);
    AnalysisReport rep = analyze(L, rng.next());
    int qd = rep.quotient_dim ? *rep.quotient_dim : -1;
    tally[{qd, rep.type_label}]++;
    res.samples.push_back(std::move(rep));
  }
  int best = 0;
  for (const auto& [key, count] : tally)
    if (count > best) {
      best = count;
      res.majority_quotient_dim = key.first;
      res.majority_type = key.second;
    }
  res.frequency = trials ? static_cast<double>(best) / trials : 0.0;
  return res;
}

std::optional<int> nilpotency_class(const LieAlgebraK& L) {
  const FieldContext& K = L.field();
  const int d = L.dim();
  Echelon cur(K);
  for (int i = 0; i < d; ++i) cur.insert(ScalarVec{{i, K.one()}});
  for (int step = 1; step <= d + 1; ++step) {
    if (cur.rank() == 0) return step - 1;
    Echelon next(K);
    for (int i = 0; i < d; ++i)
      for (const auto& w : cur.rows) next.insert(L.ad_apply(i, w));
    if (next.rank() == cur.rank()) return std::nullopt;
    cur = std::move(next);
  }
  return std::nullopt;
}

std::vector<Scalar> random_point(const FieldContext& K, int count, SplitMix64& rng) {
  std::vector<Scalar> v;
  v.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    if (K.is_rationals())
      v.push_back(K.from_int(static_cast<long>(rng.next() % 19) - 9));
    else
      v.push_back(K.from_int(static_cast<long>(rng.next() % K.p())));
  }
  return v;
}

}  // namespace extremal
