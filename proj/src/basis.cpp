#include "extremal/basis.hpp"

#include <algorithm>

namespace extremal {

namespace {

// x*p - p*x
NCPoly commutator_with_gen(Gen x, const NCPoly& p, const FieldContext& K) {
  Word xw(1, x);
  NCPoly r = NCPoly::add_scaled_framed(NCPoly(), K.one(), xw, p, Word(), K);
  return NCPoly::add_scaled_framed(r, K.from_int(-1), Word(), p, xw, K);
}

}  // namespace

MonomialBasis compute_basis(const SimpleGraph& g, const FieldContext& K, int max_length,
                            std::string* gb_dump) {
  const int n = g.n();
  MonomialBasis B;
  B.n = n;
  B.per_length.assign(2, 0);
  B.per_length[1] = n;

  TruncatedGB gb(K, 1);
  IncrementalSpan span(K);
  std::vector<NCPoly> mu_nf(n);  // normal form of mu(b) per basis element

  // pending homogeneous ideal generators, released once the truncation reaches them
  std::vector<std::vector<NCPoly>> pending;
  auto defer = [&](NCPoly p) {
    if (p.is_zero()) return;
    size_t d = static_cast<size_t>(p.degree());
    if (pending.size() <= d) pending.resize(d + 1);
    pending[d].push_back(std::move(p));
  };

  for (int x = 0; x < n; ++x) {
    Word w(1, static_cast<Gen>(x));
    B.elems.push_back(w);
    B.index.emplace(w, x);
    B.parent.emplace_back(0, -1);
    mu_nf[x] = NCPoly::monomial(w, K.one(), K);
    span.reduce_or_insert(mu_nf[x], x);

    // x^2 and the sandwich relations mu([x,[x,y]]) of the generators
    Word ww(2, static_cast<Gen>(x));
    defer(NCPoly::monomial(ww, K.one(), K));
  }
  for (auto [i, j] : g.nonedges()) {
    NCPoly c = commutator_with_gen(static_cast<Gen>(i), mu_nf[j], K);
    defer(std::move(c));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      defer(commutator_with_gen(static_cast<Gen>(x),
                                commutator_with_gen(static_cast<Gen>(x), mu_nf[y], K), K));

  int round_begin = 0, round_end = n;
  int length = 2;
  while (round_begin < round_end && (max_length == 0 || length <= max_length)) {
    // raise the truncation and release pending generators of degree <= length
    std::vector<NCPoly> gens;
    for (size_t d = 0; d < pending.size() && d <= static_cast<size_t>(length); ++d) {
      for (auto& p : pending[d]) gens.push_back(std::move(p));
      pending[d].clear();
    }
    gb.extend(std::move(gens), length);

    int new_begin = B.size();
    for (int x = 0; x < n; ++x) {
      for (int b = round_begin; b < round_end; ++b) {
        NCPoly cand = gb.normal_form(commutator_with_gen(static_cast<Gen>(x), mu_nf[b], K));
        if (K.is_rationals()) cand.normalize_content(K);
        int id = B.size();
        auto dep = span.reduce_or_insert(cand, id);
        if (dep.has_value()) continue;
        Word w(1, static_cast<Gen>(x));
        w.append(B.elems[b]);
        B.elems.push_back(w);
        B.index.emplace(std::move(w), id);
        B.parent.emplace_back(static_cast<Gen>(x), b);
        mu_nf.push_back(std::move(cand));
      }
    }
    B.per_length.push_back(B.size() - new_begin);

    // sandwich relations of the round's new elements
    for (int b = new_begin; b < B.size(); ++b)
      for (int x = 0; x < n; ++x)
        defer(commutator_with_gen(static_cast<Gen>(x),
                                  commutator_with_gen(static_cast<Gen>(x), mu_nf[b], K), K));

    round_begin = new_begin;
    round_end = B.size();
    ++length;
  }
  while (!B.per_length.empty() && B.per_length.back() == 0) B.per_length.pop_back();

  if (gb_dump) *gb_dump = gb.dump(K);
  return B;
}

}  // namespace extremal
