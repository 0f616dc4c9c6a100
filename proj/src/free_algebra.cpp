#include "extremal/free_algebra.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace extremal {

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += std::to_string(static_cast<int>(w[i]));
  }
  return s;
}

NCPoly NCPoly::monomial(Word w, Scalar c, const FieldContext& K) {
  NCPoly p;
  if (!K.is_zero(c)) p.terms_.emplace_back(std::move(w), std::move(c));
  return p;
}

bool NCPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  size_t d = terms_.front().first.size();
  for (const auto& t : terms_)
    if (t.first.size() != d) return false;
  return true;
}

void NCPoly::add_term(const Word& w, const Scalar& c, const FieldContext& K) {
  *this = add(*this, monomial(w, c, K), K);
}

NCPoly NCPoly::add(const NCPoly& a, const NCPoly& b, const FieldContext& K) {
  NCPoly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  size_t i = 0, j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    const Word& wa = a.terms_[i].first;
    const Word& wb = b.terms_[j].first;
    if (wa == wb) {
      Scalar c = K.add(a.terms_[i].second, b.terms_[j].second);
      if (!K.is_zero(c)) r.terms_.emplace_back(wa, std::move(c));
      ++i;
      ++j;
    } else if (word_less(wb, wa)) {
      r.terms_.push_back(a.terms_[i++]);
    } else {
      r.terms_.push_back(b.terms_[j++]);
    }
  }
  for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
  for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
  return r;
}

NCPoly NCPoly::sub(const NCPoly& a, const NCPoly& b, const FieldContext& K) {
  return add(a, b.scaled(K.from_int(-1), K), K);
}

NCPoly NCPoly::add_scaled_framed(const NCPoly& a, const Scalar& c, const Word& l, const NCPoly& m,
                                 const Word& r, const FieldContext& K) {
  NCPoly framed;
  framed.terms_.reserve(m.terms_.size());
  for (const auto& t : m.terms_) {
    Scalar nc = K.mul(c, t.second);
    if (K.is_zero(nc)) continue;
    Word w;
    w.reserve(l.size() + t.first.size() + r.size());
    w.append(l);
    w.append(t.first);
    w.append(r);
    framed.terms_.emplace_back(std::move(w), std::move(nc));
  }
  // framing words of equal degree preserves the order, so terms stay sorted
  return add(a, framed, K);
}

NCPoly NCPoly::mul(const NCPoly& a, const NCPoly& b, const FieldContext& K) {
  NCPoly r;
  for (const auto& ta : a.terms_) r = add_scaled_framed(r, ta.second, ta.first, b, Word(), K);
  return r;
}

NCPoly NCPoly::scaled(const Scalar& c, const FieldContext& K) const {
  NCPoly r;
  if (K.is_zero(c)) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.emplace_back(t.first, K.mul(t.second, c));
  return r;
}

void NCPoly::make_monic(const FieldContext& K) {
  if (terms_.empty() || K.is_one(terms_.front().second)) return;
  Scalar s = K.inv(terms_.front().second);
  for (auto& t : terms_) t.second = K.mul(t.second, s);
}

void NCPoly::normalize_content(const FieldContext& K) {
  if (terms_.empty()) return;
  if (!K.is_rationals()) {
    make_monic(K);
    return;
  }
  mpz_class den_lcm = 1, num_gcd = 0;
  for (const auto& t : terms_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.second.rat().get_den().get_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.second.rat().get_num().get_mpz_t());
  }
  if (den_lcm != 1) K.note_cleared(den_lcm);
  mpq_class f(den_lcm, num_gcd == 0 ? mpz_class(1) : num_gcd);
  f.canonicalize();
  if (sgn(terms_.front().second.rat()) < 0) f = -f;
  if (f == 1) return;
  Scalar fs = Scalar::rational(f);
  for (auto& t : terms_) t.second = K.mul(t.second, fs);
}

bool NCPoly::equals(const NCPoly& o, const FieldContext& K) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].first != o.terms_[i].first || !K.eq(terms_[i].second, o.terms_[i].second))
      return false;
  return true;
}

std::string NCPoly::str(const FieldContext& K) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << K.str(terms_[i].second) << "*" << word_str(terms_[i].first);
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<const NCPoly*> TruncatedGB::elements() const {
  std::vector<const NCPoly*> r;
  for (size_t i = 0; i < gens_.size(); ++i)
    if (alive_[i]) r.push_back(&gens_[i]);
  return r;
}

std::string TruncatedGB::dump(const FieldContext& K) const {
  std::ostringstream os;
  for (const NCPoly* p : elements()) os << p->str(K) << "\n";
  return os.str();
}

bool TruncatedGB::reducible_word(const Word& w, size_t* pos, int* gen_idx) const {
  Word sub;
  for (size_t len = 1; len <= w.size() && len < lw_by_len_.size(); ++len) {
    const auto& set = lw_by_len_[len];
    if (set.empty()) continue;
    for (size_t i = 0; i + len <= w.size(); ++i) {
      sub.assign(w, i, len);
      auto it = by_lw_.find(sub);
      if (it != by_lw_.end() && alive_[it->second]) {
        *pos = i;
        *gen_idx = it->second;
        return true;
      }
    }
  }
  return false;
}

NCPoly TruncatedGB::normal_form(const NCPoly& p) const {
  if (!p.is_zero() && p.degree() > trunc_)
    throw DegreeExceedsTruncation("degree " + std::to_string(p.degree()) + " exceeds truncation " +
                                  std::to_string(trunc_));
  NCPoly work = p;
  NCPoly out;
  size_t pos;
  int gi;
  while (!work.is_zero()) {
    const Word lw = work.leading_word();
    const Scalar lc = work.leading_coeff();
    if (reducible_word(lw, &pos, &gi)) {
      const NCPoly& g = gens_[gi];
      Word prefix(lw, 0, pos);
      Word suffix(lw, pos + g.leading_word().size());
      work = NCPoly::add_scaled_framed(work, K_->neg(lc), prefix, g, suffix, *K_);
    } else {
      out.add_term(lw, lc, *K_);
      work = NCPoly::add_scaled_framed(work, K_->neg(lc), Word(), NCPoly::monomial(lw, K_->one(), *K_),
                                       Word(), *K_);
    }
  }
  return out;
}

void TruncatedGB::insert_reduced(NCPoly p) {
  std::vector<NCPoly> work;
  work.push_back(std::move(p));
  while (!work.empty()) {
    NCPoly q = normal_form(work.back());
    work.pop_back();
    if (q.is_zero()) continue;
    q.normalize_content(*K_);
    q.make_monic(*K_);
    const Word& lw = q.leading_word();
    // retire any element whose leading word contains the new one
    for (size_t i = 0; i < gens_.size(); ++i) {
      if (!alive_[i]) continue;
      const Word& old = gens_[i].leading_word();
      if (old.size() >= lw.size() && old.find(lw) != Word::npos) {
        alive_[i] = 0;
        by_lw_.erase(old);
        lw_by_len_[old.size()].erase(old);
        work.push_back(std::move(gens_[i]));
        gens_[i] = NCPoly();
      }
    }
    int id = static_cast<int>(gens_.size());
    if (lw_by_len_.size() <= lw.size()) lw_by_len_.resize(lw.size() + 1);
    by_lw_[lw] = id;
    lw_by_len_[lw.size()].insert(lw);
    gens_.push_back(std::move(q));
    alive_.push_back(1);
  }
}

void TruncatedGB::extend(std::vector<NCPoly> new_gens, int d) {
  if (d > trunc_) {
    trunc_ = d;
    paired_ = 0;  // ambiguities skipped at the old bound become due; redo pairs
  }
  for (auto& g : new_gens) {
    assert(g.is_homogeneous());
    if (!g.is_zero() && g.degree() > trunc_)
      throw DegreeExceedsTruncation("generator degree exceeds truncation");
    insert_reduced(std::move(g));
  }
  complete_to(trunc_);
}

void TruncatedGB::complete_to(int d) {
  // overlap completion; new elements appended by insert_reduced are picked up
  // by the outer loop, so this runs until no ambiguity of degree <= d is left
  while (paired_ < gens_.size()) {
    size_t j = paired_++;
    if (!alive_[j]) continue;
    for (size_t i = 0; i <= j; ++i) {
      if (!alive_[j]) break;
      if (!alive_[i]) continue;
      for (int dir = 0; dir < 2; ++dir) {
        if (dir == 1 && i == j) continue;
        size_t a = dir ? j : i, b = dir ? i : j;
        if (!alive_[a] || !alive_[b]) continue;
        const Word u = gens_[a].leading_word();
        const Word v = gens_[b].leading_word();
        size_t kmax = std::min(u.size(), v.size()) - 1;
        for (size_t k = 1; k <= kmax; ++k) {
          if (!alive_[a] || !alive_[b]) break;
          int amb_deg = static_cast<int>(u.size() + v.size() - k);
          if (amb_deg > d) continue;
          if (u.compare(u.size() - k, k, v, 0, k) != 0) continue;
          Word vs(v, k);
          Word up(u, 0, u.size() - k);
          NCPoly s = NCPoly::sub(NCPoly::add_scaled_framed(NCPoly(), K_->one(), Word(), gens_[a], vs, *K_),
                                 NCPoly::add_scaled_framed(NCPoly(), K_->one(), up, gens_[b], Word(), *K_),
                                 *K_);
          NCPoly nf = normal_form(s);
          if (!nf.is_zero()) insert_reduced(std::move(nf));
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------

size_t IncrementalSpan::rows(int degree) const {
  if (degree < 0 || static_cast<size_t>(degree) >= by_degree_.size()) return 0;
  return by_degree_[degree].size();
}

std::optional<std::vector<std::pair<int, Scalar>>> IncrementalSpan::reduce_or_insert(NCPoly p,
                                                                                     int next_id) {
  std::unordered_map<int, Scalar> used;
  if (!p.is_zero()) {
    size_t d = static_cast<size_t>(p.degree());
    if (by_degree_.size() <= d) {
      by_degree_.resize(d + 1);
      pivot_.resize(d + 1);
    }
    auto& rows = by_degree_[d];
    auto& piv = pivot_[d];
    while (!p.is_zero()) {
      auto it = piv.find(p.leading_word());
      if (it == piv.end()) break;
      const Row& row = rows[it->second];
      Scalar c = p.leading_coeff();
      for (const auto& [e, rc] : row.combo) {
        auto [uit, fresh] = used.try_emplace(e, K_->zero());
        uit->second = K_->add(uit->second, K_->mul(c, rc));
        (void)fresh;
      }
      p = NCPoly::add_scaled_framed(p, K_->neg(c), Word(), row.nf, Word(), *K_);
    }
  }
  if (p.is_zero()) {
    std::vector<std::pair<int, Scalar>> v;
    for (auto& [e, c] : used)
      if (!K_->is_zero(c)) v.emplace_back(e, std::move(c));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }
  // independent: record monic row expressing NF(elem next_id)
  Scalar lam = p.leading_coeff();
  Scalar ilam = K_->inv(lam);
  Row row;
  row.combo.emplace_back(next_id, ilam);
  for (auto& [e, c] : used) {
    Scalar v = K_->neg(K_->mul(c, ilam));
    if (!K_->is_zero(v)) row.combo.emplace_back(e, std::move(v));
  }
  std::sort(row.combo.begin(), row.combo.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  row.nf = p.scaled(ilam, *K_);
  size_t d = static_cast<size_t>(row.nf.degree());
  pivot_[d][row.nf.leading_word()] = static_cast<int>(by_degree_[d].size());
  by_degree_[d].push_back(std::move(row));
  return std::nullopt;
}

}  // namespace extremal
