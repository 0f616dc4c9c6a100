#include "extremal/fpoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace extremal {

FMonomial FMonomial::mul(const FMonomial& a, const FMonomial& b) {
  FMonomial r;
  r.exps.reserve(a.exps.size() + b.exps.size());
  size_t i = 0, j = 0;
  while (i < a.exps.size() && j < b.exps.size()) {
    if (a.exps[i].first == b.exps[j].first) {
      r.exps.emplace_back(a.exps[i].first, a.exps[i].second + b.exps[j].second);
      ++i;
      ++j;
    } else if (a.exps[i].first < b.exps[j].first) {
      r.exps.push_back(a.exps[i++]);
    } else {
      r.exps.push_back(b.exps[j++]);
    }
  }
  for (; i < a.exps.size(); ++i) r.exps.push_back(a.exps[i]);
  for (; j < b.exps.size(); ++j) r.exps.push_back(b.exps[j]);
  return r;
}

bool fmon_less(const FMonomial& a, const FMonomial& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  // compare from the largest variable down
  auto ia = a.exps.rbegin(), ib = b.exps.rbegin();
  while (ia != a.exps.rend() && ib != b.exps.rend()) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return false;  // equal
}

FPoly FPoly::constant(Scalar c, const FieldContext& K) {
  FPoly p;
  if (!K.is_zero(c)) p.terms_.emplace_back(FMonomial::one(), std::move(c));
  return p;
}

FPoly FPoly::variable(VarId v, const FieldContext& K) {
  FPoly p;
  p.terms_.emplace_back(FMonomial::var(v), K.one());
  return p;
}

Scalar FPoly::constant_value(const FieldContext& K) const {
  assert(is_constant());
  return terms_.empty() ? K.zero() : terms_[0].second;
}

FPoly FPoly::add(const FPoly& a, const FPoly& b, const FieldContext& K) {
  FPoly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  size_t i = 0, j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    const FMonomial& ma = a.terms_[i].first;
    const FMonomial& mb = b.terms_[j].first;
    if (ma == mb) {
      Scalar c = K.add(a.terms_[i].second, b.terms_[j].second);
      if (!K.is_zero(c)) r.terms_.emplace_back(ma, std::move(c));
      ++i;
      ++j;
    } else if (fmon_less(mb, ma)) {
      r.terms_.push_back(a.terms_[i++]);
    } else {
      r.terms_.push_back(b.terms_[j++]);
    }
  }
  for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
  for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
  return r;
}

FPoly FPoly::sub(const FPoly& a, const FPoly& b, const FieldContext& K) {
  return add(a, b.negated(K), K);
}

FPoly FPoly::mul(const FPoly& a, const FPoly& b, const FieldContext& K) {
  if (a.is_constant()) return a.is_zero() ? FPoly() : b.scaled(a.terms_[0].second, K);
  if (b.is_constant()) return b.is_zero() ? FPoly() : a.scaled(b.terms_[0].second, K);
  FPoly r;
  for (const auto& ta : a.terms_) {
    FPoly part;
    part.terms_.reserve(b.terms_.size());
    for (const auto& tb : b.terms_) {
      Scalar c = K.mul(ta.second, tb.second);
      if (!K.is_zero(c)) part.terms_.emplace_back(FMonomial::mul(ta.first, tb.first), std::move(c));
    }
    std::sort(part.terms_.begin(), part.terms_.end(),
              [](const Term& x, const Term& y) { return fmon_less(y.first, x.first); });
    r = add(r, part, K);
  }
  return r;
}

FPoly FPoly::scaled(const Scalar& c, const FieldContext& K) const {
  FPoly r;
  if (K.is_zero(c)) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.emplace_back(t.first, K.mul(t.second, c));
  return r;
}

FPoly FPoly::negated(const FieldContext& K) const {
  FPoly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.emplace_back(t.first, K.neg(t.second));
  return r;
}

bool FPoly::equals(const FPoly& o, const FieldContext& K) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].first == o.terms_[i].first) || !K.eq(terms_[i].second, o.terms_[i].second))
      return false;
  return true;
}

bool FPoly::mentions(VarId v) const {
  for (const auto& t : terms_)
    for (const auto& [w, e] : t.first.exps)
      if (w == v) return true;
  return false;
}

void FPoly::collect_vars(std::vector<char>& present) const {
  for (const auto& t : terms_)
    for (const auto& [w, e] : t.first.exps) {
      if (present.size() <= static_cast<size_t>(w)) present.resize(w + 1, 0);
      present[w] = 1;
    }
}

FPoly FPoly::substituted(VarId v, const FPoly& e, const FieldContext& K) const {
  if (!mentions(v)) return *this;
  FPoly out;
  for (const auto& t : terms_) {
    int exp = 0;
    FMonomial rest;
    for (const auto& [w, k] : t.first.exps) {
      if (w == v)
        exp = k;
      else
        rest.exps.emplace_back(w, k);
    }
    FPoly part = FPoly::constant(t.second, K);
    if (!rest.exps.empty()) {
      FPoly m;
      m.terms_.emplace_back(std::move(rest), t.second);
      part = std::move(m);
    }
    for (int i = 0; i < exp; ++i) part = mul(part, e, K);
    out = add(out, part, K);
  }
  return out;
}

Scalar FPoly::evaluate(const std::vector<Scalar>& by_var, const FieldContext& K) const {
  Scalar acc = K.zero();
  for (const auto& t : terms_) {
    Scalar v = t.second;
    for (const auto& [w, e] : t.first.exps) {
      assert(static_cast<size_t>(w) < by_var.size());
      for (int i = 0; i < e; ++i) v = K.mul(v, by_var[w]);
    }
    acc = K.add(acc, v);
  }
  return acc;
}

std::vector<std::pair<VarId, Scalar>> FPoly::linear_only_vars(const FieldContext& K) const {
  // count occurrences of each variable across terms
  std::vector<std::pair<VarId, Scalar>> out;
  std::vector<std::pair<VarId, int>> count;  // var -> number of terms mentioning it
  for (const auto& t : terms_)
    for (const auto& [w, e] : t.first.exps) {
      auto it = std::find_if(count.begin(), count.end(), [&](auto& p) { return p.first == w; });
      if (it == count.end())
        count.emplace_back(w, 1);
      else
        ++it->second;
    }
  for (const auto& t : terms_) {
    if (t.first.exps.size() == 1 && t.first.exps[0].second == 1) {
      VarId v = t.first.exps[0].first;
      auto it = std::find_if(count.begin(), count.end(), [&](auto& p) { return p.first == v; });
      if (it->second == 1) out.emplace_back(v, t.second);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

FPoly FPoly::div_scalar(const Scalar& c, const FieldContext& K) const { return scaled(K.inv(c), K); }

std::optional<FPoly> FPoly::div_exact(const FPoly& d, const FieldContext& K) const {
  if (d.is_zero()) return std::nullopt;
  if (d.is_constant()) return div_scalar(d.constant_value(K), K);
  FPoly rem = *this;
  FPoly quot;
  while (!rem.is_zero()) {
    const FMonomial& lm = rem.terms_.front().first;
    const FMonomial& dm = d.terms_.front().first;
    // lm / dm
    FMonomial q;
    size_t i = 0;
    for (const auto& [w, e] : dm.exps) {
      while (i < lm.exps.size() && lm.exps[i].first < w) {
        q.exps.push_back(lm.exps[i]);
        ++i;
      }
      if (i >= lm.exps.size() || lm.exps[i].first != w || lm.exps[i].second < e) return std::nullopt;
      if (lm.exps[i].second > e) q.exps.emplace_back(w, lm.exps[i].second - e);
      ++i;
    }
    for (; i < lm.exps.size(); ++i) q.exps.push_back(lm.exps[i]);
    std::sort(q.exps.begin(), q.exps.end());
    Scalar qc = K.div(rem.terms_.front().second, d.terms_.front().second);
    FPoly qt;
    qt.terms_.emplace_back(std::move(q), std::move(qc));
    quot = add(quot, qt, K);
    rem = sub(rem, mul(qt, d, K), K);
  }
  return quot;
}

std::string FPoly::str(const FieldContext& K, const std::function<std::string(VarId)>& var_name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = K.str(t.second);
    bool neg = !c.empty() && c[0] == '-';
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    if (neg) c = c.substr(1);
    if (t.first.is_unit()) {
      os << c;
    } else {
      if (c != "1") os << c << "*";
      bool fv = true;
      for (const auto& [w, e] : t.first.exps) {
        if (!fv) os << "*";
        fv = false;
        os << var_name(w);
        if (e > 1) os << "^" << e;
      }
    }
  }
  return os.str();
}

FPoly FPoly::converted(const FieldContext& to) const {
  FPoly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Scalar c = convert_scalar(t.second, to);
    if (!to.is_zero(c)) r.terms_.emplace_back(t.first, std::move(c));
  }
  return r;
}

}  // namespace extremal
