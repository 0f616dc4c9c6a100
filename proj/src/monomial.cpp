#include "extremal/monomial.hpp"

#include <cassert>

namespace extremal {

std::string monomial_str(const LieMonomial& m) {
  std::string s = "[";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(static_cast<int>(m[i]));
  }
  return s + "]";
}

ExprPtr BracketExpr::mono(LieMonomial m) {
  assert(!m.empty());
  auto e = std::shared_ptr<BracketExpr>(new BracketExpr());
  e->deg_ = static_cast<int>(m.size());
  e->m_ = std::move(m);
  return e;
}

ExprPtr BracketExpr::br(Ptr a, Ptr b) {
  if (a->is_leaf() && b->is_leaf() && a->leaf().size() == 1) {
    LieMonomial m = a->leaf();
    m.append(b->leaf());
    return mono(std::move(m));
  }
  auto e = std::shared_ptr<BracketExpr>(new BracketExpr());
  e->deg_ = a->degree() + b->degree();
  e->l_ = std::move(a);
  e->r_ = std::move(b);
  return e;
}

std::string BracketExpr::str() const {
  if (is_leaf()) return monomial_str(m_);
  return "[" + l_->str() + "," + r_->str() + "]";
}

int BracketExpr::compare(const BracketExpr& a, const BracketExpr& b) {
  if (a.is_leaf() != b.is_leaf()) return a.is_leaf() ? -1 : 1;
  if (a.is_leaf()) {
    if (a.m_ == b.m_) return 0;
    return word_less(a.m_, b.m_) ? -1 : 1;
  }
  if (int c = compare(*a.l_, *b.l_)) return c;
  return compare(*a.r_, *b.r_);
}

ExprComb jacobi_unfold(const LieMonomial& m, const FieldContext& K) {
  size_t l = m.size();
  if (l < 3) throw LengthTooShort("jacobi_unfold needs length >= 3");
  ExprComb out;

  // swapped head: [x2,[x1,[x3,...,xl]]]
  LieMonomial swapped = m;
  std::swap(swapped[0], swapped[1]);
  out.add(BracketExpr::mono(swapped), FPoly::constant(K.one(), K), K);

  // m = swapped - [M,N] with M = (x3..xl), N = (x1,x2); expanding [M,N] by
  // the derivation rule, each of the first |M|-1 letters of M either keeps
  // its place or is pushed in front of N in reverse order
  size_t k = l - 2;
  LieMonomial n(m, 0, 2);
  for (size_t mask = 0; mask < (size_t{1} << (k - 1)); ++mask) {
    LieMonomial w;
    w.reserve(l);
    for (size_t i = 0; i < k; ++i)
      if (i + 1 == k || !(mask & (size_t{1} << i))) w.push_back(m[2 + i]);
    int pushed = 0;
    for (size_t i = k - 1; i-- > 0;)
      if (mask & (size_t{1} << i)) {
        w.push_back(m[2 + i]);
        ++pushed;
      }
    w.append(n);
    // coefficient: -(-1)^pushed
    Scalar c = (pushed % 2 == 0) ? K.from_int(-1) : K.one();
    out.add(BracketExpr::mono(std::move(w)), FPoly::constant(c, K), K);
  }
  return out;
}

ExprComb regroup_prefix(const LieMonomial& m, int i, const FieldContext& K) {
  int l = static_cast<int>(m.size());
  if (i < 3 || i >= l) throw IndexOutOfRange("regroup position out of range");
  ExprComb out;
  ExprPtr head = BracketExpr::mono(LieMonomial(1, m[0]));

  // nested block term: (-1)^(i-1) [x1,[[x_{i-1},...,x2],[x_i,...,x_l]]]
  {
    LieMonomial block;
    for (int t = i - 2; t >= 1; --t) block.push_back(m[t]);
    LieMonomial tail(m, i - 1);
    ExprPtr inner = BracketExpr::br(BracketExpr::mono(std::move(block)), BracketExpr::mono(std::move(tail)));
    Scalar c = (i % 2 == 0) ? K.from_int(-1) : K.one();
    out.add(BracketExpr::br(head, inner), FPoly::constant(c, K), K);
  }

  // corrections from each application: (-1)^t [x1,[x_{t+1},[[x_t,...,x2],[x_{t+2},...,x_l]]]]
  for (int t = 2; t <= i - 2; ++t) {
    LieMonomial block;
    for (int s = t - 1; s >= 1; --s) block.push_back(m[s]);
    LieMonomial tail(m, t + 1);
    ExprPtr inner = BracketExpr::br(BracketExpr::mono(std::move(block)), BracketExpr::mono(std::move(tail)));
    ExprPtr e = BracketExpr::br(head, BracketExpr::br(BracketExpr::mono(LieMonomial(1, m[t])), inner));
    Scalar c = (t % 2 == 0) ? K.one() : K.from_int(-1);
    out.add(e, FPoly::constant(c, K), K);
  }
  return out;
}

}  // namespace extremal
