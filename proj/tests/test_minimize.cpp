#include <doctest.h>

#include <memory>

#include "extremal/minimize.hpp"

using namespace extremal;

namespace {

struct Built {
  std::unique_ptr<SimpleGraph> g;
  std::unique_ptr<FieldContext> K;
  std::unique_ptr<MonomialBasis> B;
  std::unique_ptr<FSetState> st;
  std::unique_ptr<MultTable> T;
};

Built build(const std::string& txt, FieldSpec fs) {
  Built r;
  r.g = std::make_unique<SimpleGraph>(parse_graph(txt));
  r.K = std::make_unique<FieldContext>(fs);
  r.B = std::make_unique<MonomialBasis>(compute_basis(*r.g, *r.K));
  r.st = std::make_unique<FSetState>(initial_fset(*r.g, *r.B, *r.K));
  TableOptions topt;
  r.T = std::make_unique<MultTable>(compute_mult_table(*r.g, *r.B, *r.st, topt));
  return r;
}

bool tables_equal(const MultTable& A, const MultTable& B2, const SimpleGraph& g,
                  const MonomialBasis& B, const FieldContext& K) {
  for (int x = 0; x < g.n(); ++x)
    for (int b = 0; b < B.size(); ++b) {
      if (A.has_row(static_cast<Gen>(x), b) != B2.has_row(static_cast<Gen>(x), b)) return false;
      if (!A.has_row(static_cast<Gen>(x), b)) continue;
      const BasisVec& u = A.row(static_cast<Gen>(x), b);
      const BasisVec& v = B2.row(static_cast<Gen>(x), b);
      if (u.size() != v.size()) return false;
      for (size_t i = 0; i < u.size(); ++i)
        if (u[i].first != v[i].first || !u[i].second.equals(v[i].second, K)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("K2: the initial f-set is already free") {
  Built b = build("2\n0-1", FieldSpec::rationals());
  MinimizeOptions mo;
  Certificate cert = minimize_fset(*b.st, *b.T, mo);
  CHECK(b.st->active_count() == 1);
  CHECK(cert.free);
  CHECK(cert.steps.empty());  // every relation reduces to zero immediately
  CHECK(cert.residual_count == 0);
}

TEST_CASE("final f-set sizes: path-3 gives 2, triangle gives 4, K4 gives 12") {
  {
    Built b = build("3\n0-1,1-2", FieldSpec::rationals());
    MinimizeOptions mo;
    Certificate c = minimize_fset(*b.st, *b.T, mo);
    CHECK(b.st->active_count() == 2);
    CHECK(c.free);
  }
  {
    Built b = build("3\n0-1,0-2,1-2", FieldSpec::rationals());
    MinimizeOptions mo;
    Certificate c = minimize_fset(*b.st, *b.T, mo);
    CHECK(b.st->active_count() == 4);
    CHECK(c.free);
  }
  {
    Built b = build("4\n0-1,0-2,0-3,1-2,1-3,2-3", FieldSpec::rationals());
    MinimizeOptions mo;
    Certificate c = minimize_fset(*b.st, *b.T, mo);
    CHECK(b.st->active_count() == 12);
    CHECK(c.free);
  }
}

TEST_CASE("certificate replay reproduces the minimized table exactly") {
  for (const char* txt : {"3\n0-1,1-2", "3\n0-1,0-2,1-2", "4\n0-1,1-2,2-3"}) {
    Built b = build(txt, FieldSpec::rationals());
    MultTable pre = *b.T;
    MinimizeOptions mo;
    Certificate cert = minimize_fset(*b.st, *b.T, mo);
    MultTable replayed = replay_certificate(cert, pre, *b.st);
    CHECK(tables_equal(replayed, *b.T, *b.g, *b.B, *b.K));
  }
}

TEST_CASE("no variable is eliminated twice, expressions close over survivors") {
  Built b = build("3\n0-1,0-2,1-2", FieldSpec::rationals());
  MinimizeOptions mo;
  Certificate cert = minimize_fset(*b.st, *b.T, mo);
  for (size_t i = 0; i < cert.steps.size(); ++i)
    for (size_t j = i + 1; j < cert.steps.size(); ++j) CHECK(cert.steps[i].var != cert.steps[j].var);
  for (const auto& s : cert.steps) {
    FPoly reduced = s.expr;
    for (const auto& later : cert.steps) reduced = reduced.substituted(later.var, later.expr, *b.K);
    std::vector<char> present;
    reduced.collect_vars(present);
    for (size_t v = 0; v < present.size(); ++v)
      if (present[v]) CHECK(b.st->is_active(static_cast<VarId>(v)));
  }
}

TEST_CASE("monotonicity: one variable leaves F per step") {
  Built b = build("4\n0-1,1-2,2-3,0-3", FieldSpec::rationals());
  int before = b.st->active_count();
  MinimizeOptions mo;
  Certificate cert = minimize_fset(*b.st, *b.T, mo);
  CHECK(before - static_cast<int>(cert.steps.size()) == b.st->active_count());
  CHECK(b.st->active_count() == 5);
  CHECK(cert.free);
}

TEST_CASE("certify_affine wording") {
  Built b = build("3\n0-1,0-2,1-2", FieldSpec::rationals());
  MinimizeOptions mo;
  Certificate cert = minimize_fset(*b.st, *b.T, mo);
  CHECK(certify_affine_report(*b.st, cert) == "X is isomorphic to the affine space K^4");

  Certificate nonfree;
  nonfree.free = false;
  nonfree.residual_count = 1;
  nonfree.residual = {"f[1][0]^2"};
  std::string rep = certify_affine_report(*b.st, nonfree);
  CHECK(rep.find("not certified free") != std::string::npos);
  CHECK(rep.find("f[1][0]^2") != std::string::npos);
}
