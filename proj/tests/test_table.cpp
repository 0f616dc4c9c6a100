#include <doctest.h>

#include <memory>

#include "extremal/analyze.hpp"
#include "oracle.hpp"

using namespace extremal;
using extremal::testing::Oracle;

namespace {

Word W(std::initializer_list<int> gs) {
  Word w;
  for (int g : gs) w.push_back(static_cast<Gen>(g));
  return w;
}

struct Built {
  std::unique_ptr<SimpleGraph> g;
  std::unique_ptr<FieldContext> K;
  std::unique_ptr<MonomialBasis> B;
  std::unique_ptr<FSetState> st;
  std::unique_ptr<MultTable> T;
};

Built build(const std::string& txt, FieldSpec fs, int k_cap = 4) {
  Built r;
  r.g = std::make_unique<SimpleGraph>(parse_graph(txt));
  r.K = std::make_unique<FieldContext>(fs);
  r.B = std::make_unique<MonomialBasis>(compute_basis(*r.g, *r.K));
  r.st = std::make_unique<FSetState>(initial_fset(*r.g, *r.B, *r.K));
  TableOptions topt;
  topt.k_cap = k_cap;
  r.T = std::make_unique<MultTable>(compute_mult_table(*r.g, *r.B, *r.st, topt));
  return r;
}

}  // namespace

TEST_CASE("K2 generic table: [x,[x,y]] = f x and [y,[x,y]] = -f y") {
  Built built = build("2\n0-1", FieldSpec::rationals());
  const FieldContext& K = *built.K;
  REQUIRE(built.st->active_count() == 1);
  VarId f = built.st->active_vars()[0];
  int xy = built.B->find(W({0, 1}));
  REQUIRE(xy >= 0);
  const BasisVec& r0 = built.T->row(0, xy);
  REQUIRE(r0.size() == 1);
  CHECK(r0[0].first == 0);
  CHECK(r0[0].second.equals(FPoly::variable(f, K), K));
  const BasisVec& r1 = built.T->row(1, xy);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].first == 1);
  CHECK(r1[0].second.equals(FPoly::variable(f, K).negated(K), K));
}

TEST_CASE("triangle completes with k <= 2") {
  Built built = build("3\n0-1,0-2,1-2", FieldSpec::rationals(), 2);
  CHECK(built.B->size() == 8);
  CHECK(built.T->completed_length() == built.B->max_length());
}

TEST_CASE("monomial_to_basis examples") {
  Built built = build("3\n0-1,1-2", FieldSpec::rationals());
  const FieldContext& K = *built.K;
  const MonomialBasis& B = *built.B;
  const FSetState& st = *built.st;
  const MultTable& T = *built.T;

  for (int b = 0; b < B.size(); ++b) {
    auto v = monomial_to_basis(B.elems[static_cast<size_t>(b)], T, st);
    REQUIRE(v.has_value());
    REQUIRE(v->size() == 1);
    CHECK((*v)[0].first == b);
    CHECK((*v)[0].second.is_constant());
    CHECK(K.is_one((*v)[0].second.constant_value(K)));
  }

  auto z = monomial_to_basis(W({1, 0, 2}), T, st);
  REQUIRE(z.has_value());
  CHECK(z->empty());

  auto e = monomial_to_basis(W({0, 0, 1}), T, st);
  REQUIRE(e.has_value());
  REQUIRE(e->size() == 1);
  CHECK((*e)[0].first == 0);
  CHECK((*e)[0].second.equals(st.r(0, 1), K));
}

TEST_CASE("shorten_repeat degree accounting: 3 shorter plus j-i-2 same degree") {
  Built built = build("3\n0-1,0-2,1-2", FieldSpec::rationals());
  {
    // interior repeat: the full first-Premet shape, three shorter terms
    Word m = W({0, 1, 2, 0, 1});  // (i,j) = (1,4), l = 5
    ExprComb sc = shorten_repeat(m, 1, 4, *built.st, *built.T);
    int shorter = 0, full = 0;
    for (const auto& [e, c] : sc.terms()) (e->degree() < 5 ? shorter : full)++;
    CHECK(shorter == 3);
    CHECK(full == 1);  // j - i - 2
  }
  {
    // repeat at the very end: the tail is empty and the Premet kill
    // degenerates to the single extremality term -f_x(P) x
    Word m = W({0, 1, 2, 0});  // (i,j) = (1,4), l = 4
    ExprComb sc = shorten_repeat(m, 1, 4, *built.st, *built.T);
    int shorter = 0, full = 0;
    for (const auto& [e, c] : sc.terms()) (e->degree() < 4 ? shorter : full)++;
    CHECK(shorter == 1);
    CHECK(full == 1);
    CHECK_THROWS_AS(shorten_repeat(m, 1, 3, *built.st, *built.T), IndexOutOfRange);
  }
}

TEST_CASE("generator rows are antisymmetric and filtered") {
  Built built = build("3\n0-1,0-2,1-2", FieldSpec::rationals());
  const FieldContext& K = *built.K;
  const MonomialBasis& B = *built.B;
  for (int x = 0; x < built.g->n(); ++x)
    for (int y = 0; y < built.g->n(); ++y) {
      if (x == y) continue;
      auto a = built.T->lookup(static_cast<Gen>(x), y, K);
      auto b = built.T->lookup(static_cast<Gen>(y), x, K);
      REQUIRE(a);
      REQUIRE(b);
      CHECK(vec_is_zero(vec_add(*a, *b, K)));
    }
  for (int x = 0; x < built.g->n(); ++x)
    for (int b = 0; b < B.size(); ++b) {
      if (!built.T->has_row(static_cast<Gen>(x), b)) continue;
      for (const auto& [c, p] : built.T->row(static_cast<Gen>(x), b)) {
        CHECK(B.length_of(c) <= B.length_of(b) + 1);
        if (B.length_of(c) == B.length_of(b) + 1) CHECK(p.is_constant());
      }
    }
}

TEST_CASE("at v = 0 the table is strictly graded") {
  Built built = build("3\n0-1,0-2,1-2", FieldSpec::gf(101));
  const FieldContext& K = *built.K;
  const MonomialBasis& B = *built.B;
  std::vector<Scalar> zero(static_cast<size_t>(built.st->active_count()), K.zero());
  LieAlgebraK L = specialize(*built.T, *built.st, zero);
  for (int x = 0; x < built.g->n(); ++x)
    for (int b = built.g->n(); b < B.size(); ++b)
      for (const auto& [c, s] : L.product(x, b))
        CHECK(B.length_of(c) == B.length_of(b) + 1);
}

TEST_CASE("specialized table matches the brute-force model at random points") {
  FieldContext K(FieldSpec::gf(101));
  for (const char* txt : {"2\n0-1", "3\n0-1,1-2", "3\n0-1,0-2,1-2"}) {
    Built built = build(txt, FieldSpec::gf(101));
    MinimizeOptions mo;
    Certificate cert = minimize_fset(*built.st, *built.T, mo);
    REQUIRE(cert.free);
    SplitMix64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Scalar> v = random_point(K, built.st->active_count(), rng);
      std::vector<Scalar> by_var(static_cast<size_t>(built.st->var_count()), K.zero());
      auto act = built.st->active_vars();
      for (size_t i = 0; i < act.size(); ++i) by_var[static_cast<size_t>(act[i])] = v[i];
      auto f_on = [&](int x, int b) {
        return built.st->r(static_cast<Gen>(x), b).evaluate(by_var, K);
      };
      Oracle oracle(*built.g, built.B->elems, K, f_on, 2);
      REQUIRE(oracle.ok());
      LieAlgebraK L = specialize(*built.T, *built.st, v);
      for (int x = 0; x < built.g->n(); ++x)
        for (int b = 0; b < built.B->size(); ++b) {
          if (b == x) continue;
          Word w(1, static_cast<Gen>(x));
          w.append(built.B->elems[static_cast<size_t>(b)]);
          auto oc = oracle.coords_of_word(w);
          REQUIRE(oc.has_value());
          std::vector<Scalar> dense(static_cast<size_t>(built.B->size()), K.zero());
          for (const auto& [c, s] : L.product(x, b)) dense[static_cast<size_t>(c)] = s;
          for (int i = 0; i < built.B->size(); ++i)
            CHECK(K.eq(dense[static_cast<size_t>(i)], (*oc)[static_cast<size_t>(i)]));
        }
    }
  }
}

TEST_CASE("Jacobi closure of the minimized generic table") {
  for (const char* txt : {"2\n0-1", "3\n0-1,1-2", "3\n0-1,0-2,1-2"}) {
    Built built = build(txt, FieldSpec::rationals());
    MinimizeOptions mo;
    minimize_fset(*built.st, *built.T, mo);
    const FieldContext& K = *built.K;
    const FPoly one = FPoly::constant(K.one(), K);
    for (int a = 0; a < built.B->size(); ++a)
      for (int b = a + 1; b < built.B->size(); ++b)
        for (int c = b + 1; c < built.B->size(); ++c) {
          BasisVec r =
              bracket_vec({{a, one}}, built.T->pair_product(b, c, *built.st), *built.T, *built.st);
          r = vec_add(
              r, bracket_vec({{b, one}}, built.T->pair_product(c, a, *built.st), *built.T, *built.st),
              K);
          r = vec_add(
              r, bracket_vec({{c, one}}, built.T->pair_product(a, b, *built.st), *built.T, *built.st),
              K);
          CHECK(vec_is_zero(r));
        }
  }
}

TEST_CASE("pair products: alternating and antisymmetric") {
  Built built = build("3\n0-1,0-2,1-2", FieldSpec::rationals());
  const FieldContext& K = *built.K;
  for (int b = 0; b < built.B->size(); ++b)
    CHECK(vec_is_zero(built.T->pair_product(b, b, *built.st)));
  for (int x = 0; x < built.g->n(); ++x)
    for (int b = built.g->n(); b < built.B->size(); ++b) {
      BasisVec fwd = built.T->pair_product(x, b, *built.st);
      BasisVec bwd = built.T->pair_product(b, x, *built.st);
      CHECK(vec_is_zero(vec_add(fwd, bwd, K)));
    }
}
