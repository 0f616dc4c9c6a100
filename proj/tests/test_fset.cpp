#include <doctest.h>

#include "extremal/fset.hpp"
#include "oracle.hpp"

using namespace extremal;
using extremal::testing::Oracle;

TEST_CASE("pair order") {
  // shorter argument first, then by generator
  CHECK(pair_order_compare(1, 0, 0, 2) < 0);
  CHECK(pair_order_compare(0, 2, 1, 2) < 0);
  CHECK(pair_order_compare(1, 2, 1, 2) == 0);
  CHECK(pair_order_compare(1, 2, 0, 2) > 0);
}

TEST_CASE("K2 initial f-set has size 1") {
  FieldContext Q(FieldSpec::rationals());
  SimpleGraph g = complete_graph(2);
  MonomialBasis B = compute_basis(g, Q);
  FSetState st = initial_fset(g, B, Q);
  CHECK(st.active_count() == 1);
  // the surviving variable is the smaller pair (y, x), and r_x(y) equals it
  VarId v = st.active_vars()[0];
  CHECK(st.var(v).y == 1);
  CHECK(st.var(v).c == 0);
  CHECK(st.r(0, 1).equals(FPoly::variable(v, Q), Q));
  CHECK(st.r(1, 0).equals(FPoly::variable(v, Q), Q));
  // f_x([x,y]) and f_y([x,y]) vanish
  CHECK(st.r(0, 2).is_zero());
  CHECK(st.r(1, 2).is_zero());
}

TEST_CASE("triangle initial f-set is sufficient and at least 4") {
  FieldContext Q(FieldSpec::rationals());
  SimpleGraph g = complete_graph(3);
  MonomialBasis B = compute_basis(g, Q);
  FSetState st = initial_fset(g, B, Q);
  CHECK(st.active_count() >= 4);
}

TEST_CASE("no pair with a vanishing head survives") {
  FieldContext Q(FieldSpec::rationals());
  SimpleGraph g = parse_graph("3\n0-1,1-2");
  MonomialBasis B = compute_basis(g, Q);
  FSetState st = initial_fset(g, B, Q);
  for (VarId v : st.active_vars()) {
    const FVar& f = st.var(v);
    const Word& c = B.elems[static_cast<size_t>(f.c)];
    CHECK(f.y != c[0]);
    CHECK(g.adjacent(f.y, c[0]));
  }
}

TEST_CASE("every expressed pair mentions only surviving variables") {
  FieldContext Q(FieldSpec::rationals());
  for (const char* txt : {"2\n0-1", "3\n0-1,1-2", "3\n0-1,0-2,1-2"}) {
    SimpleGraph g = parse_graph(txt);
    MonomialBasis B = compute_basis(g, Q);
    FSetState st = initial_fset(g, B, Q);
    for (int c = 0; c < B.size(); ++c)
      for (int y = 0; y < g.n(); ++y) {
        std::vector<char> present;
        st.r(static_cast<Gen>(y), c).collect_vars(present);
        for (size_t v = 0; v < present.size(); ++v)
          if (present[v]) CHECK(st.is_active(static_cast<VarId>(v)));
      }
  }
}

TEST_CASE("soundness under specialization: r agrees with the brute-force model") {
  // for random v, f_y(c) computed directly in L(phi(v)) equals r_y(c)(v)
  FieldContext K(FieldSpec::gf(101));
  for (const char* txt : {"2\n0-1", "3\n0-1,1-2", "3\n0-1,0-2,1-2"}) {
    SimpleGraph g = parse_graph(txt);
    MonomialBasis B = compute_basis(g, K);
    FSetState st = initial_fset(g, B, K);
    std::uint64_t s = 5;
    auto next = [&]() {
      s += 0x9e3779b97f4a7c15ull;
      std::uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      return z ^ (z >> 31);
    };
    // the sandwich point is always valid; it exercises every reduction path
    for (int trial = 0; trial < 2; ++trial) {
      std::vector<Scalar> v(static_cast<size_t>(st.var_count()), K.zero());
      if (trial == 1 && g.n() == 2)
        for (auto& x : v) x = K.from_int(static_cast<long>(next() % 101));
      auto f_on = [&](int x, int b) { return st.r(static_cast<Gen>(x), b).evaluate(v, K); };
      Oracle oracle(g, B.elems, K, f_on, 2);
      REQUIRE(oracle.ok());
      for (int c = 0; c < B.size(); ++c)
        for (int y = 0; y < g.n(); ++y) {
          // [y,[y,c]] read off in coordinates must be f * e_y
          Word w;
          w.push_back(static_cast<Gen>(y));
          w.push_back(static_cast<Gen>(y));
          w.append(B.elems[static_cast<size_t>(c)]);
          if (static_cast<int>(w.size()) > B.max_length() + 2) continue;
          auto coords = oracle.coords_of_word(w);
          REQUIRE(coords.has_value());
          Scalar f = f_on(y, c);
          for (int i = 0; i < B.size(); ++i) {
            Scalar want = (i == y) ? f : K.zero();
            CHECK(K.eq((*coords)[static_cast<size_t>(i)], want));
          }
        }
    }
  }
}
