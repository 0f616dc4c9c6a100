#include <doctest.h>

#include "extremal/basis.hpp"
#include "oracle.hpp"

using namespace extremal;
using extremal::testing::Oracle;

namespace {

Word W(std::initializer_list<int> gs) {
  Word w;
  for (int g : gs) w.push_back(static_cast<Gen>(g));
  return w;
}

}  // namespace

TEST_CASE("oracle reproduces the K2 family at any parameter") {
  FieldContext K(FieldSpec::gf(101));
  SimpleGraph g = complete_graph(2);
  std::vector<Word> bw = {W({0}), W({1}), W({0, 1})};
  for (long t : {0L, 1L, 55L}) {
    auto f_on = [&](int x, int b) {
      if (b < 2 && b != x) return K.from_int(t);
      return K.zero();
    };
    Oracle oracle(g, bw, K, f_on, 2);
    REQUIRE(oracle.ok());
    CHECK(oracle.dim() == 3);
    // [x,[x,y]] = t x
    auto c = oracle.coords_of_word(W({0, 0, 1}));
    REQUIRE(c.has_value());
    CHECK(K.eq((*c)[0], K.from_int(t)));
    CHECK(K.is_zero((*c)[1]));
    CHECK(K.is_zero((*c)[2]));
    // [y,[x,y]] = -t y
    auto d = oracle.coords_of_word(W({1, 0, 1}));
    REQUIRE(d.has_value());
    CHECK(K.eq((*d)[1], K.neg(K.from_int(t))));
  }
}

TEST_CASE("an inconsistent parameter point collapses the algebra") {
  // f_x(y) != f_y(x) contradicts maximality: some basis image turns dependent
  FieldContext K(FieldSpec::gf(101));
  SimpleGraph g = complete_graph(2);
  std::vector<Word> bw = {W({0}), W({1}), W({0, 1})};
  auto f_on = [&](int x, int b) {
    if (x == 0 && b == 1) return K.from_int(3);
    if (x == 1 && b == 0) return K.from_int(5);
    return K.zero();
  };
  Oracle oracle(g, bw, K, f_on, 2);
  CHECK(!oracle.ok());
}

TEST_CASE("a wrong basis is flagged through failed expansion") {
  FieldContext K(FieldSpec::gf(101));
  SimpleGraph g = complete_graph(2);
  std::vector<Word> partial = {W({0}), W({1})};  // missing [x,y]
  Oracle oracle(g, partial, K, [&](int, int) { return K.zero(); }, 2);
  REQUIRE(oracle.ok());  // independence holds, but...
  CHECK(!oracle.coords_of_word(W({0, 1})).has_value());  // ...the span is too small
}

TEST_CASE("nonedge commutation is enforced") {
  FieldContext K(FieldSpec::gf(101));
  SimpleGraph path = parse_graph("3\n0-1,1-2");
  MonomialBasis B = compute_basis(path, K);
  Oracle oracle(path, B.elems, K, [&](int, int) { return K.zero(); }, 2);
  REQUIRE(oracle.ok());
  auto c = oracle.coords_of_word(W({0, 2}));
  REQUIRE(c.has_value());
  for (const Scalar& s : *c) CHECK(K.is_zero(s));
}
