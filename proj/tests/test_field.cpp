#include <doctest.h>

#include "extremal/field.hpp"

using namespace extremal;

TEST_CASE("field construction rejects char 2 and composite p") {
  CHECK_THROWS_AS(FieldContext(FieldSpec::gf(2)), CharTwoError);
  CHECK_THROWS_AS(FieldContext(FieldSpec::gf(9)), NotPrimeError);
  CHECK_THROWS_AS(FieldContext(FieldSpec::gf(1)), NotPrimeError);
  CHECK(FieldContext(FieldSpec::rationals()).characteristic() == 0);
  CHECK(FieldContext(FieldSpec::gf(3)).characteristic() == 3);
  CHECK(FieldContext(FieldSpec::gf(101)).characteristic() == 101);
}

TEST_CASE("basic scalar arithmetic") {
  FieldContext Q(FieldSpec::rationals());
  CHECK(Q.str(Q.inv(Q.from_ratio(2, 3))) == "3/2");
  CHECK(Q.str(Q.add(Q.from_ratio(1, 2), Q.from_ratio(1, 3))) == "5/6");
  CHECK(Q.str(Q.halve(Q.one())) == "1/2");

  FieldContext F7(FieldSpec::gf(7));
  CHECK(F7.inv(F7.from_int(2)).res() == 4);
  CHECK(F7.halve(F7.one()).res() == 4);
  FieldContext F3(FieldSpec::gf(3));
  CHECK(F3.halve(F3.one()).res() == 2);
}

TEST_CASE("division by zero throws") {
  FieldContext Q(FieldSpec::rationals());
  CHECK_THROWS_AS(Q.inv(Q.zero()), DivisionByZero);
  FieldContext F5(FieldSpec::gf(5));
  CHECK_THROWS_AS(F5.div(F5.one(), F5.zero()), DivisionByZero);
}

static void field_axioms(const FieldContext& K, std::uint64_t seed) {
  // 1000 random triples: associativity, commutativity, distributivity
  std::uint64_t s = seed;
  auto next = [&]() {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  auto rnd = [&]() {
    if (K.is_rationals()) {
      long n = static_cast<long>(next() % 2001) - 1000;
      unsigned long d = 1 + next() % 50;
      return K.from_ratio(n, d);
    }
    return K.from_int(static_cast<long>(next() % K.p()));
  };
  for (int i = 0; i < 1000; ++i) {
    Scalar a = rnd(), b = rnd(), c = rnd();
    CHECK(K.eq(K.add(K.add(a, b), c), K.add(a, K.add(b, c))));
    CHECK(K.eq(K.mul(K.mul(a, b), c), K.mul(a, K.mul(b, c))));
    CHECK(K.eq(K.add(a, b), K.add(b, a)));
    CHECK(K.eq(K.mul(a, b), K.mul(b, a)));
    CHECK(K.eq(K.mul(a, K.add(b, c)), K.add(K.mul(a, b), K.mul(a, c))));
    if (!K.is_zero(a)) {
      CHECK(K.eq(K.inv(K.inv(a)), a));
      CHECK(K.is_one(K.mul(a, K.inv(a))));
    }
    // rationals stay reduced
    if (K.is_rationals()) {
      mpq_class q = K.mul(a, b).rat();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
      CHECK((g == 1 || q == 0));
      CHECK(q.get_den() > 0);
    }
  }
}

TEST_CASE("field axioms hold on random triples") {
  field_axioms(FieldContext(FieldSpec::rationals()), 1);
  field_axioms(FieldContext(FieldSpec::gf(3)), 2);
  field_axioms(FieldContext(FieldSpec::gf(101)), 3);
}

TEST_CASE("prime collector factors divisors") {
  PrimeCollector pc;
  pc.record(mpz_class(60));
  CHECK(pc.primes() == std::set<std::uint64_t>{2, 3, 5});
  pc.record(mpz_class("600000000000000000013"));  // large prime-ish cofactor path
  CHECK(pc.unfactored().size() + pc.primes().size() >= 3);
}

TEST_CASE("collector sees division denominators in Q") {
  FieldContext Q(FieldSpec::rationals());
  PrimeCollector pc;
  Q.attach_collector(&pc);
  Scalar x = Q.from_ratio(1, 6);
  (void)Q.inv(x);  // divides by 1/6: primes of num and den
  CHECK(pc.primes().count(2) == 1);
  CHECK(pc.primes().count(3) == 1);
  Q.attach_collector(nullptr);
}
