#include <doctest.h>

#include "extremal/pipeline.hpp"

using namespace extremal;

namespace {

RunResult run(const std::string& edges, int n, FieldSpec fs) {
  RunConfig cfg;
  cfg.graph_edges = edges;
  cfg.graph_n = n;
  cfg.field = fs;
  return run_full(cfg);
}

Scalar killing(const LieAlgebraK& L, const ScalarVec& a, const ScalarVec& b) {
  const FieldContext& K = L.field();
  Scalar tr = K.zero();
  for (int k = 0; k < L.dim(); ++k) {
    ScalarVec w = L.bracket(b, ScalarVec{{k, K.one()}});
    w = L.bracket(a, w);
    for (const auto& [i, c] : w)
      if (i == k) tr = K.add(tr, c);
  }
  return tr;
}

}  // namespace

TEST_CASE("K2 at v=0 is the Heisenberg algebra") {
  RunResult r = run("0-1", 2, FieldSpec::rationals());
  const FieldContext& K = *r.K;
  LieAlgebraK L = specialize(*r.table, *r.state, {K.zero()});
  CHECK(L.product(0, 2).empty());  // [x,[x,y]] = 0
  CHECK(L.product(1, 2).empty());  // [y,[x,y]] = 0
  CHECK(!L.product(0, 1).empty());
  auto [rad, method] = radical_dimension(L);
  REQUIRE(rad.has_value());
  CHECK(*rad == 3);  // nilpotent: the radical is everything
  CHECK(nilpotency_class(L) == 2);
}

TEST_CASE("K2 at v=1 is simple of type A1") {
  RunResult r = run("0-1", 2, FieldSpec::rationals());
  const FieldContext& K = *r.K;
  LieAlgebraK L = specialize(*r.table, *r.state, {K.one()});
  auto checks = verify_lie(L, *r.graph, *r.state, {K.one()});
  CHECK(checks.size() == 3);
  auto [rad, method] = radical_dimension(L);
  REQUIRE(rad.has_value());
  CHECK(*rad == 0);
  AnalysisReport rep = analyze(L, 7);
  CHECK(rep.quotient_dim == 3);
  CHECK(rep.type_label == "A1");
  CHECK(!nilpotency_class(L).has_value());
}

TEST_CASE("triangle at generic v over GF(101): quotient A2 of dimension 8") {
  RunResult r = run("0-1,0-2,1-2", 3, FieldSpec::gf(101));
  const FieldContext& K = *r.K;
  SplitMix64 rng(5);
  std::vector<Scalar> v = random_point(K, r.state->active_count(), rng);
  LieAlgebraK L = specialize(*r.table, *r.state, v);
  verify_lie(L, *r.graph, *r.state, v);
  AnalysisReport rep = analyze(L, 11);
  REQUIRE(rep.radical_dim.has_value());
  CHECK(*rep.radical_dim == 0);
  CHECK(rep.quotient_dim == 8);
  CHECK(rep.type_label == "A2");
}

TEST_CASE("verification failure on a tampered constant") {
  RunResult r = run("0-1", 2, FieldSpec::gf(7));
  const FieldContext& K = *r.K;
  LieAlgebraK L = specialize(*r.table, *r.state, {K.one()});
  // tamper: [x,y] gains a spurious component
  ScalarVec bad = L.product(0, 1);
  bad.emplace_back(1, K.one());
  L.set_product(0, 1, bad);
  CHECK_THROWS_AS(verify_lie(L, *r.graph, *r.state, {K.one()}), VerificationFailure);
}

TEST_CASE("classification lookup with rank cross-check") {
  CHECK(classify_quotient(28, 4) == "D4");
  CHECK(classify_quotient(52, 4) == "F4");
  CHECK(classify_quotient(7, std::nullopt) == "unclassified");
  CHECK(classify_quotient(28, 3) == "unclassified");  // rank mismatch
  CHECK(classify_quotient(3, 1) == "A1");
  CHECK(classify_quotient(0, std::nullopt) == "trivial");
}

TEST_CASE("Killing form is symmetric and associative") {
  RunResult r = run("0-1,0-2,1-2", 3, FieldSpec::gf(101));
  const FieldContext& K = *r.K;
  SplitMix64 rng(23);
  std::vector<Scalar> v = random_point(K, r.state->active_count(), rng);
  LieAlgebraK L = specialize(*r.table, *r.state, v);
  for (int trial = 0; trial < 30; ++trial) {
    auto rnd_vec = [&]() {
      ScalarVec z;
      for (int i = 0; i < L.dim(); ++i) {
        Scalar s = K.from_int(static_cast<long>(rng.next() % 101));
        if (!K.is_zero(s)) z.emplace_back(i, std::move(s));
      }
      return z;
    };
    ScalarVec a = rnd_vec(), b = rnd_vec(), c = rnd_vec();
    CHECK(K.eq(killing(L, a, b), killing(L, b, a)));
    CHECK(K.eq(killing(L, L.bracket(a, b), c), killing(L, a, L.bracket(b, c))));
  }
}

TEST_CASE("dimension is preserved by every specialization of a free table") {
  for (const char* edges : {"0-1,1-2", "0-1,0-2,1-2"}) {
    RunResult r = run(edges, 3, FieldSpec::gf(101));
    REQUIRE(r.free_flag);
    SplitMix64 rng(31);
    for (int t = 0; t < 20; ++t) {
      std::vector<Scalar> v = random_point(*r.K, r.state->active_count(), rng);
      LieAlgebraK L = specialize(*r.table, *r.state, v);
      CHECK(L.dim() == r.dim_l0);
      verify_lie(L, *r.graph, *r.state, v);
    }
  }
}

TEST_CASE("surveys recover the generic quotient") {
  {
    RunResult r = run("0-1,1-2", 3, FieldSpec::rationals());
    FieldContext K17(FieldSpec::gf(17));
    auto [st2, t2] = convert_table(*r.state, *r.table, K17);
    SurveyResult res = generic_survey(*t2, *st2, K17, 20, 42);
    CHECK(res.majority_quotient_dim == 3);
    CHECK(res.majority_type == "A1");
    CHECK(res.frequency >= 0.8);
  }
  {
    RunResult r = run("0-1,0-2,1-2", 3, FieldSpec::rationals());
    FieldContext K101(FieldSpec::gf(101));
    auto [st2, t2] = convert_table(*r.state, *r.table, K101);
    SurveyResult res = generic_survey(*t2, *st2, K101, 20, 42);
    CHECK(res.majority_quotient_dim == 8);
    CHECK(res.majority_type == "A2");
    CHECK(res.frequency >= 0.8);
  }
}
