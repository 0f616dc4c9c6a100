#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "extremal/pipeline.hpp"

using namespace extremal;
using nlohmann::json;

namespace {

RunConfig cfg_for(const std::string& edges, int n, FieldSpec fs) {
  RunConfig cfg;
  cfg.graph_edges = edges;
  cfg.graph_n = n;
  cfg.field = fs;
  return cfg;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("full pipeline results for the small catalog rows") {
  RunResult k2 = run_full(cfg_for("0-1", 2, FieldSpec::rationals()));
  CHECK(k2.dim_l0 == 3);
  CHECK(k2.dim_x == 1);
  CHECK(k2.free_flag);

  RunResult p3 = run_full(cfg_for("0-1,1-2", 3, FieldSpec::gf(5)));
  CHECK(p3.dim_l0 == 6);
  CHECK(p3.dim_x == 2);
  CHECK(p3.free_flag);
}

TEST_CASE("artifacts are written and reproducible") {
  namespace fs = std::filesystem;
  fs::path dir1 = fs::temp_directory_path() / "extremal_art1";
  fs::path dir2 = fs::temp_directory_path() / "extremal_art2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  for (const auto& dir : {dir1, dir2}) {
    RunConfig cfg = cfg_for("0-1,0-2,1-2", 3, FieldSpec::rationals());
    cfg.out_dir = dir.string();
    RunResult r = run_full(cfg);
    write_artifacts(r, cfg);
  }
  for (const char* name : {"basis.json", "fset.json", "table.json", "table_premin.json",
                           "certificate.json"}) {
    CAPTURE(name);
    CHECK(fs::exists(dir1 / name));
    CHECK(slurp(dir1 / name) == slurp(dir2 / name));
  }
  // report matches after dropping the timing field
  json r1 = json::parse(slurp(dir1 / "report.json"));
  json r2 = json::parse(slurp(dir2 / "report.json"));
  r1.erase("wallTimeSec");
  r2.erase("wallTimeSec");
  CHECK(r1 == r2);
  CHECK(r1["dimL0"] == 8);
  CHECK(r1["dimX"] == 4);
  CHECK(r1["free"] == true);
}

TEST_CASE("prime harvest: K2 over Q reports {3} only") {
  RunConfig cfg = cfg_for("0-1", 2, FieldSpec::rationals());
  cfg.collect_primes = true;
  RunResult r = run_full(cfg);
  CHECK(r.primes.all() == std::set<std::uint64_t>{3});
  CHECK(r.primes.all().count(2) == 0);
}

TEST_CASE("prime harvest never reports 2") {
  for (const char* e : {"0-1,1-2", "0-1,0-2,1-2"}) {
    RunConfig cfg = cfg_for(e, 3, FieldSpec::rationals());
    cfg.collect_primes = true;
    RunResult r = run_full(cfg);
    CHECK(r.primes.all().count(2) == 0);
  }
}

TEST_CASE("cross-characteristic validation matches over the harvested primes") {
  RunConfig cfg = cfg_for("0-1,0-2,1-2", 3, FieldSpec::rationals());
  cfg.collect_primes = true;
  RunResult r = run_full(cfg);
  auto diffs = cross_validate(cfg, r, 2);
  REQUIRE(!diffs.empty());
  for (const auto& d : diffs) {
    CAPTURE(d.p);
    CHECK(d.error.empty());
    CHECK(d.matches);
  }
}

TEST_CASE("K4 over GF(5) agrees with the rational run") {
  RunResult q = run_full(cfg_for("0-1,0-2,0-3,1-2,1-3,2-3", 4, FieldSpec::rationals()));
  RunResult f5 = run_full(cfg_for("0-1,0-2,0-3,1-2,1-3,2-3", 4, FieldSpec::gf(5)));
  CHECK(q.dim_l0 == 28);
  CHECK(f5.dim_l0 == 28);
  CHECK(q.dim_x == 12);
  CHECK(f5.dim_x == 12);
  CHECK(f5.free_flag);
}

TEST_CASE("changing the base field of a computed table") {
  RunResult q = run_full(cfg_for("0-1,1-2", 3, FieldSpec::rationals()));
  FieldContext K101(FieldSpec::gf(101));
  auto [st2, t2] = convert_table(*q.state, *q.table, K101);
  SplitMix64 rng(3);
  std::vector<Scalar> v = random_point(K101, st2->active_count(), rng);
  LieAlgebraK L = specialize(*t2, *st2, v);
  CHECK(L.dim() == q.dim_l0);
  verify_lie(L, *q.graph, *st2, v);
}

TEST_CASE("interleaved and plain minimization agree on the invariants") {
  for (const char* e : {"0-1,1-2", "0-1,0-2,1-2"}) {
    RunConfig with = cfg_for(e, 3, FieldSpec::rationals());
    RunConfig without = with;
    without.interleave = false;
    RunResult a = run_full(with);
    RunResult b = run_full(without);
    CHECK(a.dim_x == b.dim_x);
    CHECK(a.free_flag == b.free_flag);
    CHECK(a.dim_l0 == b.dim_l0);
  }
}

TEST_CASE("partial basis runs stop at the cap") {
  RunConfig cfg = cfg_for("0-1,0-2,0-3,1-2,1-3,2-3", 4, FieldSpec::rationals());
  cfg.max_length = 3;
  RunResult r = run_full(cfg);
  CHECK(r.partial);
  CHECK(r.per_length.size() <= 4);
  CHECK(r.dim_l0 < 28);
}
