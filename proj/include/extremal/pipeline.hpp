#pragma once

#include <memory>
#include <set>
#include <string>

#include "extremal/analyze.hpp"
#include "extremal/catalog.hpp"

namespace extremal {

struct ConfigError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string graph_edges;  // edge-list body
  int graph_n = 0;
  std::string graph_desc;
  FieldSpec field = FieldSpec::rationals();
  int k_cap = 4;
  bool interleave = true;
  bool exhaustive = false;
  long triple_budget = -1;
  int trials = 20;
  std::uint64_t seed = 1;
  std::string out_dir;
  int max_length = 0;       // cap the basis computation (partial pipelines)
  bool collect_primes = false;
};

/* Primes harvested from a Q run: p1 from the basis/table phases (cleared
   denominators and elimination pivots), p2 from minimization divisions;
   3 is always included. */
struct PrimeReport {
  std::set<std::uint64_t> p1;
  std::set<std::uint64_t> p2;
  std::vector<std::string> unfactored;
  std::set<std::uint64_t> all() const {
    std::set<std::uint64_t> s = p1;
    s.insert(p2.begin(), p2.end());
    s.insert(3);
    s.erase(2);
    return s;
  }
};

struct RunResult {
  std::unique_ptr<SimpleGraph> graph;
  std::unique_ptr<FieldContext> K;
  std::unique_ptr<MonomialBasis> B;
  std::unique_ptr<FSetState> state;
  std::unique_ptr<MultTable> table;          // minimized
  std::unique_ptr<MultTable> pre_min_table;  // snapshot before the final pass
  Certificate cert;
  PrimeReport primes;
  int dim_l0 = 0;
  std::vector<int> per_length;
  int dim_x = 0;
  bool free_flag = false;
  bool partial = false;  // basis was length-capped; only dims are meaningful
  double wall_seconds = 0.0;
};

RunResult run_full(const RunConfig& cfg);

/* JSON artifact writers; file contents are deterministic for a fixed config
   and seed (wall time lives in report.json under a field the regression
   tooling ignores). */
void write_artifacts(const RunResult& r, const RunConfig& cfg);

std::string fpoly_to_string(const FPoly& p, const FSetState& st);

/* Change of base field for a computed table (used by the survey: compute
   once over Q, specialize over GF(p)). Throws if p divides a denominator. */
std::pair<std::unique_ptr<FSetState>, std::unique_ptr<MultTable>> convert_table(
    const FSetState& st, const MultTable& T, const FieldContext& K2);

struct CrossCharDiff {
  std::uint64_t p;
  int dim_l0 = -1;
  int dim_x = -1;
  bool free_flag = false;
  bool matches = false;
  std::string error;
};

/* Rerun the pipeline over GF(p) for every harvested prime and diff against
   the rational run. */
std::vector<CrossCharDiff> cross_validate(const RunConfig& base_cfg, const RunResult& q_run,
                                          int jobs);

}  // namespace extremal
