#include "extremal/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace extremal {

using nlohmann::json;

std::string fpoly_to_string(const FPoly& p, const FSetState& st) {
  return p.str(st.field(), [&](VarId v) { return st.var_name(v); });
}

RunResult run_full(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  RunResult r;
  r.graph = std::make_unique<SimpleGraph>(parse_edge_list(cfg.graph_n, cfg.graph_edges));
  r.K = std::make_unique<FieldContext>(cfg.field);

  PrimeCollector coll_p1, coll_p2;
  const bool harvesting = cfg.collect_primes && r.K->is_rationals();
  if (harvesting) r.K->attach_collector(&coll_p1);

  r.B = std::make_unique<MonomialBasis>(compute_basis(*r.graph, *r.K, cfg.max_length));
  r.dim_l0 = r.B->size();
  r.per_length = r.B->per_length;
  r.partial = cfg.max_length > 0 && r.B->max_length() >= cfg.max_length;
  if (r.partial) {
    if (harvesting) r.K->attach_collector(nullptr);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;  // basis was capped: no table on a partial basis
  }

  r.state = std::make_unique<FSetState>(initial_fset(*r.graph, *r.B, *r.K));

  TableOptions topt;
  topt.k_cap = cfg.k_cap;
  std::vector<CertStep> interleaved_log;
  if (cfg.interleave)
    topt.on_stage_complete = [&](MultTable& T, int len, std::vector<BasisVec>&& harvested) {
      if (harvesting) r.K->attach_collector(&coll_p2);
      interleave_pass(*r.state, T, len, std::move(harvested), interleaved_log);
      if (harvesting) r.K->attach_collector(&coll_p1);
    };
  r.table = std::make_unique<MultTable>(compute_mult_table(*r.graph, *r.B, *r.state, topt));
  r.pre_min_table = std::make_unique<MultTable>(*r.table);

  if (harvesting) r.K->attach_collector(&coll_p2);
  MinimizeOptions mopt;
  mopt.exhaustive = cfg.exhaustive;
  mopt.triple_budget = cfg.triple_budget;
  r.cert = minimize_fset(*r.state, *r.table, mopt);
  r.cert.interleaved = std::move(interleaved_log);
  if (harvesting) r.K->attach_collector(nullptr);

  r.dim_x = r.state->active_count();
  r.free_flag = r.cert.free;
  if (harvesting) {
    r.primes.p1 = coll_p1.primes();
    r.primes.p2 = coll_p2.primes();
    r.primes.unfactored = coll_p1.unfactored();
    for (const auto& u : coll_p2.unfactored()) r.primes.unfactored.push_back(u);
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

namespace {

std::string field_str(const FieldSpec& f) {
  return f.kind == FieldKind::Rationals ? "q" : "gf:" + std::to_string(f.p);
}

json basis_json(const RunResult& r) {
  json j;
  j["schema"] = 1;
  j["graph"] = r.graph->serialize();
  j["elements"] = json::array();
  for (const auto& m : r.B->elems) {
    json e = json::array();
    for (Gen g : m) e.push_back(static_cast<int>(g));
    j["elements"].push_back(std::move(e));
  }
  json pl = json::array();
  for (size_t l = 1; l < r.B->per_length.size(); ++l)
    pl.push_back(json{{"length", l}, {"count", r.B->per_length[l]}});
  j["perLength"] = std::move(pl);
  j["dim"] = r.B->size();
  return j;
}

json fset_json(const RunResult& r) {
  const FSetState& st = *r.state;
  json j;
  j["schema"] = 1;
  j["size"] = st.active_count();
  json vars = json::array();
  for (VarId v : st.active_vars())
    vars.push_back(json{{"y", static_cast<int>(st.var(v).y)},
                        {"c", st.var(v).c},
                        {"name", st.var_name(v)}});
  j["vars"] = std::move(vars);
  json rr = json::array();
  for (int c = 0; c < r.B->size(); ++c)
    for (int y = 0; y < r.graph->n(); ++y) {
      const FPoly& p = st.r(static_cast<Gen>(y), c);
      if (p.is_zero()) continue;
      rr.push_back(json{{"y", y}, {"c", c}, {"expr", fpoly_to_string(p, st)}});
    }
  j["r"] = std::move(rr);
  return j;
}

json table_json(const MultTable& T, const RunResult& r) {
  json entries = json::array();
  const FieldContext& K = *r.K;
  for (int b = 0; b < r.B->size(); ++b)
    for (int x = 0; x < r.graph->n(); ++x) {
      if (!T.has_row(static_cast<Gen>(x), b)) continue;
      for (const auto& [c, p] : T.row(static_cast<Gen>(x), b))
        entries.push_back(
            json{{"x", x}, {"b", b}, {"c", c}, {"coeff", fpoly_to_string(p, *r.state)}});
    }
  (void)K;
  json j;
  j["schema"] = 1;
  j["entries"] = std::move(entries);
  return j;
}

json cert_json(const RunResult& r) {
  json j;
  j["schema"] = 1;
  auto steps_json = [&](const std::vector<CertStep>& steps) {
    json a = json::array();
    for (const auto& s : steps)
      a.push_back(json{{"var", s.var_name},
                       {"varId", s.var},
                       {"expr", fpoly_to_string(s.expr, *r.state)},
                       {"source", s.source}});
    return a;
  };
  j["steps"] = steps_json(r.cert.steps);
  j["interleaved"] = steps_json(r.cert.interleaved);
  j["free"] = r.cert.free;
  j["residualCount"] = r.cert.residual_count;
  j["residual"] = r.cert.residual;
  json red = json::array();
  for (const auto& rd : r.state->reductions)
    red.push_back(json{{"y", static_cast<int>(rd.y)}, {"c", rd.c}, {"rule", rd.rule}});
  j["initialReductions"] = std::move(red);
  return j;
}

}  // namespace

void write_artifacts(const RunResult& r, const RunConfig& cfg) {
  if (cfg.out_dir.empty()) return;
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  auto dump = [&](const std::string& name, const json& j) {
    std::ofstream os(fs::path(cfg.out_dir) / name);
    os << j.dump(2) << "\n";
  };
  dump("basis.json", basis_json(r));
  if (r.state) {
    dump("fset.json", fset_json(r));
    if (r.table) dump("table.json", table_json(*r.table, r));
    if (r.pre_min_table) dump("table_premin.json", table_json(*r.pre_min_table, r));
    dump("certificate.json", cert_json(r));
  }
  json rep;
  rep["schema"] = 1;
  rep["graph"] = r.graph->serialize();
  rep["field"] = field_str(cfg.field);
  rep["dimL0"] = r.dim_l0;
  json pl = json::array();
  for (size_t l = 1; l < r.per_length.size(); ++l) pl.push_back(r.per_length[l]);
  rep["perLength"] = std::move(pl);
  rep["partial"] = r.partial;
  if (!r.partial) {
    rep["dimX"] = r.dim_x;
    rep["free"] = r.free_flag;
  }
  if (cfg.collect_primes) {
    json primes = json::array();
    for (auto p : r.primes.all()) primes.push_back(p);
    rep["candidatePrimes"] = std::move(primes);
  }
  rep["wallTimeSec"] = r.wall_seconds;
  std::ofstream os(std::filesystem::path(cfg.out_dir) / "report.json");
  os << rep.dump(2) << "\n";
}

std::pair<std::unique_ptr<FSetState>, std::unique_ptr<MultTable>> convert_table(
    const FSetState& st, const MultTable& T, const FieldContext& K2) {
  auto st2 = std::make_unique<FSetState>(st.converted(K2));
  auto t2 = std::make_unique<MultTable>(T.converted(K2));
  return {std::move(st2), std::move(t2)};
}

std::vector<CrossCharDiff> cross_validate(const RunConfig& base_cfg, const RunResult& q_run,
                                          int jobs) {
  const std::set<std::uint64_t> pset = q_run.primes.all();
  std::vector<std::uint64_t> primes(pset.begin(), pset.end());
  std::vector<CrossCharDiff> out(primes.size());
  std::mutex mu;
  size_t next = 0;
  auto worker = [&]() {
    for (;;) {
      size_t i;
      {
        std::lock_guard<std::mutex> lk(mu);
        if (next >= primes.size()) return;
        i = next++;
      }
      CrossCharDiff d;
      d.p = primes[i];
      try {
        RunConfig cfg = base_cfg;
        cfg.field = FieldSpec::gf(primes[i]);
        cfg.collect_primes = false;
        cfg.out_dir.clear();
        RunResult r = run_full(cfg);
        d.dim_l0 = r.dim_l0;
        d.dim_x = r.dim_x;
        d.free_flag = r.free_flag;
        d.matches = r.dim_l0 == q_run.dim_l0 && r.dim_x == q_run.dim_x &&
                    r.free_flag == q_run.free_flag;
      } catch (const std::exception& e) {
        d.error = e.what();
      }
      out[i] = std::move(d);
    }
  };
  int nthreads = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace extremal
