#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ptree/generate.hpp"
#include "ptree/harness.hpp"
#include "ptree/oracle.hpp"

using namespace ptree;
using json = nlohmann::json;

namespace {

struct RunConfig {
  std::int64_t n = 64;
  std::uint64_t seed = 1;
  std::string family = "uniform";
  int b = 8;
  std::string beta = "1/10", eps = "1/2", ccut = "1/4";
  std::int64_t r = 0, r1 = 0, tleaf = 8;
  std::string in, out, queries, stats, tree;
  std::string format = "csv";
  std::string structure = "rangecount";
  std::int64_t count = 100;
  std::int64_t steps = 3;
  bool verify_cuttings = false;
};

struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Params params_of(const RunConfig& c) {
  Params p;
  p.b = c.b;
  p.beta = Scalar::parse(c.beta);
  p.eps = Scalar::parse(c.eps);
  p.c_cut = Scalar::parse(c.ccut);
  p.r = c.r;
  p.r1 = c.r1;
  p.t_leaf = c.tleaf;
  p.verify_cuttings = c.verify_cuttings;
  return p;
}

Dataset dataset_of(const RunConfig& c) {
  if (!c.in.empty()) return load_dataset(c.in);
  return Generator(parse_family(c.family), c.n, c.seed).dataset();
}

const std::vector<QueryKind> kAllKinds = {QueryKind::Triangle, QueryKind::Halfplane, QueryKind::Point,
                                          QueryKind::Line,     QueryKind::Segment,   QueryKind::Ray};

std::vector<Query> queries_of(const RunConfig& c, const Dataset& d) {
  if (!c.queries.empty()) return load_queries(c.queries);
  // query seed derived from the dataset seed so both stay reproducible
  Generator g(parse_family(c.family), c.n, c.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Query> qs;
  for (QueryKind k : kAllKinds) {
    auto part = g.queries(d, k, c.count);
    qs.insert(qs.end(), part.begin(), part.end());
  }
  for (std::size_t i = 0; i < qs.size(); ++i) qs[i].id = std::int64_t(i);
  return qs;
}

// Writes to path, or stdout for "" / "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

int cmd_gen(const RunConfig& c) {
  Generator g(parse_family(c.family), c.n, c.seed);
  Dataset d = g.dataset();
  std::ostringstream os;
  write_dataset(os, d);
  emit(c.out, os.str());
  if (!c.queries.empty()) {
    RunConfig q = c;
    q.queries.clear();
    std::ostringstream qs;
    write_queries(qs, queries_of(q, d));
    emit(c.queries, qs.str());
  }
  return 0;
}

json tree_json(const PartitionTree& t) {
  json j;
  j["n"] = t.n();
  j["r"] = t.r;
  j["b"] = t.b;
  j["bprime"] = t.bprime;
  j["k"] = t.k;
  j["test_set_lines"] = t.num_lines;
  json cells = json::array();
  for (auto& l : t.levels) cells.push_back(l.size());
  j["cells_per_level"] = cells;
  json rounds = json::array();
  for (auto& r : t.rounds)
    rounds.push_back({{"t", r.t}, {"t_nominal", r.t_nominal}, {"b", r.b}, {"subcells", r.subcells}, {"budget", r.budget},
                      {"point_cap", r.point_cap}, {"max_points", r.max_points}, {"cutting_cells", r.cutting_cells}});
  j["rounds"] = rounds;
  if (t.n() >= 2) {
    auto probes = build_test_set_capped(t.points, 64);
    j["crossing_profile"] = crossing_profile(t, probes);
  }
  return j;
}

int cmd_build(const RunConfig& c) {
  Dataset d = dataset_of(c);
  Params p = params_of(c);
  json j;
  j["structure"] = c.structure;
  std::string text;
  auto t0 = std::chrono::steady_clock::now();
  if (c.structure == "tree") {
    std::int64_t r = c.r > 0 ? c.r : std::max<std::int64_t>(1, std::int64_t(d.points.size()) / 8);
    PartitionTree t = build_tree(d.points, r, tree_config(p));
    text = serialize_tree(t);
    j["tree"] = tree_json(t);
  } else if (c.structure == "rangecount") {
    RangeCountIndex idx(d.points, rangecount_config(p));
    text = idx.serialize();
    j["tree"] = tree_json(idx.stage1());
    j["final_leaves"] = idx.num_final_leaves();
    j["max_final_leaf"] = idx.max_final_leaf();
  } else if (c.structure == "stabbing") {
    StabbingIndex idx(d.triangles, stabbing_config(p));
    text = idx.serialize();
    j["schedule"] = idx.top_schedule().j;
    j["trees"] = idx.space().trees;
    j["leaf_structures"] = idx.space().leaf_structures;
    j["stored_ids"] = idx.space().stored_ids;
    j["stored_ids_per_triangle"] = double(idx.space().stored_ids) / double(idx.size());
  } else if (c.structure == "segquery" || c.structure == "rayshoot") {
    std::unique_ptr<SegQueryIndex> sq;
    std::unique_ptr<RayShootIndex> rs;
    const SegmentStore* store;
    if (c.structure == "segquery") {
      sq = std::make_unique<SegQueryIndex>(d.segments, store_config(p));
      text = sq->serialize();
      store = &sq->store();
    } else {
      rs = std::make_unique<RayShootIndex>(d.segments, store_config(p));
      text = rs->serialize();
      store = &rs->store();
    }
    if (!store->empty()) j["tree"] = tree_json(store->tree());
    std::int64_t edge = 0, leaf = 0;
    for (auto& pl : store->placement()) (pl.edge >= 0 ? edge : leaf) += 1;
    j["stored_at_edges"] = edge;
    j["stored_at_leaves"] = leaf;
  } else {
    throw InputError("unknown structure '" + c.structure + "'");
  }
  j["build_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  j["hash"] = hex64(fnv1a64(text));
  if (!c.out.empty()) emit(c.out, text);
  emit(c.stats, j.dump(2) + "\n");
  return 0;
}

int cmd_query(const RunConfig& c) {
  Dataset d = dataset_of(c);
  std::vector<Query> qs = queries_of(c, d);
  Params p = params_of(c);
  json rows = json::array();
  std::ostringstream csv;
  auto row = [&](const Query& q, const std::string& answer, std::int64_t visited) {
    if (c.format == "json")
      rows.push_back({{"query_id", q.id}, {"kind", query_kind_name(q.kind)}, {"answer", answer}, {"visited", visited}});
    else
      csv << q.id << ',' << query_kind_name(q.kind) << ',' << answer << ',' << visited << '\n';
  };
  auto join = [](const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
  };
  csv << "query_id,kind,answer,visited\n";
  if (c.structure == "rangecount") {
    RangeCountIndex idx(d.points, rangecount_config(p));
    for (const Query& q : qs) {
      QueryStats st;
      std::int64_t got;
      if (q.kind == QueryKind::Triangle) got = idx.count_in_triangle(q.tri, &st);
      else if (q.kind == QueryKind::Halfplane) got = idx.count_in_halfplane(q.line, q.side, &st);
      else continue;
      row(q, std::to_string(got), st.visited_cells);
    }
  } else if (c.structure == "stabbing") {
    StabbingIndex idx(d.triangles, stabbing_config(p));
    for (const Query& q : qs) {
      if (q.kind != QueryKind::Point) continue;
      StabStats st;
      auto ids = idx.report(q.point, &st);
      row(q, std::to_string(ids.size()) + (ids.empty() ? "" : " ") + join(ids), st.visited_cells);
    }
  } else if (c.structure == "segquery") {
    SegQueryIndex idx(d.segments, store_config(p));
    for (const Query& q : qs) {
      SegStats st;
      if (q.kind == QueryKind::Line) {
        bool hit = idx.detect_line(q.line, &st);
        row(q, hit ? "1" : "0", st.visited_cells);
      }
      if (q.kind == QueryKind::Segment) {
        auto ids = idx.report_intersecting(q.segment, &st);
        row(q, std::to_string(ids.size()) + (ids.empty() ? "" : " ") + join(ids), st.visited_cells);
      }
    }
  } else if (c.structure == "rayshoot") {
    RayShootIndex idx(d.segments, store_config(p));
    for (const Query& q : qs) {
      if (q.kind != QueryKind::Ray) continue;
      RayStats st;
      auto h = idx.shoot(q.ray, &st);
      row(q, h ? std::to_string(h->id) + " " + h->point.x().str() + " " + h->point.y().str() : "none",
          st.visited_cells);
    }
  } else {
    throw InputError("unknown structure '" + c.structure + "'");
  }
  emit(c.out, c.format == "json" ? rows.dump(2) + "\n" : csv.str());
  return 0;
}

int cmd_verify(const RunConfig& c) {
  json report;
  bool ok = true;
  if (!c.tree.empty()) {
    std::ifstream f(c.tree, std::ios::binary);
    if (!f) throw InputError("cannot read " + c.tree);
    std::stringstream ss;
    ss << f.rdbuf();
    PartitionTree t = deserialize_tree(ss.str());
    auto bad = audit_tree(t);
    report["tree"] = {{"path", c.tree}, {"violations", bad}};
    ok = bad.empty();
  } else {
    Dataset d = dataset_of(c);
    std::vector<Query> qs = queries_of(c, d);
    Params p = params_of(c);
    // partition tree over the points on its own, audit mode on
    if (d.points.size() >= 1) {
      Params pa = p;
      pa.audit = d.points.size() <= 64;
      std::int64_t r = c.r > 0 ? std::min<std::int64_t>(c.r, std::int64_t(d.points.size()))
                               : std::max<std::int64_t>(1, std::int64_t(d.points.size()) / 8);
      PartitionTree t = build_tree(d.points, r, tree_config(pa));
      auto bad = audit_tree(t);
      for (auto& rs : t.rounds)
        if (!rs.audit_ok) bad.push_back("refine audit: " + rs.audit_message);
      report["tree"] = {{"violations", bad}, {"hash", hex64(fnv1a64(serialize_tree(t)))}};
      ok = ok && bad.empty();
    }
    std::vector<CheckResult> results;
    if (!d.points.empty()) results.push_back(check_rangecount(d, qs, p));
    if (!d.triangles.empty()) results.push_back(check_stabbing(d, qs, p));
    results.push_back(check_segquery(d, qs, p));
    results.push_back(check_rayshoot(d, qs, p));
    for (const CheckResult& r : results) {
      report[r.structure] = {{"queries", r.queries},   {"mismatches", r.mismatches},
                             {"failures", r.failures}, {"cutting_checks", r.cutting_checks},
                             {"hash", hex64(r.hash)},  {"median_visited", median(r.cells)}};
      ok = ok && r.ok();
    }
    const MultisetTally& mt = multiset_tally();
    report["multiset"] = {{"calls", mt.calls}, {"over_bound", mt.over_bound}};
    ok = ok && mt.over_bound == 0;
  }
  report["ok"] = ok;
  emit(c.out, report.dump(2) + "\n");
  if (!ok) throw InvariantFailure("verification failed");
  return 0;
}

int cmd_bench(const RunConfig& c) {
  Params p = params_of(c);
  json rows = json::array();
  std::ostringstream csv;
  csv << "n,structure,median_final_cells,median_cells,ratio,build_seconds,query_seconds\n";
  std::map<std::string, double> prev;
  std::int64_t n = c.n;
  for (std::int64_t s = 0; s < c.steps; ++s, n *= 2) {
    Generator g(parse_family(c.family), n, c.seed);
    Dataset d = g.dataset();
    RunConfig qc = c;
    qc.n = n;
    std::vector<Query> qs = queries_of(qc, d);
    for (const CheckResult& r : {check_rangecount(d, qs, p), check_stabbing(d, qs, p), check_segquery(d, qs, p),
                                 check_rayshoot(d, qs, p)}) {
      double med = median(r.visited);
      double ratio = prev.count(r.structure) && prev[r.structure] > 0 ? med / prev[r.structure] : 0;
      prev[r.structure] = med;
      csv << n << ',' << r.structure << ',' << med << ',' << median(r.cells) << ',' << ratio << ','
          << r.build_seconds << ',' << r.query_seconds << '\n';
      rows.push_back({{"n", n},
                      {"structure", r.structure},
                      {"median_final_cells", med},
                      {"median_cells", median(r.cells)},
                      {"ratio", ratio},
                      {"build_seconds", r.build_seconds},
                      {"query_seconds", r.query_seconds},
                      {"mismatches", r.mismatches}});
    }
  }
  emit(c.out, c.format == "json" ? rows.dump(2) + "\n" : csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition-tree engine: dataset generation, builds, queries, audits and benchmarks"};
  app.require_subcommand(1);
  RunConfig c;
  auto common = [&](CLI::App* s) {
    s->add_option("--n", c.n, "number of items")->check(CLI::PositiveNumber);
    s->add_option("--seed", c.seed, "generator seed");
    s->add_option("--family", c.family, "uniform | clustered | grid | collinear-degenerate");
    s->add_option("--b", c.b, "branching parameter (power of two >= 4)");
    s->add_option("--beta", c.beta, "refinement beta as n or n/d");
    s->add_option("--eps", c.eps, "stabbing schedule epsilon as n/d");
    s->add_option("--r", c.r, "tree parameter r (0: structure default)");
    s->add_option("--r1", c.r1, "second-stage r for range counting (0: default)");
    s->add_option("--tleaf", c.tleaf, "leaf subproblem size");
    s->add_option("--ccut", c.ccut, "cutting constant as n/d");
    s->add_option("--out", c.out, "output path (default stdout)");
    s->add_option("--queries", c.queries, "query file (read; gen writes it)");
    s->add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--in", c.in, "dataset file instead of generating one");
    s->add_option("--count", c.count, "generated queries per kind");
  };
  auto* gen = app.add_subcommand("gen", "generate a dataset (and queries with --queries)");
  common(gen);
  auto* build = app.add_subcommand("build", "build a structure; stats JSON to stdout or --stats");
  common(build);
  build->add_option("--structure", c.structure, "tree | rangecount | stabbing | segquery | rayshoot");
  build->add_option("--stats", c.stats, "build-stats JSON path");
  auto* query = app.add_subcommand("query", "answer a query batch");
  common(query);
  query->add_option("--structure", c.structure, "rangecount | stabbing | segquery | rayshoot");
  auto* verify = app.add_subcommand("verify", "audit structures and compare every answer with the oracle");
  common(verify);
  verify->add_option("--tree", c.tree, "audit a serialized tree file instead");
  verify->add_flag("--verify-cuttings", c.verify_cuttings, "check every cutting exactly");
  auto* bench = app.add_subcommand("bench", "scaling table over a doubling schedule of n");
  common(bench);
  bench->add_option("--steps", c.steps, "number of doublings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*gen) return cmd_gen(c);
    if (*build) return cmd_build(c);
    if (*query) return cmd_query(c);
    if (*verify) return cmd_verify(c);
    if (*bench) return cmd_bench(c);
  } catch (const InvariantFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
