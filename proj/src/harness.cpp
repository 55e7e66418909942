#include "ptree/harness.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "ptree/oracle.hpp"

namespace ptree {

namespace {

using i64 = std::int64_t;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void fail(CheckResult& r, const std::string& msg) {
  if (r.failures.size() < 10) r.failures.push_back(msg);
}

void mismatch(CheckResult& r, const Query& q, const std::string& got, const std::string& want) {
  ++r.mismatches;
  fail(r, r.structure + " query " + std::to_string(q.id) + " (" + std::to_string(int(q.kind)) + "): got " + got +
              ", oracle " + want);
}

std::string ids_str(const std::vector<i64>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  os << ']';
  return os.str();
}

void hook_cuttings(TreeConfig& tc, const Params& p, CheckResult& r) {
  if (!p.verify_cuttings) return;
  tc.on_cutting = [&r](const Cutting& c, const WeightedLineSet& W, const Scalar& used) {
    ++r.cutting_checks;
    auto chk = oracle::verify_cutting(c, W.lines, W.exponents, used);
    if (!chk.ok) {
      ++r.cutting_failures;
      fail(r, "cutting: " + chk.message);
    }
  };
}

}  // namespace

TreeConfig tree_config(const Params& p) {
  TreeConfig tc;
  tc.refine.b = p.b;
  tc.refine.beta = p.beta;
  tc.refine.c_cut = p.c_cut;
  tc.test_set_cap = p.test_set_cap;
  tc.audit = p.audit;
  tc.on_tree = p.on_tree;
  return tc;
}

RangeCountConfig rangecount_config(const Params& p) {
  RangeCountConfig c;
  c.r = p.r;
  c.r1 = p.r1;
  c.t_leaf = p.t_leaf;
  c.b = c.b1 = p.b;
  c.tree = tree_config(p);
  return c;
}

StabbingConfig stabbing_config(const Params& p) {
  StabbingConfig c;
  c.r = p.r;
  c.b = p.b;
  c.eps = p.eps;
  c.t_leaf = p.t_leaf;
  c.tree = tree_config(p);
  return c;
}

StoreConfig store_config(const Params& p) {
  StoreConfig c;
  c.r = p.r;
  c.b = p.b;
  c.tree = tree_config(p);
  return c;
}

double median(std::vector<std::int64_t> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? double(v[m]) : (double(v[m - 1]) + double(v[m])) / 2;
}

CheckResult check_rangecount(const Dataset& d, const std::vector<Query>& qs, const Params& p) {
  CheckResult r;
  r.structure = "rangecount";
  RangeCountConfig cfg = rangecount_config(p);
  hook_cuttings(cfg.tree, p, r);
  auto t0 = Clock::now();
  RangeCountIndex idx(d.points, cfg);
  r.build_seconds = since(t0);
  r.hash = fnv1a64(idx.serialize());
  for (auto& s : idx.audit()) fail(r, "audit: " + s);
  t0 = Clock::now();
  for (const Query& q : qs) {
    QueryStats st;
    i64 got, want;
    if (q.kind == QueryKind::Triangle) {
      got = idx.count_in_triangle(q.tri, &st);
      want = oracle::count_in_triangle(d.points, q.tri);
    } else if (q.kind == QueryKind::Halfplane) {
      got = idx.count_in_halfplane(q.line, q.side, &st);
      want = oracle::count_in_halfplane(d.points, q.line, q.side);
    } else {
      continue;
    }
    ++r.queries;
    r.visited.push_back(st.leaf_visits);
    r.cells.push_back(st.visited_cells);
    r.kinds.push_back(q.kind);
    if (got != want) mismatch(r, q, std::to_string(got), std::to_string(want));
  }
  r.query_seconds = since(t0);
  return r;
}

CheckResult check_stabbing(const Dataset& d, const std::vector<Query>& qs, const Params& p) {
  CheckResult r;
  r.structure = "stabbing";
  StabbingConfig cfg = stabbing_config(p);
  hook_cuttings(cfg.tree, p, r);
  auto t0 = Clock::now();
  StabbingIndex idx(d.triangles, cfg);
  r.build_seconds = since(t0);
  r.hash = fnv1a64(idx.serialize());
  t0 = Clock::now();
  for (const Query& q : qs) {
    if (q.kind != QueryKind::Point) continue;
    ++r.queries;
    StabStats st;
    i64 c = idx.count(q.point, &st);
    auto ids = idx.report(q.point);
    auto want = oracle::stab(d.triangles, q.point);
    r.visited.push_back(st.leaf_queries);
    r.cells.push_back(st.visited_cells);
    r.kinds.push_back(q.kind);
    if (c != i64(want.size())) mismatch(r, q, std::to_string(c), std::to_string(want.size()));
    else if (ids != want) mismatch(r, q, ids_str(ids), ids_str(want));
  }
  r.query_seconds = since(t0);
  return r;
}

CheckResult check_segquery(const Dataset& d, const std::vector<Query>& qs, const Params& p) {
  CheckResult r;
  r.structure = "segquery";
  StoreConfig cfg = store_config(p);
  hook_cuttings(cfg.tree, p, r);
  auto t0 = Clock::now();
  SegQueryIndex idx(d.segments, cfg);
  r.build_seconds = since(t0);
  r.hash = fnv1a64(idx.serialize());
  for (auto& s : idx.store().audit()) fail(r, "audit: " + s);
  t0 = Clock::now();
  for (const Query& q : qs) {
    SegStats st;
    if (q.kind == QueryKind::Line) {
      bool got = idx.detect_line(q.line, &st);
      bool want = oracle::detect_line(d.segments, q.line);
      if (got != want) mismatch(r, q, std::to_string(got), std::to_string(want));
    } else if (q.kind == QueryKind::Segment) {
      i64 c = idx.count_intersecting(q.segment, &st);
      auto ids = idx.report_intersecting(q.segment);
      auto want = oracle::segments_hit(d.segments, q.segment);
      if (c != i64(want.size())) mismatch(r, q, std::to_string(c), std::to_string(want.size()));
      else if (ids != want) mismatch(r, q, ids_str(ids), ids_str(want));
    } else {
      continue;
    }
    ++r.queries;
    r.visited.push_back(st.visited_cells);
    r.cells.push_back(st.visited_cells);
    r.kinds.push_back(q.kind);
  }
  r.query_seconds = since(t0);
  return r;
}

CheckResult check_rayshoot(const Dataset& d, const std::vector<Query>& qs, const Params& p) {
  CheckResult r;
  r.structure = "rayshoot";
  StoreConfig cfg = store_config(p);
  hook_cuttings(cfg.tree, p, r);
  auto t0 = Clock::now();
  RayShootIndex idx(d.segments, cfg);
  r.build_seconds = since(t0);
  r.hash = fnv1a64(idx.serialize());
  for (auto& s : idx.store().audit()) fail(r, "audit: " + s);
  t0 = Clock::now();
  for (const Query& q : qs) {
    if (q.kind != QueryKind::Ray) continue;
    ++r.queries;
    RayStats st;
    auto got = idx.shoot(q.ray, &st);
    auto want = oracle::first_hit(d.segments, q.ray);
    r.visited.push_back(st.visited_cells);
    r.cells.push_back(st.visited_cells);
    r.kinds.push_back(q.kind);
    if (st.unsound_candidates) fail(r, "rayshoot query " + std::to_string(q.id) + ": unsound candidate");
    auto show = [](i64 id, const Point& pt) { return std::to_string(id) + "@" + pt.str(); };
    if (got.has_value() != want.has_value())
      mismatch(r, q, got ? show(got->id, got->point) : "none", want ? show(want->id, want->point) : "none");
    else if (got && (got->id != want->id || !(got->point == want->point) || got->t != want->t))
      mismatch(r, q, show(got->id, got->point), show(want->id, want->point));
  }
  r.query_seconds = since(t0);
  return r;
}

}  // namespace ptree
