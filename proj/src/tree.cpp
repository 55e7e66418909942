#include "ptree/tree.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ptree {

namespace {

using i64 = std::int64_t;

i64 ipow(i64 b, i64 e) {
  i64 v = 1;
  while (e-- > 0) v *= b;
  return v;
}

i64 ceil_div(i64 a, i64 b) { return (a + b - 1) / b; }

std::vector<TreeCell> run_round(const PartitionTree& t, const std::vector<Line>& H, const TreeConfig& cfg,
                                const std::vector<TreeCell>& prev, int b, i64 t_nominal, RoundStats& st) {
  std::vector<RefineCell> in;
  for (const TreeCell& c : prev) in.push_back({c.cell, c.points});
  RefineConfig rc = cfg.refine;
  rc.b = b;
  RefineOptions opt;
  opt.t_nominal = t_nominal;
  opt.audit = cfg.audit;
  opt.on_cutting = cfg.on_cutting;
  RefineResult res = refine(t.points, H, in, rc, opt);
  st.t = i64(prev.size());
  st.t_nominal = t_nominal;
  st.b = b;
  st.subcells = i64(res.subcells.size());
  st.budget = res.budget;
  st.point_cap = res.point_cap;
  st.cutting_cells = res.cutting_cells;
  st.audited = opt.audit;
  st.audit_ok = res.audit_ok;
  st.audit_message = res.audit_message;
  for (int l : res.lambda) st.max_lambda = std::max<i64>(st.max_lambda, l);
  std::vector<TreeCell> out;
  for (std::size_t s = 0; s < res.subcells.size(); ++s) {
    st.max_points = std::max<i64>(st.max_points, i64(res.subcells[s].points.size()));
    out.push_back({std::move(res.subcells[s].cell), std::move(res.subcells[s].points), res.parent[s], {}});
  }
  return out;
}

void link_children(PartitionTree& t) {
  for (std::size_t i = 1; i < t.levels.size(); ++i)
    for (std::size_t c = 0; c < t.levels[i].size(); ++c) {
      int p = t.levels[i][c].parent;
      if (p >= 0 && p < int(t.levels[i - 1].size())) t.levels[i - 1][p].children.push_back(int(c));
    }
}

}  // namespace

std::vector<Line> build_test_set(const std::vector<Point>& P) {
  if (P.size() < 2) throw InputError("test set needs at least 2 points");
  std::vector<Line> out;
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = i + 1; j < P.size(); ++j)
      if (!(P[i] == P[j])) out.push_back(Line::through(P[i], P[j]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Line> build_test_set_capped(const std::vector<Point>& P, std::int64_t cap) {
  if (cap <= 0 || i64(P.size()) <= cap) return build_test_set(P);
  // evenly spaced ranks in lexicographic order
  std::vector<Point> sorted = P;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  std::vector<Point> sample;
  const i64 n = i64(P.size());
  for (i64 i = 0; i < cap; ++i) sample.push_back(sorted[std::size_t(i * n / cap)]);
  return build_test_set(sample);
}

std::int64_t PartitionTree::nominal(std::size_t level) const {
  if (level == 0) return 1;
  return std::max<i64>(1, bprime) * ipow(b, i64(level) - 1);
}

Schedule tree_schedule(std::int64_t r, std::int64_t b) {
  if (r < 1 || b < 2) throw InputError("schedule needs r >= 1 and b >= 2");
  i64 k = 0;
  while (ipow(b, k + 1) <= r) ++k;
  return {k, ceil_div(r, ipow(b, k))};
}

PartitionTree build_tree(const std::vector<Point>& P, std::int64_t r, const TreeConfig& cfg) {
  const i64 n = i64(P.size());
  const int b = cfg.refine.b;
  if (b < 4 || (b & (b - 1)) != 0) throw InputError("b must be a power of two >= 4");
  if (n < 1) throw InputError("tree needs at least one point");
  if (r < std::max<i64>(1, cfg.r0) || r > n)
    throw InputError("r = " + std::to_string(r) + " out of range [" + std::to_string(std::max<i64>(1, cfg.r0)) +
                     ", " + std::to_string(n) + "]");
  PartitionTree t;
  t.points = P;
  t.r = r;
  t.b = b;
  Schedule s = tree_schedule(r, b);
  t.k = s.k;
  t.bprime = s.bprime;
  t.beff = 1;
  if (t.bprime > 1) {
    t.beff = 4;
    while (t.beff < t.bprime) t.beff *= 2;
  }
  std::vector<Line> H = n >= 2 ? build_test_set_capped(P, cfg.test_set_cap) : std::vector<Line>{};
  t.num_lines = i64(H.size());

  TreeCell root{SimplexCell::plane(make_frame(P)), {}, -1, {}};
  for (int i = 0; i < int(n); ++i) root.points.push_back(i);
  t.levels.push_back({root});
  if (t.bprime > 1) {
    RoundStats st;
    t.levels.push_back(run_round(t, H, cfg, t.levels[0], int(t.beff), 1, st));
    t.rounds.push_back(st);
  } else {
    TreeCell same = root;
    same.parent = 0;
    t.levels.push_back({same});
  }
  for (i64 i = 2; i <= t.k + 1; ++i) {
    RoundStats st;
    auto next = run_round(t, H, cfg, t.levels.back(), b, t.nominal(std::size_t(i - 1)), st);
    t.levels.push_back(std::move(next));
    t.rounds.push_back(st);
  }
  link_children(t);
  if (cfg.on_tree) cfg.on_tree(t);
  return t;
}

std::vector<std::int64_t> crossing_profile(const PartitionTree& t, const std::vector<Line>& probes) {
  std::vector<i64> out;
  for (const auto& level : t.levels) {
    i64 best = 0;
    for (const Line& l : probes) {
      i64 c = 0;
      for (const TreeCell& cell : level) c += cell.cell.crosses(l);
      best = std::max(best, c);
    }
    out.push_back(best);
  }
  return out;
}

std::vector<std::string> audit_tree(const PartitionTree& t, std::int64_t c1, std::int64_t c2) {
  std::vector<std::string> bad;
  const i64 n = t.n();
  auto where = [](std::size_t i, std::size_t c) {
    return "level " + std::to_string(i) + " cell " + std::to_string(c);
  };
  if (t.levels.empty()) return {"no levels"};
  if (t.levels.size() != std::size_t(t.k + 2)) bad.push_back("expected k + 2 levels");
  // property 1
  const auto& l0 = t.levels[0];
  if (l0.size() != 1 || !l0[0].cell.unbounded() || i64(l0[0].points.size()) != n)
    bad.push_back("property 1: level 0 is not the whole plane");
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    const auto& level = t.levels[i];
    // every level partitions P
    std::vector<int> seen(std::size_t(n), 0);
    for (std::size_t c = 0; c < level.size(); ++c) {
      const TreeCell& cell = level[c];
      if (!std::is_sorted(cell.points.begin(), cell.points.end())) bad.push_back(where(i, c) + ": point list unsorted");
      for (int id : cell.points) {
        if (id < 0 || id >= n) {
          bad.push_back(where(i, c) + ": point id out of range");
          continue;
        }
        ++seen[std::size_t(id)];
        if (!cell.cell.contains(t.points[std::size_t(id)]))
          bad.push_back(where(i, c) + ": does not contain point " + std::to_string(id));
      }
    }
    for (i64 p = 0; p < n; ++p)
      if (seen[std::size_t(p)] != 1)
        bad.push_back("level " + std::to_string(i) + ": point " + std::to_string(p) + " assigned " +
                      std::to_string(seen[std::size_t(p)]) + " times");
    if (i == 0) continue;
    // property 2
    const i64 nom = t.bprime * ipow(t.b, i64(i) - 1);
    if (i64(level.size()) > c1 * nom)
      bad.push_back("property 2: level " + std::to_string(i) + " has " + std::to_string(level.size()) +
                    " cells, cap " + std::to_string(c1 * nom));
    const i64 pcap = ceil_div(2 * n, nom);
    for (std::size_t c = 0; c < level.size(); ++c) {
      i64 sz = i64(level[c].points.size());
      if (sz < 1 || sz > pcap)
        bad.push_back("property 2: " + where(i, c) + " holds " + std::to_string(sz) + " points, cap " +
                      std::to_string(pcap));
    }
    // property 3
    const auto& up = t.levels[i - 1];
    for (std::size_t c = 0; c < level.size(); ++c) {
      const TreeCell& cell = level[c];
      if (cell.parent < 0 || cell.parent >= int(up.size())) {
        bad.push_back("property 3: " + where(i, c) + " has no parent");
        continue;
      }
      const TreeCell& par = up[std::size_t(cell.parent)];
      for (const Point& q : cell.cell.corners())
        if (!par.cell.contains(q)) {
          bad.push_back("property 3: " + where(i, c) + " leaves its parent");
          break;
        }
      if (!std::includes(par.points.begin(), par.points.end(), cell.points.begin(), cell.points.end()))
        bad.push_back("property 3: " + where(i, c) + " points not in its parent");
    }
    // property 4
    std::vector<i64> kids(up.size(), 0);
    for (const TreeCell& cell : level)
      if (cell.parent >= 0 && cell.parent < int(up.size())) ++kids[std::size_t(cell.parent)];
    const i64 kcap = c2 * (i == 1 ? t.bprime : t.b);
    for (std::size_t c = 0; c < up.size(); ++c)
      if (kids[c] > kcap)
        bad.push_back("property 4: " + where(i - 1, c) + " has " + std::to_string(kids[c]) + " children, cap " +
                      std::to_string(kcap));
  }
  return bad;
}

namespace {

void put_point(std::ostream& os, const Point& p) { os << p.X().str() << ' ' << p.Y().str() << ' ' << p.W().str(); }

Point get_point(std::istream& is) {
  std::string x, y, w;
  if (!(is >> x >> y >> w)) throw InputError("tree: truncated point");
  return Point::homogeneous(Integer::parse(x), Integer::parse(y), Integer::parse(w));
}

void expect(std::istream& is, const std::string& word) {
  std::string got;
  if (!(is >> got) || got != word) throw InputError("tree: expected '" + word + "', got '" + got + "'");
}

i64 get_int(std::istream& is) {
  i64 v;
  if (!(is >> v)) throw InputError("tree: expected an integer");
  return v;
}

}  // namespace

std::string serialize_tree(const PartitionTree& t) {
  std::ostringstream os;
  os << "# ptree-tree v1\n";
  os << "n " << t.n() << " r " << t.r << " b " << t.b << " bprime " << t.bprime << " beff " << t.beff << " k "
     << t.k << " lines " << t.num_lines << " theta " << t.theta.str() << '\n';
  for (const Point& p : t.points) {
    os << "point ";
    put_point(os, p);
    os << '\n';
  }
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    os << "level " << i << ' ' << t.levels[i].size() << '\n';
    for (const TreeCell& c : t.levels[i]) {
      os << "cell " << c.parent << ' ' << int(c.cell.unbounded());
      for (int e = 0; e < 3; ++e) os << int(c.cell.frame_edge(e));
      for (const Point& q : c.cell.corners()) {
        os << ' ';
        put_point(os, q);
      }
      os << " |";
      for (int e = 0; e < 3; ++e) {
        const Line& l = c.cell.edge(e);
        os << ' ' << l.a().str() << ' ' << l.b().str() << ' ' << l.c().str();
      }
      os << " | " << c.points.size();
      for (int id : c.points) os << ' ' << id;
      os << '\n';
    }
  }
  return os.str();
}

PartitionTree deserialize_tree(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  std::getline(is, header);
  if (header != "# ptree-tree v1") throw InputError("tree: bad header");
  PartitionTree t;
  i64 n;
  expect(is, "n");
  n = get_int(is);
  expect(is, "r");
  t.r = get_int(is);
  expect(is, "b");
  t.b = get_int(is);
  expect(is, "bprime");
  t.bprime = get_int(is);
  expect(is, "beff");
  t.beff = get_int(is);
  expect(is, "k");
  t.k = get_int(is);
  expect(is, "lines");
  t.num_lines = get_int(is);
  expect(is, "theta");
  std::string th;
  is >> th;
  t.theta = Scalar::parse(th);
  if (n < 0) throw InputError("tree: negative n");
  for (i64 i = 0; i < n; ++i) {
    expect(is, "point");
    t.points.push_back(get_point(is));
    t.points.back().id = i;
  }
  for (i64 i = 0; i < t.k + 2; ++i) {
    expect(is, "level");
    if (get_int(is) != i) throw InputError("tree: levels out of order");
    i64 count = get_int(is);
    std::vector<TreeCell> level;
    for (i64 c = 0; c < count; ++c) {
      expect(is, "cell");
      TreeCell cell;
      cell.parent = int(get_int(is));
      std::string flags;
      is >> flags;
      if (flags.size() != 4) throw InputError("tree: bad cell flags");
      Point a = get_point(is), b = get_point(is), d = get_point(is);
      if (orient(a, b, d) <= 0) throw InputError("tree: cell corners not counterclockwise");
      cell.cell = SimplexCell(a, b, d);
      cell.cell.set_unbounded(flags[0] == '1');
      for (int e = 0; e < 3; ++e) cell.cell.set_frame_edge(e, flags[std::size_t(e) + 1] == '1');
      expect(is, "|");
      for (int e = 0; e < 3; ++e) {
        std::string x, y, z;
        is >> x >> y >> z;
        if (!(Line(Integer::parse(x), Integer::parse(y), Integer::parse(z)) == cell.cell.edge(e)))
          throw InputError("tree: edge line does not match corners");
      }
      expect(is, "|");
      i64 np = get_int(is);
      for (i64 k = 0; k < np; ++k) cell.points.push_back(int(get_int(is)));
      level.push_back(std::move(cell));
    }
    t.levels.push_back(std::move(level));
  }
  link_children(t);
  return t;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ptree
