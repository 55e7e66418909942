#include "ptree/stabbing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ptree/arrangement.hpp"

namespace ptree {

namespace {

using i64 = std::int64_t;

i64 ipow(i64 b, i64 e) {
  i64 v = 1;
  while (e-- > 0) v *= b;
  return v;
}

// Smallest integer m with b' * b^m >= r^(N/D).
i64 ceil_log_exponent(i64 r, i64 b, i64 bprime, const Scalar& e) {
  const Integer& N = e.num();
  const Integer& D = e.den();
  if (D.fits_i64() && D.to_i64() <= 4096 && N.fits_i64()) {
    const unsigned d = unsigned(D.to_i64()), nn = unsigned(N.to_i64());
    const BigInt rhs = boost::multiprecision::pow(BigInt(r), nn);
    const BigInt bD = boost::multiprecision::pow(BigInt(b), d);
    BigInt lhs = boost::multiprecision::pow(BigInt(bprime), d);  // (b' b^m)^D at m = 0
    i64 m = 0;
    if (lhs >= rhs) {
      // move down while still large enough
      BigInt scaled = rhs * bD;
      while (lhs >= scaled) {
        --m;
        scaled *= bD;
      }
      return m;
    }
    while (lhs < rhs) {
      lhs *= bD;
      ++m;
    }
    return m;
  }
  long double x = (e.to_double() * std::log((long double)r) - std::log((long double)bprime)) / std::log((long double)b);
  return i64(std::ceil(x - 1e-12L));
}

}  // namespace

StabSchedule stab_schedule(std::int64_t r, std::int64_t b, const Scalar& eps) {
  if (!(eps > Scalar(0) && eps < Scalar(1))) throw InputError("eps must lie in (0, 1)");
  Schedule s = tree_schedule(r, b);
  StabSchedule out;
  out.k = s.k;
  out.bprime = s.bprime;
  const i64 jmax = s.bprime * ipow(b, s.k) <= r ? s.k + 1 : s.k;
  auto done = [&](i64 j) { return r < b * s.bprime * ipow(b, j - 1); };
  out.j.push_back(1);
  Scalar keep = Scalar(1);  // (1 - eps)^i
  for (int i = 1; !done(out.j.back()); ++i) {
    if (i > 256) throw Error("stabbing schedule did not terminate");
    keep = keep * (Scalar(1) - eps);
    i64 j = ceil_log_exponent(r, b, s.bprime, Scalar(1) - keep) + 1;
    out.j.push_back(std::clamp<i64>(j, 1, std::max<i64>(1, jmax)));
  }
  return out;
}

namespace {

struct Tri {
  Line line[3];
  int side[3];   // closed side of line holding the triangle
  int sigma[3];  // +1: point must be above line, -1: below
};

bool tri_contains(const Tri& t, int k, const Point& p) {
  for (int j = 0; j < k; ++j)
    if (side(t.line[j], p) * t.side[j] < 0) return false;
  return true;
}

}  // namespace

struct Group;

struct StabbingIndex::Level {
  int k = 0;
  i64 count = 0;
  std::vector<int> ids;  // k == 0, reporting
  // leaf arrangement
  std::shared_ptr<Arrangement> arr;
  std::vector<i64> fcount;
  std::vector<std::vector<int>> fids;
  std::vector<Group> groups;
  bool leaf() const { return arr != nullptr; }
};

struct Group {
  int sigma = 1;
  int k = 0;
  PartitionTree tree;
  std::vector<std::int64_t> lv;                                        // scheduled levels, increasing
  std::vector<std::vector<std::unique_ptr<StabbingIndex::Level>>> sec;  // [i][cell]
  std::vector<std::vector<std::vector<int>>> next;                     // [i][cell] -> cells at lv[i+1]
  std::vector<std::unique_ptr<StabbingIndex::Level>> last;             // per cell at lv.back()
};

namespace {

using Level = StabbingIndex::Level;

struct Builder {
  const std::vector<Tri>& T;
  const StabbingConfig& cfg;
  StabSpace& sp;

  std::unique_ptr<Level> leaf(const std::vector<int>& ids, int k) {
    auto L = std::make_unique<Level>();
    L->k = k;
    L->count = i64(ids.size());
    std::vector<Line> lines;
    for (int id : ids)
      for (int j = 0; j < k; ++j) lines.push_back(T[std::size_t(id)].line[j]);
    L->arr = std::make_shared<Arrangement>(lines);
    Annotation a = annotate_counts(
        *L->arr, int(ids.size()), [&](int i, const Point& p) { return tri_contains(T[std::size_t(ids[std::size_t(i)])], k, p); },
        cfg.reporting);
    L->fcount = std::move(a.counts);
    if (cfg.reporting) {
      L->fids = std::move(a.ids);
      for (auto& f : L->fids) {
        for (int& i : f) i = ids[std::size_t(i)];
        sp.stored_ids += i64(f.size());
      }
    }
    ++sp.leaf_structures;
    return L;
  }

  std::unique_ptr<Level> level(const std::vector<int>& ids, int k, bool top) {
    if (k > 0 && i64(ids.size()) <= cfg.t_leaf) return leaf(ids, k);
    auto L = std::make_unique<Level>();
    L->k = k;
    L->count = i64(ids.size());
    if (k == 0) {
      if (cfg.reporting) {
        L->ids = ids;
        sp.stored_ids += i64(ids.size());
      }
      return L;
    }
    for (int sg : {1, -1}) {
      std::vector<int> sub;
      for (int id : ids)
        if (T[std::size_t(id)].sigma[k - 1] == sg) sub.push_back(id);
      if (!sub.empty()) L->groups.push_back(group(sub, k, sg, top));
    }
    return L;
  }

  Group group(const std::vector<int>& sub, int k, int sg, bool top) {
    Group g;
    g.sigma = sg;
    g.k = k;
    // distinct dual points of the k-th constraint lines
    std::vector<std::pair<Point, int>> dp;
    for (int id : sub) dp.push_back({dualize_line(T[std::size_t(id)].line[k - 1]), id});
    std::stable_sort(dp.begin(), dp.end(), [](auto& a, auto& b) { return lex_less(a.first, b.first); });
    std::vector<Point> pts;
    std::vector<std::vector<int>> items;
    for (auto& [p, id] : dp) {
      if (pts.empty() || !(pts.back() == p)) {
        pts.push_back(p);
        items.emplace_back();
      }
      items.back().push_back(id);
    }
    const i64 m = i64(pts.size());
    i64 r = top && cfg.r > 0 ? cfg.r : std::max<i64>(4, m / cfg.t_leaf);
    r = std::clamp<i64>(r, 1, m);
    TreeConfig tc = cfg.tree;
    tc.refine.b = cfg.b;
    g.tree = build_tree(pts, r, tc);
    ++sp.trees;
    StabSchedule s = stab_schedule(r, cfg.b, cfg.eps);
    for (i64 j : s.j) {
      j = std::min<i64>(j, i64(g.tree.levels.size()) - 1);
      if (g.lv.empty() || j > g.lv.back()) g.lv.push_back(j);
    }
    sp.max_l = std::max<i64>(sp.max_l, s.l());
    auto cell_items = [&](const TreeCell& c) {
      std::vector<int> out;
      for (int p : c.points) out.insert(out.end(), items[std::size_t(p)].begin(), items[std::size_t(p)].end());
      std::sort(out.begin(), out.end());
      return out;
    };
    for (std::size_t i = 0; i < g.lv.size(); ++i) {
      const auto& cells = g.tree.levels[std::size_t(g.lv[i])];
      g.sec.emplace_back();
      for (const TreeCell& c : cells) g.sec[i].push_back(level(cell_items(c), k - 1, false));
      if (i + 1 < g.lv.size()) {
        g.next.emplace_back(cells.size());
        const i64 to = g.lv[i + 1];
        const auto& below = g.tree.levels[std::size_t(to)];
        for (std::size_t c = 0; c < below.size(); ++c) {
          int a = int(c);
          for (i64 lvl = to; lvl > g.lv[i]; --lvl) a = g.tree.levels[std::size_t(lvl)][std::size_t(a)].parent;
          g.next[i][std::size_t(a)].push_back(int(c));
        }
      }
    }
    for (const TreeCell& c : g.tree.levels[std::size_t(g.lv.back())]) {
      std::vector<int> ci = cell_items(c);
      // recurse on the same level only when the cell made progress
      g.last.push_back(ci.size() < sub.size() ? level(ci, k, false) : leaf(ci, k));
    }
    return g;
  }
};

struct Acc {
  i64 count = 0;
  std::vector<std::int64_t>* ids = nullptr;
  StabStats st;
};

void query(const Level& L, const Point& q, const Line& qd, Acc& acc);

void visit(const Group& g, std::size_t i, int c, const Point& q, const Line& qd, Acc& acc) {
  ++acc.st.visited_cells;
  ++acc.st.cells_by_level[std::size_t(g.k)];
  const SimplexCell& cell = g.tree.levels[std::size_t(g.lv[i])][std::size_t(c)].cell;
  int good = 0, bad = 0;
  for (const Point& v : cell.corners()) {
    int a = above(qd, v) * g.sigma;
    good += a >= 0;
    bad += a < 0;
  }
  if (bad == 3) return;
  if (good == 3) return query(*g.sec[i][std::size_t(c)], q, qd, acc);
  if (i + 1 < g.lv.size()) {
    for (int d : g.next[i][std::size_t(c)]) visit(g, i + 1, d, q, qd, acc);
    return;
  }
  query(*g.last[std::size_t(c)], q, qd, acc);
}

void query(const Level& L, const Point& q, const Line& qd, Acc& acc) {
  if (L.k == 0) {
    acc.count += L.count;
    if (acc.ids) acc.ids->insert(acc.ids->end(), L.ids.begin(), L.ids.end());
    return;
  }
  if (L.leaf()) {
    ++acc.st.leaf_queries;
    ++acc.st.leaves_by_level[std::size_t(L.k)];
    int f = L.arr->locate_feature(q);
    acc.count += L.fcount[std::size_t(f)];
    if (acc.ids) acc.ids->insert(acc.ids->end(), L.fids[std::size_t(f)].begin(), L.fids[std::size_t(f)].end());
    return;
  }
  for (const Group& g : L.groups)
    for (int c = 0; c < int(g.sec[0].size()); ++c) visit(g, 0, c, q, qd, acc);
}

void dump(std::ostream& os, const Level& L) {
  os << "level " << L.k << ' ' << L.count << ' ' << L.leaf() << ' ' << L.groups.size() << '\n';
  if (L.leaf()) {
    for (i64 c : L.fcount) os << c << ' ';
    os << '\n';
  }
  for (const Group& g : L.groups) {
    os << "group " << g.sigma << " lv";
    for (i64 j : g.lv) os << ' ' << j;
    os << '\n' << serialize_tree(g.tree);
    for (auto& row : g.sec)
      for (auto& s : row) dump(os, *s);
    for (auto& s : g.last) dump(os, *s);
  }
}

}  // namespace

StabbingIndex::StabbingIndex(const std::vector<Triangle>& S, const StabbingConfig& cfg) : cfg_(cfg) {
  if (S.empty()) throw InputError("stabbing: empty triangle set");
  if (cfg.t_leaf < 1) throw InputError("stabbing: t_leaf must be >= 1");
  if (!(cfg.eps > Scalar(0) && cfg.eps < Scalar(1))) throw InputError("eps must lie in (0, 1)");
  std::vector<Point> verts;
  std::vector<Line> lines;
  for (std::size_t i = 0; i < S.size(); ++i) {
    const Triangle& t = S[i];
    if (orient(t[0], t[1], t[2]) == 0) throw InputError("stabbing: triangle " + std::to_string(i) + " is degenerate");
    for (int e = 0; e < 3; ++e) {
      verts.push_back(t[std::size_t(e)]);
      lines.push_back(Line::through(t[std::size_t(e)], t[std::size_t((e + 1) % 3)]));
    }
  }
  shear_ = ShearTransform::choose(verts, lines);
  std::vector<Tri> T(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    Point v[3] = {shear_.apply(S[i][0]), shear_.apply(S[i][1]), shear_.apply(S[i][2])};
    std::vector<std::pair<Line, int>> cons;
    for (int e = 0; e < 3; ++e) {
      Line l = Line::through(v[e], v[(e + 1) % 3]);
      cons.push_back({l, side(l, v[(e + 2) % 3])});
    }
    std::sort(cons.begin(), cons.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (int e = 0; e < 3; ++e) {
      T[i].line[e] = cons[std::size_t(e)].first;
      T[i].side[e] = cons[std::size_t(e)].second;
      T[i].sigma[e] = cons[std::size_t(e)].second * cons[std::size_t(e)].first.b().sign();
    }
  }
  n_ = S.size();
  std::vector<int> all(S.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = int(i);
  Builder bld{T, cfg_, space_};
  root_ = bld.level(all, 3, true);
  if (!root_->groups.empty()) {
    const Group& g = root_->groups[0];
    top_ = stab_schedule(g.tree.r, cfg.b, cfg.eps);
  } else {
    top_ = stab_schedule(1, cfg.b, cfg.eps);
  }
}

StabbingIndex::~StabbingIndex() = default;
StabbingIndex::StabbingIndex(StabbingIndex&&) noexcept = default;

StabStats& StabStats::operator+=(const StabStats& o) {
  visited_cells += o.visited_cells;
  leaf_queries += o.leaf_queries;
  for (std::size_t k = 0; k < 4; ++k) {
    cells_by_level[k] += o.cells_by_level[k];
    leaves_by_level[k] += o.leaves_by_level[k];
  }
  return *this;
}

std::int64_t StabbingIndex::count(const Point& q, StabStats* st) const {
  Point p = shear_.apply(q);
  Acc acc;
  query(*root_, p, dualize_point(p), acc);
  if (st) *st += acc.st;
  return acc.count;
}

std::vector<std::int64_t> StabbingIndex::report(const Point& q, StabStats* st) const {
  if (!cfg_.reporting) throw Error("stabbing: reporting not enabled");
  Point p = shear_.apply(q);
  std::vector<std::int64_t> ids;
  Acc acc;
  acc.ids = &ids;
  query(*root_, p, dualize_point(p), acc);
  if (st) *st += acc.st;
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string StabbingIndex::serialize() const {
  std::ostringstream os;
  os << "# ptree-stabbing v1\nn " << n_ << " theta " << shear_.theta().str() << '\n';
  dump(os, *root_);
  return os.str();
}

}  // namespace ptree
