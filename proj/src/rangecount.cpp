#include "ptree/rangecount.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace ptree {

namespace {

using i64 = std::int64_t;

bool satisfies(const Constraint& c, const Point& p) { return side(c.line, p) * c.side >= 0; }

}  // namespace

LeafCountStructure::LeafCountStructure(std::vector<Point> pts) : pts_(std::move(pts)) {
  if (pts_.size() > 64) {
    scan_ = true;
    return;
  }
  all_ = pts_.size() == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << pts_.size()) - 1;
  std::vector<Line> duals;
  for (const Point& p : pts_) duals.push_back(dualize_point(p));
  arr_ = std::make_shared<Arrangement>(duals);
  above_.assign(arr_->num_features(), 0);
  below_.assign(arr_->num_features(), 0);
  for (std::size_t f = 0; f < arr_->num_features(); ++f) {
    std::vector<int> cov = arr_->covector(int(f));
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      int d = arr_->line_of_input(i);
      // the primal point is above the primal line iff the dual point is above its dual line
      int a = cov[std::size_t(d)] * arr_->line(std::size_t(d)).b().sign();
      if (a > 0) above_[f] |= std::uint64_t(1) << i;
      if (a < 0) below_[f] |= std::uint64_t(1) << i;
    }
  }
}

std::uint64_t LeafCountStructure::satisfying(const Constraint& c) const {
  if (scan_) throw Error("leaf too large for masks");
  if (c.line.vertical()) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < pts_.size(); ++i)
      if (satisfies(c, pts_[i])) m |= std::uint64_t(1) << i;
    return m;
  }
  int f = arr_->locate_feature(dualize_line(c.line));
  int want = c.line.b().sign() * c.side;
  return want > 0 ? all_ & ~below_[std::size_t(f)] : all_ & ~above_[std::size_t(f)];
}

std::int64_t LeafCountStructure::count(const std::vector<Constraint>& cs) const {
  if (scan_) {
    i64 n = 0;
    for (const Point& p : pts_) {
      bool ok = true;
      for (const Constraint& c : cs) ok = ok && satisfies(c, p);
      n += ok;
    }
    return n;
  }
  std::uint64_t m = all_;
  for (const Constraint& c : cs) m &= satisfying(c);
  return std::popcount(m);
}

struct RangeCountIndex::Region {
  std::vector<Constraint> cons;
  std::vector<Point> verts;  // triangle corners when the region is a triangle
  bool degenerate = false;
  Point lo, hi;              // degenerate hull

  bool meets_hull(const SimplexCell& c) const {
    if (lo == hi) return c.contains(lo);
    return c.meets(Segment(lo, hi));
  }
  bool on_hull(const Point& p) const {
    if (lo == hi) return p == lo;
    return orient(lo, hi, p) == 0 && compare_xy(lo, p) <= 0 && compare_xy(p, hi) <= 0;
  }
};

namespace {

enum class Cls { Outside, Inside, Crossed };

template <class R>
Cls classify(const SimplexCell& c, const R& q) {
  if (q.degenerate) return q.meets_hull(c) ? Cls::Crossed : Cls::Outside;
  bool all_in = true;
  for (const Constraint& k : q.cons) {
    int bad = 0;
    for (const Point& v : c.corners()) bad += side(k.line, v) * k.side < 0;
    if (bad == 3) return Cls::Outside;
    if (bad > 0) all_in = false;
  }
  if (all_in) return Cls::Inside;
  for (int e = 0; e < 3 && !q.verts.empty(); ++e) {
    int out = 0;
    for (const Point& v : q.verts) out += side(c.edge(e), v) * c.inside(e) < 0;
    if (out == int(q.verts.size())) return Cls::Outside;
  }
  return Cls::Crossed;
}

i64 default_r(i64 n) { return std::clamp<i64>(std::max<i64>(4, n / 64), 1, std::max<i64>(n, 1)); }

}  // namespace

RangeCountIndex::RangeCountIndex(const std::vector<Point>& P, const RangeCountConfig& cfg) : cfg_(cfg) {
  if (P.empty()) throw InputError("rangecount: empty point set");
  if (cfg.t_leaf < 1 || cfg.t_leaf > 64) throw InputError("rangecount: t_leaf must lie in [1, 64]");
  shear_ = ShearTransform::choose(P);
  for (const Point& p : P) pts_.push_back(shear_.apply(p));
  const i64 n = i64(pts_.size());
  i64 r = cfg.r > 0 ? std::min(cfg.r, n) : default_r(n);
  TreeConfig tc = cfg.tree;
  tc.refine.b = cfg.b;
  stage1_ = build_tree(pts_, r, tc);
  stage1_.theta = shear_.theta();
  for (const TreeCell& leaf : stage1_.leaves()) {
    Stage1Leaf L;
    const i64 n1 = i64(leaf.points.size());
    std::vector<Point> local;
    for (int id : leaf.points) local.push_back(pts_[std::size_t(id)]);
    if (n1 <= cfg.t_leaf) {
      L.finals.emplace_back(std::move(local));
    } else {
      i64 r1 = cfg.r1 > 0 ? cfg.r1 : std::max<i64>(2, n1 / 8);
      r1 = std::min(std::max(r1, (2 * n1 + cfg.t_leaf - 1) / cfg.t_leaf), n1);
      TreeConfig tc1 = cfg.tree;
      tc1.refine.b = cfg.b1;
      L.tree = std::make_unique<PartitionTree>(build_tree(local, r1, tc1));
      for (const TreeCell& f : L.tree->leaves()) {
        std::vector<Point> q;
        for (int id : f.points) q.push_back(local[std::size_t(id)]);
        L.finals.emplace_back(std::move(q));
      }
    }
    leaves_.push_back(std::move(L));
  }
}

std::int64_t RangeCountIndex::descend(const PartitionTree& t, std::size_t level, int cell, const Region& q,
                                      const std::vector<LeafCountStructure>* finals, const Stage1Leaf* s1,
                                      QueryStats& st) const {
  const TreeCell& node = t.levels[level][std::size_t(cell)];
  ++st.visited_cells;
  switch (classify(node.cell, q)) {
    case Cls::Outside:
      return 0;
    case Cls::Inside:
      return i64(node.points.size());
    case Cls::Crossed:
      break;
  }
  if (level + 1 == t.levels.size()) {
    if (!finals) {
      const Stage1Leaf& L = leaves_[std::size_t(cell)];
      if (L.tree) return descend(*L.tree, 0, 0, q, &L.finals, &L, st);
      finals = &L.finals;
      cell = 0;
    }
    (void)s1;
    ++st.leaf_visits;
    const LeafCountStructure& ls = (*finals)[std::size_t(cell)];
    if (!q.degenerate) return ls.count(q.cons);
    i64 c = 0;
    for (const Point& p : ls.points()) c += q.on_hull(p);
    return c;
  }
  i64 sum = 0;
  for (int ch : node.children) sum += descend(t, level + 1, ch, q, finals, s1, st);
  return sum;
}

std::int64_t RangeCountIndex::run(const Region& q, QueryStats* st) const {
  QueryStats local;
  i64 c = descend(stage1_, 0, 0, q, nullptr, nullptr, local);
  if (st) {
    st->visited_cells += local.visited_cells;
    st->leaf_visits += local.leaf_visits;
  }
  return c;
}

std::int64_t RangeCountIndex::count_in_triangle(const Triangle& t, QueryStats* st) const {
  Region q;
  Point a = shear_.apply(t[0]), b = shear_.apply(t[1]), c = shear_.apply(t[2]);
  if (orient(a, b, c) == 0) {
    q.degenerate = true;
    q.lo = q.hi = a;
    for (const Point& p : {b, c}) {
      if (lex_less(p, q.lo)) q.lo = p;
      if (lex_less(q.hi, p)) q.hi = p;
    }
    return run(q, st);
  }
  const Point v[3] = {a, b, c};
  for (int i = 0; i < 3; ++i) {
    Line l = Line::through(v[i], v[(i + 1) % 3]);
    q.cons.push_back({l, side(l, v[(i + 2) % 3])});
  }
  q.verts = {a, b, c};
  return run(q, st);
}

std::int64_t RangeCountIndex::count_in_halfplane(const Line& l, int s, QueryStats* st) const {
  if (s != 1 && s != -1) throw InputError("halfplane side must be +1 or -1");
  Region q;
  q.cons.push_back({shear_.apply(l), shear_.apply_side(l, s)});
  return run(q, st);
}

std::size_t RangeCountIndex::num_final_leaves() const {
  std::size_t n = 0;
  for (auto& L : leaves_) n += L.finals.size();
  return n;
}

std::size_t RangeCountIndex::max_final_leaf() const {
  std::size_t m = 0;
  for (auto& L : leaves_)
    for (auto& f : L.finals) m = std::max(m, f.size());
  return m;
}

std::string RangeCountIndex::serialize() const {
  std::ostringstream os;
  os << "# ptree-rangecount v1\nt_leaf " << cfg_.t_leaf << '\n' << serialize_tree(stage1_);
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    os << "stage1-leaf " << i << ' ' << leaves_[i].finals.size() << '\n';
    if (leaves_[i].tree) os << serialize_tree(*leaves_[i].tree);
  }
  return os.str();
}

std::vector<std::string> RangeCountIndex::audit() const {
  std::vector<std::string> bad = audit_tree(stage1_, cfg_.tree.c1, cfg_.tree.c2);
  std::vector<int> seen(pts_.size(), 0);
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    const TreeCell& leaf = stage1_.leaves()[i];
    const Stage1Leaf& L = leaves_[i];
    if (L.tree) {
      for (auto& s : audit_tree(*L.tree, cfg_.tree.c1, cfg_.tree.c2)) bad.push_back("stage-2 " + std::to_string(i) + ": " + s);
      if (L.tree->n() != i64(leaf.points.size())) bad.push_back("stage-2 tree size mismatch at leaf " + std::to_string(i));
    }
    std::size_t total = 0;
    for (std::size_t f = 0; f < L.finals.size(); ++f) {
      total += L.finals[f].size();
      if (i64(L.finals[f].size()) > cfg_.t_leaf) {
        // only coincident points may exceed the leaf size
        bool same = true;
        for (const Point& p : L.finals[f].points()) same = same && p == L.finals[f].points()[0];
        if (!same) bad.push_back("final leaf over t_leaf under stage-1 leaf " + std::to_string(i));
      }
    }
    if (total != leaf.points.size()) bad.push_back("final leaves do not partition stage-1 leaf " + std::to_string(i));
    for (int id : leaf.points) ++seen[std::size_t(id)];
  }
  for (std::size_t p = 0; p < seen.size(); ++p)
    if (seen[p] != 1) bad.push_back("point " + std::to_string(p) + " in " + std::to_string(seen[p]) + " stage-1 leaves");
  return bad;
}

}  // namespace ptree
