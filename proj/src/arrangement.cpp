#include "ptree/arrangement.hpp"

#include <algorithm>
#include <numeric>

namespace ptree {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

Scalar y_at(const Line& l, const Scalar& x) {
  return -(Scalar(l.a()) * x + Scalar(l.c())) / Scalar(l.b());
}

struct Crossing {
  Point p;
  int i, j;
};

}  // namespace

Arrangement::Arrangement(const std::vector<Line>& input, const SimplexCell* clip) {
  // distinct lines with multiplicity
  std::vector<Line> all = input;
  if (clip)
    for (int e = 0; e < 3; ++e) all.push_back(clip->edge(e));
  std::vector<int> idx(all.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (all[a] == all[b]) return a < b;
    return all[a] < all[b];
  });
  std::vector<int> map(all.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k == 0 || !(all[idx[k]] == all[idx[k - 1]])) {
      lines_.push_back(all[idx[k]]);
      mult_.push_back(0);
    }
    map[idx[k]] = int(lines_.size()) - 1;
    if (idx[k] < int(input.size())) ++mult_.back();
  }
  input_map_.assign(map.begin(), map.begin() + input.size());
  if (clip) {
    for (int e = 0; e < 3; ++e) {
      clip_lines_.push_back(map[input.size() + e]);
      clip_inside_.push_back(clip->inside(e));
    }
  }

  // non-vertical lines, sorted bottom to top at x -> -infinity
  std::vector<int> vert;
  for (int i = 0; i < int(lines_.size()); ++i) (lines_[i].vertical() ? vert : nv_).push_back(i);
  auto slope = [&](int i) { return Scalar(-lines_[i].a(), lines_[i].b()); };
  auto icpt = [&](int i) { return Scalar(-lines_[i].c(), lines_[i].b()); };
  std::sort(nv_.begin(), nv_.end(), [&](int a, int b) {
    Scalar sa = slope(a), sb = slope(b);
    if (sa != sb) return sa > sb;
    return icpt(a) < icpt(b);
  });
  const int m = int(nv_.size());
  stride_ = std::size_t(2 * m + 1);

  // vertices of the non-vertical lines, grouped by point
  std::vector<Crossing> cr;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (auto p = intersect(lines_[nv_[a]], lines_[nv_[b]])) cr.push_back({*p, nv_[a], nv_[b]});
  std::sort(cr.begin(), cr.end(), [](const Crossing& u, const Crossing& v) {
    return compare_xy(u.p, v.p) < 0;
  });
  struct Vertex {
    Point p;
    std::vector<int> lines;
  };
  std::vector<Vertex> verts;
  for (std::size_t k = 0; k < cr.size();) {
    std::size_t e = k;
    Vertex v{cr[k].p, {}};
    while (e < cr.size() && compare_xy(cr[e].p, cr[k].p) == 0) {
      v.lines.push_back(cr[e].i);
      v.lines.push_back(cr[e].j);
      ++e;
    }
    std::sort(v.lines.begin(), v.lines.end());
    v.lines.erase(std::unique(v.lines.begin(), v.lines.end()), v.lines.end());
    verts.push_back(std::move(v));
    k = e;
  }

  // boundaries: vertex abscissae and vertical lines
  std::vector<std::pair<Scalar, int>> xs;  // (x, vertical line or -1)
  for (const Vertex& v : verts) xs.push_back({v.p.x(), -1});
  for (int i : vert) xs.push_back({Scalar(-lines_[i].c(), lines_[i].a()), i});
  std::sort(xs.begin(), xs.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (bounds_.empty() || bounds_.back().x != xs[k].first) bounds_.push_back({xs[k].first, -1, {}, {}});
    if (xs[k].second >= 0) bounds_.back().vertical_line = xs[k].second;
  }
  const int K = int(bounds_.size());
  std::vector<std::vector<const Vertex*>> at(K);
  {
    int b = 0;
    for (const Vertex& v : verts) {
      Scalar x = v.p.x();
      while (bounds_[b].x != x) ++b;
      at[b].push_back(&v);
    }
  }

  // sweep: slab orders and boundary blocks
  std::vector<int> order(m), pos(lines_.size(), -1);
  for (int g = 0; g < m; ++g) {
    order[g] = nv_[g];
    pos[nv_[g]] = g;
  }
  order_.reserve(std::size_t(K + 1) * m);
  for (int j = 0; j <= K; ++j) {
    order_.insert(order_.end(), order.begin(), order.end());
    if (j == K) break;
    auto& blocks = bounds_[j].blocks;
    for (const Vertex* v : at[j]) {
      int lo = m, hi = -1;
      for (int l : v->lines) {
        lo = std::min(lo, pos[l]);
        hi = std::max(hi, pos[l]);
      }
      if (hi - lo + 1 != int(v->lines.size())) throw Error("arrangement sweep lost line order");
      blocks.push_back({lo, hi, -1});
    }
    std::sort(blocks.begin(), blocks.end(), [](const Block& u, const Block& v) { return u.lo < v.lo; });
    for (const Block& bl : blocks) {
      std::reverse(order.begin() + bl.lo, order.begin() + bl.hi + 1);
      for (int g = bl.lo; g <= bl.hi; ++g) pos[order[g]] = g;
    }
  }

  // union-find over slab positions
  Dsu dsu(std::size_t(K + 1) * stride_);
  auto node = [&](int slab, int p) { return int(std::size_t(slab) * stride_ + p); };
  std::vector<char> in_block(m);
  for (int j = 0; j < K; ++j) {
    if (bounds_[j].vertical_line >= 0) continue;
    std::fill(in_block.begin(), in_block.end(), 0);
    std::vector<int> block_of(m, -1);
    for (int bi = 0; bi < int(bounds_[j].blocks.size()); ++bi) {
      const Block& bl = bounds_[j].blocks[bi];
      for (int g = bl.lo; g <= bl.hi; ++g) block_of[g] = bi;
    }
    for (int g = 0; g <= m; ++g) {
      bool closes = g > 0 && g < m && block_of[g - 1] >= 0 && block_of[g - 1] == block_of[g];
      if (!closes) dsu.unite(node(j, 2 * g), node(j + 1, 2 * g));
    }
    for (int g = 0; g < m; ++g)
      if (block_of[g] < 0) dsu.unite(node(j, 2 * g + 1), node(j + 1, 2 * g + 1));
  }

  // slab witnesses
  auto slab_x = [&](int j) -> Scalar {
    if (K == 0) return Scalar(0);
    if (j == 0) return bounds_[0].x - Scalar(1);
    if (j == K) return bounds_[K - 1].x + Scalar(1);
    return (bounds_[j - 1].x + bounds_[j].x) * Scalar(Integer(1), Integer(2));
  };
  auto gap_point = [&](int j, int g, const Scalar& x) -> Point {
    const int* ord = order_.data() + std::size_t(j) * m;
    if (m == 0) return Point(x, Scalar(0));
    if (g == 0) return Point(x, y_at(lines_[ord[0]], x) - Scalar(1));
    if (g == m) return Point(x, y_at(lines_[ord[m - 1]], x) + Scalar(1));
    return Point(x, (y_at(lines_[ord[g - 1]], x) + y_at(lines_[ord[g]], x)) *
                        Scalar(Integer(1), Integer(2)));
  };

  // pass 1: slab features
  slab_feat_.assign(std::size_t(K + 1) * stride_, -1);
  std::vector<int> root_feat(slab_feat_.size(), -1);
  for (int j = 0; j <= K; ++j) {
    Scalar x;
    bool have_x = false;
    for (int p = 0; p < int(stride_); ++p) {
      int r = dsu.find(node(j, p));
      if (root_feat[r] < 0) {
        if (!have_x) {
          x = slab_x(j);
          have_x = true;
        }
        Feature f;
        f.dim = (p % 2 == 0) ? 2 : 1;
        if (f.dim == 2) {
          f.witness = gap_point(j, p / 2, x);
        } else {
          f.witness = Point(x, y_at(lines_[order_at(j, p / 2)], x));
        }
        root_feat[r] = int(features_.size());
        features_.push_back(std::move(f));
      }
      slab_feat_[std::size_t(j) * stride_ + p] = root_feat[r];
    }
  }
  // pass 2: boundary features
  std::vector<std::pair<int, std::vector<std::pair<int, int>>>> incident;  // feature, (slab, gap range)
  for (int j = 0; j < K; ++j) {
    Boundary& bd = bounds_[j];
    const Scalar& x = bd.x;
    if (bd.vertical_line < 0) {
      for (Block& bl : bd.blocks) {
        Feature f;
        f.dim = 0;
        f.witness = Point(x, y_at(lines_[order_at(j, bl.lo)], x));
        bl.feature = int(features_.size());
        features_.push_back(std::move(f));
        incident.push_back({bl.feature, {{j, bl.lo}, {j, bl.hi + 1}}});
      }
      continue;
    }
    // vertical boundary: every maximal run of equal height is a vertex
    std::vector<Block> groups;
    std::size_t bi = 0;
    for (int g = 0; g < m;) {
      if (bi < bd.blocks.size() && bd.blocks[bi].lo == g) {
        groups.push_back(bd.blocks[bi]);
        g = bd.blocks[bi].hi + 1;
        ++bi;
      } else {
        groups.push_back({g, g, -1});
        ++g;
      }
    }
    auto vgap = [&](int k) {  // k = number of groups below
      Feature f;
      f.dim = 1;
      if (groups.empty()) {
        f.witness = Point(x, Scalar(0));
      } else if (k == 0) {
        f.witness = Point(x, y_at(lines_[order_at(j, groups[0].lo)], x) - Scalar(1));
      } else if (k == int(groups.size())) {
        f.witness = Point(x, y_at(lines_[order_at(j, groups.back().lo)], x) + Scalar(1));
      } else {
        f.witness = Point(x, (y_at(lines_[order_at(j, groups[k - 1].lo)], x) +
                              y_at(lines_[order_at(j, groups[k].lo)], x)) *
                                 Scalar(Integer(1), Integer(2)));
      }
      int id = int(features_.size());
      features_.push_back(std::move(f));
      int g = k == 0 ? 0 : groups[k - 1].hi + 1;
      incident.push_back({id, {{j, g}, {j, g}}});
      return id;
    };
    bd.vgaps.push_back(vgap(0));
    for (int k = 0; k < int(groups.size()); ++k) {
      Feature f;
      f.dim = 0;
      f.witness = Point(x, y_at(lines_[order_at(j, groups[k].lo)], x));
      groups[k].feature = int(features_.size());
      features_.push_back(std::move(f));
      incident.push_back({groups[k].feature, {{j, groups[k].lo}, {j, groups[k].hi + 1}}});
      bd.vgaps.push_back(vgap(k + 1));
    }
    bd.blocks = std::move(groups);
  }

  // clip membership
  if (clip) {
    for (Feature& f : features_) {
      for (std::size_t e = 0; e < clip_lines_.size(); ++e) {
        int s = side(lines_[clip_lines_[e]], f.witness);
        if (s != 0 && s != clip_inside_[e]) f.in_clip = false;
      }
    }
  }

  // smallest incident (in-clip) face
  auto consider = [&](int& best, int face) {
    if (features_[face].in_clip && (best < 0 || face < best)) best = face;
  };
  nbrs_.assign(features_.size(), {});
  auto link = [&](int face, int f) {
    auto& v = nbrs_[face];
    if (v.size() < 8 && std::find(v.begin(), v.end(), f) == v.end()) v.push_back(f);
  };
  for (int j = 0; j <= K; ++j)
    for (int p = 0; p < int(stride_); ++p) {
      int f = slab_feature(j, p);
      if (features_[f].dim == 2) {
        features_[f].min_face = f;
      } else {
        int best = features_[f].min_face;
        consider(best, slab_feature(j, p - 1));
        consider(best, slab_feature(j, p + 1));
        features_[f].min_face = best;
        link(slab_feature(j, p - 1), f);
        link(slab_feature(j, p + 1), f);
      }
    }
  for (auto& [f, rng] : incident) {
    int j = rng[0].first, lo = rng[0].second, hi = rng[1].second;
    int best = -1;
    for (int s = j; s <= j + 1; ++s)
      for (int g = lo; g <= hi; ++g) {
        consider(best, slab_feature(s, 2 * g));
        link(slab_feature(s, 2 * g), f);
      }
    features_[f].min_face = best;
  }

  for (int f = 0; f < int(features_.size()); ++f) {
    if (!features_[f].in_clip) continue;
    ++counts_[features_[f].dim];
    if (features_[f].dim == 2) face_list_.push_back(f);
  }
}

std::pair<int, bool> Arrangement::rank_in_slab(int slab, const Point& p) const {
  const int m = int(nv_.size());
  if (m == 0) return {0, false};
  const int* ord = order_.data() + std::size_t(slab) * m;
  int lo = 0, hi = m;  // first line p is not strictly above
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (above(lines_[ord[mid]], p) > 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  bool on = lo < m && above(lines_[ord[lo]], p) == 0;
  return {lo, on};
}

int Arrangement::locate_feature(const Point& p) const {
  Scalar x = p.x();
  int lo = 0, hi = int(bounds_.size());  // first boundary with x_b >= x
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (bounds_[mid].x < x)
      lo = mid + 1;
    else
      hi = mid;
  }
  int f;
  if (lo < int(bounds_.size()) && bounds_[lo].x == x) {
    const Boundary& bd = bounds_[lo];
    auto [c, on] = rank_in_slab(lo, p);
    if (bd.vertical_line >= 0) {
      // groups below p
      int k = 0;
      int a = 0, b = int(bd.blocks.size());
      while (a < b) {
        int mid = (a + b) / 2;
        if (bd.blocks[mid].hi < c)
          a = mid + 1;
        else
          b = mid;
      }
      k = a;
      f = on ? bd.blocks[k].feature : bd.vgaps[k];
    } else {
      f = -1;
      if (on) {
        auto it = std::upper_bound(bd.blocks.begin(), bd.blocks.end(), c,
                                   [](int v, const Block& bl) { return v < bl.lo; });
        if (it != bd.blocks.begin() && std::prev(it)->hi >= c) f = std::prev(it)->feature;
      }
      if (f < 0) f = slab_feature(lo, on ? 2 * c + 1 : 2 * c);
    }
  } else {
    auto [c, on] = rank_in_slab(lo, p);
    f = slab_feature(lo, on ? 2 * c + 1 : 2 * c);
  }
  if (!features_[f].in_clip) throw Error("point outside the clipped arrangement");
  return f;
}

int Arrangement::locate(const Point& p) const { return features_[locate_feature(p)].min_face; }

std::vector<int> Arrangement::covector(int f) const {
  std::vector<int> c(lines_.size());
  for (std::size_t i = 0; i < lines_.size(); ++i) c[i] = side(lines_[i], features_[f].witness);
  return c;
}

Annotation annotate_counts(const Arrangement& arr, int num_items,
                           const std::function<bool(int, const Point&)>& contains,
                           bool keep_ids) {
  Annotation a;
  a.counts.assign(arr.num_features(), 0);
  if (keep_ids) a.ids.assign(arr.num_features(), {});
  for (int f = 0; f < int(arr.num_features()); ++f) {
    const auto& ft = arr.feature(f);
    if (!ft.in_clip) continue;
    // extra interior samples: midpoints towards incident features
    std::vector<Point> extra;
    if (ft.dim == 2)
      for (int g : arr.face_neighbors(f)) {
        const Point& q = arr.feature(g).witness;
        const Point& w = ft.witness;
        // homogeneous midpoint, left unreduced
        extra.push_back(Point::homogeneous_raw(w.X() * q.W() + q.X() * w.W(), w.Y() * q.W() + q.Y() * w.W(),
                                               (w.W() * q.W()).shifted(1)));
      }
    for (int i = 0; i < num_items; ++i) {
      bool in = contains(i, ft.witness);
      for (const Point& q : extra)
        if (contains(i, q) != in) throw Error("annotation predicate is not constant on a face");
      if (in) {
        ++a.counts[f];
        if (keep_ids) a.ids[f].push_back(i);
      }
    }
  }
  return a;
}

}  // namespace ptree
