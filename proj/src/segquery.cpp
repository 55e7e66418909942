#include "ptree/segquery.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace ptree {

namespace {

using i64 = std::int64_t;

Segment edge_segment(const SimplexCell& c, int e) { return Segment(c.corner(e), c.corner((e + 1) % 3)); }

bool contains_segment(const SimplexCell& c, const Segment& s) { return c.contains(s.p) && c.contains(s.q); }

}  // namespace

std::int64_t default_store_r(std::int64_t n, int b) {
  i64 r = std::max<i64>(4, 4 * n / (i64(b) * b * b));
  return std::max<i64>(1, std::min(r, 2 * n));
}

ShearTransform segment_shear(const std::vector<Segment>& S) {
  std::vector<Point> pts;
  std::vector<Line> lines;
  for (const Segment& s : S) {
    pts.push_back(s.p);
    pts.push_back(s.q);
    lines.push_back(s.support());
  }
  return ShearTransform::choose(pts, lines);
}

SegmentStore::SegmentStore(const std::vector<Segment>& S, const StoreConfig& cfg) : segs_(S) {
  if (segs_.empty()) return;
  std::vector<Point> pts;
  for (const Segment& s : segs_) {
    pts.push_back(s.p);
    pts.push_back(s.q);
  }
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const i64 m = i64(pts.size());
  i64 r = cfg.r > 0 ? cfg.r : default_store_r(i64(segs_.size()), cfg.b);
  r = std::clamp<i64>(r, 1, m);
  TreeConfig tc = cfg.tree;
  tc.refine.b = cfg.b;
  tree_ = build_tree(pts, r, tc);

  edge_slot_.resize(tree_.levels.size());
  for (std::size_t l = 0; l < tree_.levels.size(); ++l) edge_slot_[l].assign(tree_.levels[l].size() * 3, -1);
  leaf_slot_.assign(tree_.leaves().size(), -1);
  auto slot_for = [&](int& s, const Place& pl) {
    if (s < 0) {
      s = int(slots_.size());
      slots_.emplace_back();
      slot_place_.push_back(pl);
    }
    return s;
  };
  for (std::size_t i = 0; i < segs_.size(); ++i) {
    const Segment& s = segs_[i];
    Place pl;
    for (;;) {
      const TreeCell& node = tree_.levels[std::size_t(pl.level)][std::size_t(pl.cell)];
      if (std::size_t(pl.level) + 1 == tree_.levels.size()) {
        slots_[std::size_t(slot_for(leaf_slot_[std::size_t(pl.cell)], pl))].push_back(int(i));
        break;
      }
      const auto& kids = tree_.levels[std::size_t(pl.level) + 1];
      int inside = -1, holder = -1;
      for (int ch : node.children) {
        if (inside < 0 && contains_segment(kids[std::size_t(ch)].cell, s)) inside = ch;
        if (holder < 0 && kids[std::size_t(ch)].cell.contains(s.p)) holder = ch;
      }
      if (inside >= 0) {
        ++pl.level;
        pl.cell = inside;
        continue;
      }
      if (holder < 0) throw Error("segment store: endpoint outside every child cell");
      const SimplexCell& c = kids[std::size_t(holder)].cell;
      int e = 0;
      while (e < 3 && !segments_intersect(s, edge_segment(c, e))) ++e;
      if (e == 3) throw Error("segment store: segment leaves a cell without meeting its edges");
      pl = {pl.level + 1, holder, e};
      slots_[std::size_t(slot_for(edge_slot_[std::size_t(pl.level)][std::size_t(holder) * 3 + std::size_t(e)], pl))]
          .push_back(int(i));
      break;
    }
    place_.push_back(pl);
  }
}

std::vector<std::string> SegmentStore::audit() const {
  std::vector<std::string> bad;
  std::vector<int> seen(segs_.size(), 0);
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    const Place& pl = slot_place_[s];
    const SimplexCell& c = tree_.levels[std::size_t(pl.level)][std::size_t(pl.cell)].cell;
    for (int i : slots_[s]) {
      ++seen[std::size_t(i)];
      const Segment& g = segs_[std::size_t(i)];
      if (pl.edge >= 0) {
        if (!segments_intersect(g, edge_segment(c, pl.edge)))
          bad.push_back("segment " + std::to_string(i) + " does not meet its edge");
        const TreeCell& node = tree_.levels[std::size_t(pl.level)][std::size_t(pl.cell)];
        if (!contains_segment(tree_.levels[std::size_t(pl.level) - 1][std::size_t(node.parent)].cell, g))
          bad.push_back("segment " + std::to_string(i) + " not inside the parent of its edge cell");
      } else if (!contains_segment(c, g)) {
        bad.push_back("segment " + std::to_string(i) + " not inside its leaf");
      }
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i] != 1) bad.push_back("segment " + std::to_string(i) + " stored " + std::to_string(seen[i]) + " times");
  return bad;
}

std::string SegmentStore::serialize() const {
  std::ostringstream os;
  os << "# ptree-segstore v1\nsegments " << segs_.size() << '\n';
  if (empty()) return os.str();
  os << serialize_tree(tree_);
  for (std::size_t i = 0; i < place_.size(); ++i)
    os << i << ' ' << place_[i].level << ' ' << place_[i].cell << ' ' << place_[i].edge << '\n';
  return os.str();
}

SegChunk::SegChunk(std::vector<Segment> segs, std::vector<int> ids) : segs_(std::move(segs)), ids_(std::move(ids)) {
  if (segs_.size() > kMax) throw Error("chunk too large");
  std::vector<Line> duals, supports;
  for (const Segment& s : segs_) {
    duals.push_back(dualize_point(s.p));
    duals.push_back(dualize_point(s.q));
    supports.push_back(s.support());
  }
  a1_ = std::make_shared<Arrangement>(duals);
  wedge_.assign(a1_->num_features(), 0);
  for (std::size_t f = 0; f < a1_->num_features(); ++f) {
    std::vector<int> cov = a1_->covector(int(f));
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      int dp = a1_->line_of_input(2 * i), dq = a1_->line_of_input(2 * i + 1);
      // endpoint above the primal line iff the dual line point lies above the endpoint's dual
      int ap = cov[std::size_t(dp)] * a1_->line(std::size_t(dp)).b().sign();
      int aq = cov[std::size_t(dq)] * a1_->line(std::size_t(dq)).b().sign();
      if (ap * aq <= 0) wedge_[f] |= std::uint32_t(1) << i;
    }
  }
  a2_ = std::make_shared<Arrangement>(supports);
  pos_.assign(a2_->num_features(), 0);
  neg_.assign(a2_->num_features(), 0);
  zero_.assign(a2_->num_features(), 0);
  for (std::size_t f = 0; f < a2_->num_features(); ++f) {
    std::vector<int> cov = a2_->covector(int(f));
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      int c = cov[std::size_t(a2_->line_of_input(i))];
      (c > 0 ? pos_ : c < 0 ? neg_ : zero_)[f] |= std::uint32_t(1) << i;
    }
  }
  for (std::size_t i = 0; i < segs_.size(); ++i) {
    auto it = std::find_if(collinear_.begin(), collinear_.end(), [&](auto& e) { return e.first == supports[i]; });
    if (it == collinear_.end()) collinear_.push_back({supports[i], 0});
    it = std::find_if(collinear_.begin(), collinear_.end(), [&](auto& e) { return e.first == supports[i]; });
    it->second |= std::uint32_t(1) << i;
  }
  std::sort(collinear_.begin(), collinear_.end(), [](auto& a, auto& b) { return a.first < b.first; });
}

std::size_t SegChunk::features() const { return a1_->num_features() + a2_->num_features(); }

std::uint32_t SegChunk::line_mask(const Line& l) const {
  if (l.vertical()) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < segs_.size(); ++i)
      if (line_meets_segment(l, segs_[i])) m |= std::uint32_t(1) << i;
    return m;
  }
  return wedge_[std::size_t(a1_->locate_feature(dualize_line(l)))];
}

std::uint32_t SegChunk::segment_mask(const Segment& q) const {
  const Line lq = q.support();
  if (lq.vertical()) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < segs_.size(); ++i)
      if (segments_intersect(q, segs_[i])) m |= std::uint32_t(1) << i;
    return m;
  }
  std::uint32_t m = line_mask(lq);
  if (!m) return 0;
  const std::size_t fa = std::size_t(a2_->locate_feature(q.p)), fb = std::size_t(a2_->locate_feature(q.q));
  const std::uint32_t sep = (pos_[fa] & neg_[fb]) | (neg_[fa] & pos_[fb]) | zero_[fa] | zero_[fb];
  auto it = std::lower_bound(collinear_.begin(), collinear_.end(), lq, [](auto& e, const Line& l) { return e.first < l; });
  std::uint32_t col = it != collinear_.end() && it->first == lq ? it->second : 0;
  std::uint32_t out = m & sep & ~col;
  for (std::uint32_t c = col; c; c &= c - 1) {
    int i = std::countr_zero(c);
    if (segments_intersect(q, segs_[std::size_t(i)])) out |= std::uint32_t(1) << i;
  }
  return out;
}

SegQueryIndex::SegQueryIndex(const std::vector<Segment>& S, const StoreConfig& cfg) {
  shear_ = segment_shear(S);
  std::vector<Segment> T;
  for (std::size_t i = 0; i < S.size(); ++i) {
    T.push_back(shear_.apply(S[i]));
    T.back().id = i64(i);
  }
  store_ = SegmentStore(T, cfg);
  for (const auto& slot : store_.slots()) {
    chunks_.emplace_back();
    for (std::size_t a = 0; a < slot.size(); a += SegChunk::kMax) {
      std::vector<Segment> segs;
      std::vector<int> ids;
      for (std::size_t b = a; b < std::min(slot.size(), a + SegChunk::kMax); ++b) {
        segs.push_back(T[std::size_t(slot[b])]);
        ids.push_back(slot[b]);
      }
      chunks_.back().emplace_back(std::move(segs), std::move(ids));
    }
  }
}

bool SegQueryIndex::detect_line(const Line& l, SegStats* st) const {
  const Line m = shear_.apply(l);
  bool found = false;
  i64 visited = 0, cq = 0;
  store_.walk([&](const SimplexCell& c) { return c.meets(m); },
              [&](int s) {
                for (const SegChunk& ch : chunks_[std::size_t(s)]) {
                  ++cq;
                  if (ch.line_mask(m)) {
                    found = true;
                    return false;
                  }
                }
                return true;
              },
              &visited);
  if (st) {
    st->visited_cells += visited;
    st->chunk_queries += cq;
  }
  return found;
}

template <class F>
void SegQueryIndex::segment_query(const Segment& q, SegStats* st, const F& take) const {
  const Segment g = shear_.apply(q);
  i64 visited = 0, cq = 0;
  store_.walk([&](const SimplexCell& c) { return c.meets(g); },
              [&](int s) {
                for (const SegChunk& ch : chunks_[std::size_t(s)]) {
                  ++cq;
                  take(ch, ch.segment_mask(g));
                }
                return true;
              },
              &visited);
  if (st) {
    st->visited_cells += visited;
    st->chunk_queries += cq;
  }
}

std::int64_t SegQueryIndex::count_intersecting(const Segment& q, SegStats* st) const {
  i64 n = 0;
  segment_query(q, st, [&](const SegChunk&, std::uint32_t m) { n += std::popcount(m); });
  return n;
}

std::vector<std::int64_t> SegQueryIndex::report_intersecting(const Segment& q, SegStats* st) const {
  std::vector<i64> out;
  segment_query(q, st, [&](const SegChunk& ch, std::uint32_t m) {
    for (; m; m &= m - 1) out.push_back(ch.ids()[std::size_t(std::countr_zero(m))]);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::string SegQueryIndex::serialize() const {
  std::ostringstream os;
  os << "# ptree-segquery v1\ntheta " << shear_.theta().str() << '\n' << store_.serialize();
  for (std::size_t s = 0; s < chunks_.size(); ++s)
    for (const SegChunk& c : chunks_[s]) os << "chunk " << s << ' ' << c.size() << ' ' << c.features() << '\n';
  return os.str();
}

}  // namespace ptree
