#include "ptree/rayshoot.hpp"

#include <algorithm>
#include <sstream>

namespace ptree {

namespace {

using i64 = std::int64_t;

// Primal line whose dual point is w.
Line primal_of(const Point& w) { return Line(-w.X(), w.W(), w.Y()); }

Point crossing(const Line& l, const Segment& s) {
  auto x = intersect(l, s.support());
  if (!x) throw Error("ray chunk: crossing of parallel lines");
  return *x;
}

bool better(const RayHit& a, int ida, const RayHit& b, int idb) {
  if (a.t != b.t) return a.t < b.t;
  return ida < idb;
}

}  // namespace

RayChunk::RayChunk(std::vector<Segment> segs, std::vector<int> ids) : segs_(std::move(segs)), ids_(std::move(ids)) {
  std::vector<Line> duals;
  for (const Segment& s : segs_) {
    duals.push_back(dualize_point(s.p));
    duals.push_back(dualize_point(s.q));
  }
  a1_ = std::make_shared<Arrangement>(duals);
  order_.resize(a1_->num_features());
  collinear_.resize(a1_->num_features());
  for (std::size_t f = 0; f < a1_->num_features(); ++f) {
    std::vector<int> cov = a1_->covector(int(f));
    const Line w = primal_of(a1_->feature(int(f)).witness);
    std::vector<std::pair<Point, int>> hits;
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      int dp = a1_->line_of_input(2 * i), dq = a1_->line_of_input(2 * i + 1);
      int ap = cov[std::size_t(dp)], aq = cov[std::size_t(dq)];
      if (ap == 0 && aq == 0)
        collinear_[f].push_back(int(i));
      else if (ap * a1_->line(std::size_t(dp)).b().sign() * aq * a1_->line(std::size_t(dq)).b().sign() <= 0)
        hits.push_back({crossing(w, segs_[i]), int(i)});
    }
    std::sort(hits.begin(), hits.end(), [](auto& a, auto& b) { return compare_x(a.first, b.first) < 0; });
    for (auto& h : hits) order_[f].push_back(h.second);
  }
}

std::optional<RayChunk::Candidate> RayChunk::first(const Ray& r, const Line& l, bool* sound) const {
  std::optional<Candidate> best;
  auto offer = [&](int i) {
    auto h = ray_hit(r, segs_[std::size_t(i)]);
    if (!h) return false;
    if (!best || better(*h, ids_[std::size_t(i)], best->hit, ids_[std::size_t(best->local)])) best = Candidate{i, *h};
    return true;
  };
  if (l.vertical()) {
    for (std::size_t i = 0; i < segs_.size(); ++i) offer(int(i));
    return best;
  }
  const std::size_t f = std::size_t(a1_->locate_feature(dualize_line(l)));
  const auto& ord = order_[f];
  const int dir = r.dx.sign();
  int pick = -1;
  if (dir > 0) {
    // first crossing at or right of the origin
    auto it = std::partition_point(ord.begin(), ord.end(),
                                   [&](int i) { return compare_x(crossing(l, segs_[std::size_t(i)]), r.origin) < 0; });
    if (it != ord.end()) pick = *it;
  } else {
    auto it = std::partition_point(ord.begin(), ord.end(),
                                   [&](int i) { return compare_x(crossing(l, segs_[std::size_t(i)]), r.origin) <= 0; });
    if (it != ord.begin()) pick = *std::prev(it);
  }
  if (pick >= 0 && !offer(pick) && sound) *sound = false;
  for (int i : collinear_[f]) offer(i);
  return best;
}

RayShootIndex::RayShootIndex(const std::vector<Segment>& S, const StoreConfig& cfg) : orig_(S) {
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j)
      if (segments_intersect(S[i], S[j]))
        throw InputError("rayshoot: segments " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
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

std::optional<ShotResult> RayShootIndex::shoot(const Ray& r, RayStats* st) const {
  const Ray g = shear_.apply(r);
  const Line l = g.support();
  std::optional<RayHit> best;
  int best_id = -1;
  i64 visited = 0, cq = 0, unsound = 0;
  store_.walk(
      [&](const SimplexCell& c) {
        if (c.contains(g.origin)) return true;
        for (int e = 0; e < 3; ++e) {
          auto h = ray_hit(g, Segment(c.corner(e), c.corner((e + 1) % 3)));
          // cells entered beyond the current best hit cannot improve it
          if (h && (!best || h->t <= best->t)) return true;
        }
        return false;
      },
      [&](int s) {
        for (const RayChunk& ch : chunks_[std::size_t(s)]) {
          ++cq;
          bool sound = true;
          auto c = ch.first(g, l, &sound);
          unsound += !sound;
          if (c && (!best || better(c->hit, ch.ids()[std::size_t(c->local)], *best, best_id))) {
            best = c->hit;
            best_id = ch.ids()[std::size_t(c->local)];
          }
        }
        return true;
      },
      &visited);
  if (st) {
    st->visited_cells += visited;
    st->chunk_queries += cq;
    st->unsound_candidates += unsound;
  }
  if (!best) return std::nullopt;
  // report in input coordinates
  auto h = ray_hit(r, orig_[std::size_t(best_id)]);
  if (!h) throw Error("rayshoot: winning segment not hit in input coordinates");
  return ShotResult{best_id, h->t, h->point};
}

std::string RayShootIndex::serialize() const {
  std::ostringstream os;
  os << "# ptree-rayshoot v1\ntheta " << shear_.theta().str() << '\n' << store_.serialize();
  for (std::size_t s = 0; s < chunks_.size(); ++s)
    for (const RayChunk& c : chunks_[s]) os << "chunk " << s << ' ' << c.size() << '\n';
  return os.str();
}

}  // namespace ptree
