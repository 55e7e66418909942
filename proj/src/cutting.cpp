#include "ptree/cutting.hpp"

#include <algorithm>
#include <map>

namespace ptree {

namespace {

using i64 = std::int64_t;

int msb(const BigInt& v) { return v == 0 ? -1 : int(boost::multiprecision::msb(v)); }

// 2 distinct points where l meets the boundary of the cell it crosses.
std::pair<Point, Point> chord(const SimplexCell& c, const Line& l) {
  Point out[2];
  int k = 0;
  int s[3];
  for (int i = 0; i < 3; ++i) s[i] = side(l, c.corner(i));
  for (int i = 0; i < 3 && k < 2; ++i) {
    if (s[i] == 0) out[k++] = c.corner(i);
    int j = (i + 1) % 3;
    if (k < 2 && s[i] * s[j] < 0) out[k++] = *intersect(l, c.edge(i));
  }
  return {out[0], out[1]};
}

struct Piece {
  SimplexCell cell;
  std::vector<int> cross;
  i64 w = 0;
};

std::vector<int> crossing_of(const SimplexCell& c, const std::vector<Line>& lines,
                             const std::vector<int>& cand, int skip, const std::vector<i64>& mult,
                             i64* w) {
  std::vector<int> out;
  *w = 0;
  for (int g : cand) {
    if (g == skip) continue;
    if (c.crosses(lines[g])) {
      out.push_back(g);
      *w += mult[g];
    }
  }
  return out;
}

// 64-bit copies of coefficients for the inner loop of best_split.
struct Triple {
  i64 v[3] = {0, 0, 0};
  int bits = 0;
  bool ok = false;
};

Triple small_triple(const Integer& a, const Integer& b, const Integer& c) {
  Triple t;
  const Integer* xs[3] = {&a, &b, &c};
  for (int i = 0; i < 3; ++i) {
    if (!xs[i]->fits_i64()) return t;
    t.bits = std::max(t.bits, int(xs[i]->bit_length()));
  }
  if (t.bits > 62) return t;
  for (int i = 0; i < 3; ++i) t.v[i] = xs[i]->to_i64();
  t.ok = true;
  return t;
}

inline int sign3(const Triple& l, const Triple& p) {
  i128 s = i128(l.v[0]) * p.v[0] + i128(l.v[1]) * p.v[1] + i128(l.v[2]) * p.v[2];
  return (s > 0) - (s < 0);
}

int best_split(const Piece& pc, const std::vector<Line>& lines, const std::vector<i64>& mult) {
  const auto& L = pc.cross;
  std::vector<std::pair<Point, Point>> ch;
  ch.reserve(L.size());
  for (int g : L) ch.push_back(chord(pc.cell, lines[g]));
  // exact 128-bit evaluation whenever the bit lengths allow it
  std::vector<Triple> tl(L.size()), t1(L.size()), t2(L.size());
  int lb = 0, pb = 0;
  bool fast = true;
  for (std::size_t i = 0; i < L.size() && fast; ++i) {
    const Line& l = lines[L[i]];
    tl[i] = small_triple(l.a(), l.b(), l.c());
    t1[i] = small_triple(ch[i].first.X(), ch[i].first.Y(), ch[i].first.W());
    t2[i] = small_triple(ch[i].second.X(), ch[i].second.Y(), ch[i].second.W());
    fast = tl[i].ok && t1[i].ok && t2[i].ok;
    lb = std::max(lb, tl[i].bits);
    pb = std::max({pb, t1[i].bits, t2[i].bits});
  }
  fast = fast && lb + pb + 2 <= 126;
  int best = -1;
  i64 best_score = 0;
  for (std::size_t a = 0; a < L.size(); ++a) {
    const Line& h = lines[L[a]];
    i64 wp = 0, wn = 0;
    bool pruned = false;
    for (std::size_t b = 0; b < L.size(); ++b) {
      if (b == a) continue;
      int s1, s2;
      if (fast) {
        s1 = sign3(tl[a], t1[b]);
        s2 = sign3(tl[a], t2[b]);
      } else {
        s1 = side(h, ch[b].first);
        s2 = side(h, ch[b].second);
      }
      if (s1 > 0 || s2 > 0) wp += mult[L[b]];
      if (s1 < 0 || s2 < 0) wn += mult[L[b]];
      if (best >= 0 && std::max(wp, wn) > best_score) {
        pruned = true;
        break;
      }
    }
    if (pruned) continue;
    i64 score = std::max(wp, wn);
    if (best < 0 || score < best_score || (score == best_score && L[a] < best)) {
      best = L[a];
      best_score = score;
    }
  }
  return best;
}

// With r null the budget never stops the run; *history then receives, for
// every configuration reached, its cell count and largest crossing weight.
std::optional<std::vector<Piece>> greedy(const std::vector<Line>& lines, const std::vector<i64>& mult,
                                         const SimplexCell& cell, i64 total, const Scalar* r,
                                         std::size_t max_cells,
                                         std::vector<std::pair<std::size_t, i64>>* history = nullptr) {
  Scalar re = !r || *r < Scalar(1) ? Scalar(1) : *r;
  i128 rn = re.num().small_value(), rd = re.den().small_value();
  std::vector<int> all;
  for (int g = 0; g < int(lines.size()); ++g)
    if (mult[g] > 0) all.push_back(g);
  std::vector<Piece> cells;
  {
    Piece p{cell, {}, 0};
    p.cross = crossing_of(cell, lines, all, -1, mult, &p.w);
    cells.push_back(std::move(p));
  }
  while (true) {
    int worst = -1;
    for (int i = 0; i < int(cells.size()); ++i)
      if (worst < 0 || cells[i].w > cells[worst].w) worst = i;
    if (history) history->push_back({cells.size(), cells[worst].w});
    if (r ? i128(cells[worst].w) * rn <= i128(total) * rd : cells[worst].w == 0) break;
    int h = best_split(cells[worst], lines, mult);
    Piece victim = std::move(cells[worst]);
    cells.erase(cells.begin() + worst);
    for (SimplexCell& c : split_cell(victim.cell, lines[h])) {
      Piece p{std::move(c), {}, 0};
      p.cross = crossing_of(p.cell, lines, victim.cross, h, mult, &p.w);
      cells.push_back(std::move(p));
    }
    if (cells.size() > max_cells) return std::nullopt;
  }
  return cells;
}

Cutting assemble(const SimplexCell& cell, std::vector<Piece>&& pieces,
                 const std::vector<std::vector<int>>& expand) {
  Cutting out;
  out.parent = cell;
  for (Piece& p : pieces) {
    std::vector<int> ids;
    for (int g : p.cross) ids.insert(ids.end(), expand[g].begin(), expand[g].end());
    std::sort(ids.begin(), ids.end());
    out.cells.push_back(std::move(p.cell));
    out.crossing.push_back(std::move(ids));
  }
  return out;
}

// Distinct lines in order of first occurrence, with the input ids of each.
std::vector<Line> dedupe(const std::vector<Line>& H, std::vector<std::vector<int>>& expand) {
  std::map<Line, int> seen;
  std::vector<Line> out;
  for (int i = 0; i < int(H.size()); ++i) {
    auto [it, fresh] = seen.emplace(H[i], int(out.size()));
    if (fresh) {
      out.push_back(H[i]);
      expand.push_back({});
    }
    expand[it->second].push_back(i);
  }
  return out;
}

}  // namespace

BigInt WeightedLineSet::total() const {
  BigInt t = 0;
  for (int e : exponents) t += BigInt(1) << e;
  return t;
}

Multiset normalize_multiset(const std::vector<int>& exponents) {
  Multiset m;
  if (exponents.empty()) return m;
  BigInt total = 0;
  for (int e : exponents) {
    if (e < 0) throw Error("negative weight exponent");
    total += BigInt(1) << e;
  }
  m.q = msb(total);
  m.p = 0;
  while ((std::size_t(1) << (m.p + 1)) <= exponents.size()) ++m.p;
  for (int e : exponents) {
    int k = m.p + 1 + e - m.q;
    i64 c = k >= 0 ? (i64(1) << k) : 1;
    m.multiplicity.push_back(c);
    m.size += c;
  }
  MultisetTally& t = multiset_tally();
  ++t.calls;
  const i64 mq = i64(exponents.size());
  if (m.size > 5 * mq) ++t.over_bound;
  t.max_ratio = std::max(t.max_ratio, double(m.size) / double(mq));
  return m;
}

MultisetTally& multiset_tally() {
  static MultisetTally t;
  return t;
}

Cutting cut_unweighted(const std::vector<Line>& H, const SimplexCell& cell, const Scalar& r) {
  std::vector<std::vector<int>> expand;
  std::vector<Line> lines = dedupe(H, expand);
  std::vector<i64> mult;
  for (auto& e : expand) mult.push_back(i64(e.size()));
  auto pieces = greedy(lines, mult, cell, i64(H.size()), &r, std::numeric_limits<std::size_t>::max());
  return assemble(cell, std::move(*pieces), expand);
}

namespace {

struct Prepared {
  std::vector<std::vector<int>> expand;
  std::vector<Line> lines;
  std::vector<i64> mult;
  i64 size = 0;
};

// Duplicate lines keep their separate multiplicities summed on one distinct line.
Prepared prepare(const WeightedLineSet& W) {
  Prepared p;
  p.lines = dedupe(W.lines, p.expand);
  Multiset ms = normalize_multiset(W.exponents);
  p.mult.assign(p.lines.size(), 0);
  for (std::size_t d = 0; d < p.lines.size(); ++d)
    for (int i : p.expand[d]) p.mult[d] += ms.multiplicity[i];
  p.size = ms.size;
  return p;
}

}  // namespace

Cutting cut_weighted(const WeightedLineSet& W, const SimplexCell& cell, const Scalar& r) {
  Prepared p = prepare(W);
  Scalar r5 = r * Scalar(5);
  auto pieces = greedy(p.lines, p.mult, cell, p.size, &r5, std::numeric_limits<std::size_t>::max());
  return assemble(cell, std::move(*pieces), p.expand);
}

Cutting cut_weighted_capped(const WeightedLineSet& W, const SimplexCell& cell, const Scalar& r,
                            std::size_t max_cells, Scalar* used_r) {
  max_cells = std::max<std::size_t>(max_cells, 1);
  Prepared p = prepare(W);
  // the split sequence does not depend on r, so one run decides which r fits
  std::vector<std::pair<std::size_t, i64>> history;
  greedy(p.lines, p.mult, cell, p.size, nullptr, max_cells, &history);
  Scalar cur = r;
  while (true) {
    Scalar re = cur * Scalar(5);
    if (re < Scalar(1)) re = Scalar(1);
    bool fits = false;
    for (auto& [count, w] : history) {
      if (Integer(w) * re.num() <= Integer(p.size) * re.den()) {
        fits = count <= max_cells;
        break;
      }
    }
    if (fits) break;
    cur = cur * Scalar(Integer(1), Integer(2));
  }
  if (used_r) *used_r = cur;
  Scalar r5 = cur * Scalar(5);
  auto pieces = greedy(p.lines, p.mult, cell, p.size, &r5, max_cells);
  return assemble(cell, std::move(*pieces), p.expand);
}

std::vector<SimplexCell> triangulate_convex(const std::vector<Point>& poly, const SimplexCell& parent) {
  const int n = int(poly.size());
  int k = 0;
  for (int i = 1; i < n; ++i)
    if (lex_less(poly[i], poly[k])) k = i;
  std::vector<SimplexCell> out;
  for (int i = 1; i + 1 < n; ++i) {
    SimplexCell c(poly[k], poly[(k + i) % n], poly[(k + i + 1) % n]);
    bool any = false;
    for (int e = 0; e < 3; ++e) {
      for (int f = 0; f < 3; ++f) {
        if (!parent.frame_edge(f)) continue;
        if (side(parent.edge(f), c.corner(e)) == 0 && side(parent.edge(f), c.corner((e + 1) % 3)) == 0) {
          c.set_frame_edge(e, true);
          any = true;
        }
      }
    }
    c.set_unbounded(parent.unbounded() && any);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<SimplexCell> split_cell(const SimplexCell& cell, const Line& h) {
  int s[3];
  for (int i = 0; i < 3; ++i) s[i] = side(h, cell.corner(i));
  std::vector<Point> pos, neg;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3;
    if (s[i] >= 0) pos.push_back(cell.corner(i));
    if (s[i] <= 0) neg.push_back(cell.corner(i));
    if (s[i] * s[j] < 0) {
      Point x = *intersect(h, cell.edge(i));
      pos.push_back(x);
      neg.push_back(x);
    }
  }
  if (pos.size() < 3 || neg.size() < 3) throw Error("split line does not cross the cell");
  std::vector<SimplexCell> out = triangulate_convex(pos, cell);
  for (SimplexCell& c : triangulate_convex(neg, cell)) out.push_back(std::move(c));
  return out;
}

}  // namespace ptree
