#include "ptree/oracle.hpp"

#include <algorithm>

namespace ptree::oracle {

namespace {

int sgn_side(const Line& l, const Point& p) {
  return (l.a() * p.X() + l.b() * p.Y() + l.c() * p.W()).sign();
}

bool between_lex(const Point& a, const Point& b, const Point& p) {
  const Point& lo = lex_less(a, b) ? a : b;
  const Point& hi = lex_less(a, b) ? b : a;
  return !lex_less(p, lo) && !lex_less(hi, p);
}

bool interiors_disjoint(const SimplexCell& a, const SimplexCell& b) {
  for (const SimplexCell* x : {&a, &b}) {
    const SimplexCell* y = x == &a ? &b : &a;
    for (int e = 0; e < 3; ++e) {
      bool sep = true;
      for (const Point& p : y->corners())
        if (sgn_side(x->edge(e), p) * x->inside(e) > 0) sep = false;
      if (sep) return true;
    }
  }
  return false;
}

Scalar tri_area(const SimplexCell& c) {
  const Point &a = c.corner(0), &b = c.corner(1), &d = c.corner(2);
  Scalar v = (b.x() - a.x()) * (d.y() - a.y()) - (b.y() - a.y()) * (d.x() - a.x());
  return v.sign() < 0 ? -v : v;
}

}  // namespace

bool in_closed_triangle(const Triangle& t, const Point& p) {
  int o1 = orient(t[0], t[1], p), o2 = orient(t[1], t[2], p), o3 = orient(t[2], t[0], p);
  if (orient(t[0], t[1], t[2]) != 0)
    return (o1 >= 0 && o2 >= 0 && o3 >= 0) || (o1 <= 0 && o2 <= 0 && o3 <= 0);
  // degenerate: segment or point hull
  if (o1 != 0 || o2 != 0 || o3 != 0) return false;
  Point lo = t[0], hi = t[0];
  for (const Point& q : t) {
    if (lex_less(q, lo)) lo = q;
    if (lex_less(hi, q)) hi = q;
  }
  if (lo == hi) return p == lo;
  return orient(lo, hi, p) == 0 && between_lex(lo, hi, p);
}

std::int64_t count_in_triangle(const std::vector<Point>& pts, const Triangle& t) {
  std::int64_t c = 0;
  for (const Point& p : pts) c += in_closed_triangle(t, p);
  return c;
}

std::int64_t count_in_halfplane(const std::vector<Point>& pts, const Line& l, int s) {
  std::int64_t c = 0;
  for (const Point& p : pts) c += sgn_side(l, p) * s >= 0;
  return c;
}

std::vector<std::int64_t> stab(const std::vector<Triangle>& tris, const Point& q) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < tris.size(); ++i)
    if (in_closed_triangle(tris[i], q)) out.push_back(std::int64_t(i));
  return out;
}

bool detect_line(const std::vector<Segment>& segs, const Line& l) {
  for (const Segment& s : segs)
    if (sgn_side(l, s.p) * sgn_side(l, s.q) <= 0) return true;
  return false;
}

std::vector<std::int64_t> segments_hit(const std::vector<Segment>& segs, const Segment& q) {
  std::vector<std::int64_t> out;
  for (const Segment& s : segs) {
    int o1 = orient(s.p, s.q, q.p), o2 = orient(s.p, s.q, q.q);
    int o3 = orient(q.p, q.q, s.p), o4 = orient(q.p, q.q, s.q);
    bool hit;
    if (o1 == 0 && o2 == 0)
      hit = between_lex(s.p, s.q, q.p) || between_lex(s.p, s.q, q.q) || between_lex(q.p, q.q, s.p);
    else
      hit = o1 * o2 <= 0 && o3 * o4 <= 0;
    if (hit) out.push_back(s.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<FirstHit> first_hit(const std::vector<Segment>& segs, const Ray& r) {
  std::optional<FirstHit> best;
  for (const Segment& s : segs) {
    auto h = ray_hit(r, s);
    if (!h) continue;
    if (!best || h->t < best->t || (h->t == best->t && s.id < best->id))
      best = FirstHit{s.id, h->t, h->point};
  }
  return best;
}

std::size_t crossings(const std::vector<SimplexCell>& cells, const Line& l) {
  std::size_t n = 0;
  for (const SimplexCell& c : cells) {
    bool pos = false, neg = false;
    for (const Point& p : c.corners()) {
      int s = sgn_side(l, p);
      pos |= s > 0;
      neg |= s < 0;
    }
    n += pos && neg;
  }
  return n;
}

Check verify_cutting(const Cutting& c, const std::vector<Line>& lines, const std::vector<int>& exps,
                     const Scalar& r) {
  Check out;
  auto fail = [&](std::string m) {
    if (out.ok) out.message = std::move(m);
    out.ok = false;
  };
  auto weight = [&](std::size_t i) { return exps.empty() ? BigInt(1) : BigInt(1) << exps[i]; };
  BigInt total = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) total += weight(i);
  Scalar re = r < Scalar(1) ? Scalar(1) : r;
  Scalar area = 0;
  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    const SimplexCell& cell = c.cells[k];
    BigInt w = 0;
    std::vector<int> ids;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (crossings({cell}, lines[i]) == 1) {
        w += weight(i);
        ids.push_back(int(i));
      }
    }
    if (ids != c.crossing[k]) fail("cell " + std::to_string(k) + ": crossing list mismatch");
    // w <= total / r
    if (Integer(w) * re.num() > Integer(total) * re.den())
      fail("cell " + std::to_string(k) + ": crossing weight over budget");
    for (const Point& p : cell.corners())
      if (!c.parent.contains(p)) fail("cell " + std::to_string(k) + " leaves the parent");
    for (std::size_t j = 0; j < k; ++j)
      if (!interiors_disjoint(cell, c.cells[j]))
        fail("cells " + std::to_string(j) + " and " + std::to_string(k) + " overlap");
    area += tri_area(cell);
  }
  if (area != tri_area(c.parent)) fail("cells do not cover the parent");
  return out;
}

}  // namespace ptree::oracle
