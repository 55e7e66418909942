#include "ptree/generate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ptree {

namespace {

using i64 = std::int64_t;

Point half_point(long long x2, long long y2) {
  return Point(Scalar(Integer(x2), Integer(2)), Scalar(Integer(y2), Integer(2)));
}

struct PointLess {
  bool operator()(const Point& a, const Point& b) const { return lex_less(a, b); }
};

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "uniform") return Family::Uniform;
  if (name == "clustered") return Family::Clustered;
  if (name == "grid") return Family::Grid;
  if (name == "collinear-degenerate") return Family::CollinearDegenerate;
  throw InputError("unknown family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Uniform: return "uniform";
    case Family::Clustered: return "clustered";
    case Family::Grid: return "grid";
    case Family::CollinearDegenerate: return "collinear-degenerate";
  }
  return "?";
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> f = {Family::Uniform, Family::Clustered, Family::Grid, Family::CollinearDegenerate};
  return f;
}

QueryKind parse_query_kind(const std::string& name) {
  if (name == "triangle") return QueryKind::Triangle;
  if (name == "halfplane") return QueryKind::Halfplane;
  if (name == "point") return QueryKind::Point;
  if (name == "line") return QueryKind::Line;
  if (name == "segment") return QueryKind::Segment;
  if (name == "ray") return QueryKind::Ray;
  throw InputError("unknown query kind '" + name + "'");
}

std::string query_kind_name(QueryKind k) {
  switch (k) {
    case QueryKind::Triangle: return "triangle";
    case QueryKind::Halfplane: return "halfplane";
    case QueryKind::Point: return "point";
    case QueryKind::Line: return "line";
    case QueryKind::Segment: return "segment";
    case QueryKind::Ray: return "ray";
  }
  return "?";
}

Generator::Generator(Family f, std::int64_t n, std::uint64_t seed) : fam_(f), n_(n), rng_(seed) {
  if (n < 1) throw InputError("n must be >= 1");
  R_ = std::max<i64>(64, 8 * n);
  if (fam_ == Family::Clustered) {
    i64 c = std::max<i64>(2, n / 32);
    for (i64 i = 0; i < c; ++i) centers_.emplace_back(uni(R_ / 8, R_ - R_ / 8), uni(R_ / 8, R_ - R_ / 8));
  }
}

long long Generator::uni(long long lo, long long hi) { return lo + (long long)(rng_() % std::uint64_t(hi - lo)); }

Point Generator::random_box_point(long long margin) { return Point(uni(-margin, R_ + margin), uni(-margin, R_ + margin)); }

Point Generator::family_point() {
  switch (fam_) {
    case Family::Uniform:
      return Point(uni(0, R_), uni(0, R_));
    case Family::Clustered: {
      const Point& c = centers_[std::size_t(uni(0, i64(centers_.size())))];
      long long s = std::max<long long>(4, R_ / 16);
      // sum of two uniforms concentrates towards the center
      long long dx = uni(-s, s + 1) + uni(-s, s + 1), dy = uni(-s, s + 1) + uni(-s, s + 1);
      return Point(c.x() + Scalar(dx / 2), c.y() + Scalar(dy / 2));
    }
    case Family::Grid: {
      long long g = std::max<long long>(4, (long long)std::ceil(std::sqrt(2.0 * double(n_))));
      long long step = std::max<long long>(1, R_ / g);
      return Point(uni(0, g) * step, uni(0, g) * step);
    }
    case Family::CollinearDegenerate: {
      long long t = uni(0, 2 * R_);
      switch (uni(0, 5)) {
        case 0: return half_point(t, t);                     // y = x, half-integer coordinates
        case 1: return half_point(t, 2 * R_ - t);            // y = R - x
        case 2: return Point((long long)(t / 2), R_ / 2);    // horizontal line
        case 3: return Point(R_ / 3, (long long)(t / 2));    // shared abscissa
        default: return Point(uni(0, R_), uni(0, R_));
      }
    }
  }
  return Point(0, 0);
}

std::vector<Point> Generator::points() {
  std::set<Point, PointLess> seen;
  std::vector<Point> out;
  i64 attempts = 0;
  while (i64(out.size()) < n_) {
    Point p = ++attempts > 200 * n_ ? random_box_point(0) : family_point();
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

std::vector<Triangle> Generator::triangles() {
  std::vector<Triangle> out;
  std::vector<Point> pool;
  if (fam_ == Family::CollinearDegenerate || fam_ == Family::Grid) pool = points();
  const long long L = std::max<long long>(4, R_ / 4);
  while (i64(out.size()) < n_) {
    Triangle t;
    if (!pool.empty() && uni(0, 2) == 0) {
      // vertices drawn from a shared pool: common vertices and edges
      for (auto& v : t) v = pool[std::size_t(uni(0, i64(pool.size())))];
    } else {
      Point a = family_point();
      t = {a, Point(a.x() + Scalar(uni(-L, L + 1)), a.y() + Scalar(uni(-L, L + 1))),
           Point(a.x() + Scalar(uni(-L, L + 1)), a.y() + Scalar(uni(-L, L + 1)))};
    }
    if (orient(t[0], t[1], t[2]) != 0) out.push_back(t);
  }
  return out;
}

std::vector<Segment> Generator::disjoint_segments() {
  std::vector<Segment> out;
  long long L = std::max<long long>(2, R_ / 8);
  i64 fails = 0;
  while (i64(out.size()) < n_) {
    Point a = family_point();
    Point b;
    if (fam_ == Family::CollinearDegenerate && uni(0, 2) == 0) {
      // a short piece of a shared line through a
      long long k = uni(1, 4);
      b = Point(a.x() + Scalar(k), a.y() + Scalar(k * uni(-1, 2)));
    } else {
      b = Point(a.x() + Scalar(uni(-L, L + 1)), a.y() + Scalar(uni(-L, L + 1)));
    }
    if (a == b) continue;
    Segment s(a, b, i64(out.size()));
    bool ok = true;
    for (const Segment& t : out)
      if (segments_intersect(s, t)) {
        ok = false;
        break;
      }
    if (ok) {
      out.push_back(s);
      fails = 0;
    } else if (++fails > 50 && L > 2) {
      L = std::max<long long>(2, L / 2);
      fails = 0;
    } else if (fails > 100000) {
      throw Error("generator: cannot place disjoint segments");
    }
  }
  return out;
}

Dataset Generator::dataset() {
  Dataset d;
  d.points = points();
  d.segments = disjoint_segments();
  d.triangles = triangles();
  return d;
}

std::vector<Query> Generator::queries(const Dataset& d, QueryKind kind, std::int64_t count) {
  std::vector<Query> out;
  const long long M = R_ / 8;
  auto any_point = [&]() { return random_box_point(M); };
  auto data_point = [&]() -> Point {
    switch (uni(0, 3)) {
      case 0:
        if (!d.points.empty()) return d.points[std::size_t(uni(0, i64(d.points.size())))];
        break;
      case 1:
        if (!d.segments.empty()) {
          const Segment& s = d.segments[std::size_t(uni(0, i64(d.segments.size())))];
          return uni(0, 2) ? s.p : s.q;
        }
        break;
      default:
        if (!d.triangles.empty()) return d.triangles[std::size_t(uni(0, i64(d.triangles.size())))][std::size_t(uni(0, 3))];
    }
    return any_point();
  };
  // half the queries are anchored at data features
  auto pick = [&]() { return uni(0, 2) ? any_point() : data_point(); };
  while (i64(out.size()) < count) {
    Query q;
    q.kind = kind;
    q.id = i64(out.size());
    switch (kind) {
      case QueryKind::Triangle: {
        q.tri = {pick(), pick(), pick()};
        if (uni(0, 20) == 0) q.tri[2] = q.tri[1];  // occasional degenerate query
        break;
      }
      case QueryKind::Halfplane:
      case QueryKind::Line: {
        Point a = pick(), b = pick();
        if (uni(0, 10) == 0) b = Point(a.x(), a.y() + Scalar(1));  // vertical
        if (a == b) continue;
        q.line = Line::through(a, b);
        q.side = uni(0, 2) ? 1 : -1;
        break;
      }
      case QueryKind::Point: {
        if (!d.triangles.empty() && uni(0, 4) == 0) {
          // midpoint of a triangle edge
          const Triangle& t = d.triangles[std::size_t(uni(0, i64(d.triangles.size())))];
          int e = int(uni(0, 3));
          q.point = Point((t[std::size_t(e)].x() + t[std::size_t((e + 1) % 3)].x()) * Scalar(Integer(1), Integer(2)),
                          (t[std::size_t(e)].y() + t[std::size_t((e + 1) % 3)].y()) * Scalar(Integer(1), Integer(2)));
        } else {
          q.point = pick();
        }
        break;
      }
      case QueryKind::Segment: {
        Point a = pick(), b = pick();
        if (uni(0, 10) == 0) b = Point(a.x(), a.y() + Scalar(uni(1, M + 2)));
        if (a == b) continue;
        q.segment = Segment(a, b);
        break;
      }
      case QueryKind::Ray: {
        Point o = pick();
        Integer dx, dy;
        if (uni(0, 3) == 0) {
          // aimed at a data feature
          Point t = data_point();
          if (t == o) continue;
          Scalar ex = t.x() - o.x(), ey = t.y() - o.y();
          Integer den = ex.den() * ey.den();
          dx = ex.num() * Integer::exact_div(den, ex.den());
          dy = ey.num() * Integer::exact_div(den, ey.den());
        } else {
          dx = Integer(uni(-10, 11));
          dy = Integer(uni(-10, 11));
          if (dx.is_zero() && dy.is_zero()) continue;
        }
        q.ray = Ray(o, dx, dy);
        break;
      }
    }
    out.push_back(q);
  }
  return out;
}

}  // namespace ptree
