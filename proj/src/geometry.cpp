#include "ptree/geometry.hpp"

#include <algorithm>

namespace ptree {

namespace {

Integer gcd3(const Integer& a, const Integer& b, const Integer& c) {
  return Integer::gcd(Integer::gcd(a, b), c);
}

bool is_one(const Integer& v) { return v.is_small() && v.small_value() == 1; }

}  // namespace

Point::Point(const Scalar& x, const Scalar& y) {
  *this = homogeneous(x.num() * y.den(), y.num() * x.den(), x.den() * y.den());
}

Point Point::homogeneous(Integer X, Integer Y, Integer W) {
  if (W.is_zero()) throw Error("point at infinity");
  if (W.sign() < 0) {
    X = -X;
    Y = -Y;
    W = -W;
  }
  if (!is_one(W)) {
    Integer g = gcd3(X, Y, W);
    if (!is_one(g)) {
      X = Integer::exact_div(X, g);
      Y = Integer::exact_div(Y, g);
      W = Integer::exact_div(W, g);
    }
  }
  Point p;
  p.X_ = std::move(X);
  p.Y_ = std::move(Y);
  p.W_ = std::move(W);
  return p;
}

Point Point::homogeneous_raw(Integer X, Integer Y, Integer W) {
  if (W.is_zero()) throw Error("point at infinity");
  Point p;
  if (W.sign() < 0) {
    p.X_ = -X;
    p.Y_ = -Y;
    p.W_ = -W;
  } else {
    p.X_ = std::move(X);
    p.Y_ = std::move(Y);
    p.W_ = std::move(W);
  }
  return p;
}

bool operator==(const Point& a, const Point& b) {
  return sign_det2(a.X_, b.W_, b.X_, a.W_) == 0 && sign_det2(a.Y_, b.W_, b.Y_, a.W_) == 0;
}

std::string Point::str() const { return "(" + x().str() + ", " + y().str() + ")"; }

int compare_x(const Point& a, const Point& b) { return sign_det2(a.X(), b.W(), b.X(), a.W()); }

int compare_xy(const Point& a, const Point& b) {
  int s = compare_x(a, b);
  if (s != 0) return s;
  return sign_det2(a.Y(), b.W(), b.Y(), a.W());
}

Line::Line(Integer a, Integer b, Integer c) {
  if (a.is_zero() && b.is_zero()) throw Error("degenerate line");
  Integer g = gcd3(a, b, c);
  if (!is_one(g)) {
    a = Integer::exact_div(a, g);
    b = Integer::exact_div(b, g);
    c = Integer::exact_div(c, g);
  }
  int s = a.sign() != 0 ? a.sign() : b.sign();
  if (s < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  a_ = std::move(a);
  b_ = std::move(b);
  c_ = std::move(c);
}

Line Line::through(const Point& p, const Point& q) {
  Integer a = det2(p.Y(), q.W(), p.W(), q.Y());
  Integer b = det2(p.W(), q.X(), p.X(), q.W());
  Integer c = det2(p.X(), q.Y(), p.Y(), q.X());
  if (a.is_zero() && b.is_zero()) throw Error("line through coincident points");
  return Line(a, b, c);
}

Line Line::from_slope(const Scalar& m, const Scalar& k) {
  return Line(m.num() * k.den(), -(m.den() * k.den()), k.num() * m.den());
}

bool operator<(const Line& p, const Line& q) {
  if (!(p.a_ == q.a_)) return p.a_ < q.a_;
  if (!(p.b_ == q.b_)) return p.b_ < q.b_;
  return p.c_ < q.c_;
}

std::string Line::str() const { return a_.str() + " " + b_.str() + " " + c_.str(); }

int orient(const Point& p, const Point& q, const Point& r) {
  // det [[Xp Yp Wp],[Xq Yq Wq],[Xr Yr Wr]], all W > 0
  Integer d = p.X() * det2(q.Y(), r.W(), q.W(), r.Y()) -
              p.Y() * det2(q.X(), r.W(), q.W(), r.X()) +
              p.W() * det2(q.X(), r.Y(), q.Y(), r.X());
  return d.sign();
}

bool parallel(const Line& l, const Line& m) {
  return sign_det2(l.a(), m.b(), m.a(), l.b()) == 0;
}

std::optional<Point> intersect(const Line& l, const Line& m) {
  Integer W = det2(l.a(), m.b(), m.a(), l.b());
  if (W.is_zero()) return std::nullopt;
  Integer X = det2(l.b(), m.c(), m.b(), l.c());
  Integer Y = det2(l.c(), m.a(), m.c(), l.a());
  return Point::homogeneous(X, Y, W);
}

Line dualize_point(const Point& p) { return Line(p.X(), -p.W(), -p.Y()); }

Point dualize_line(const Line& l) {
  if (l.vertical()) throw Error("vertical line has no dual point");
  return Point::homogeneous(-l.a(), l.c(), l.b());
}

Segment::Segment(Point a, Point b, std::int64_t i) : id(i) {
  int c = compare_xy(a, b);
  if (c == 0) throw InputError("degenerate segment");
  if (c < 0) {
    p = std::move(a);
    q = std::move(b);
  } else {
    p = std::move(b);
    q = std::move(a);
  }
}

bool on_segment(const Segment& s, const Point& x) {
  if (orient(s.p, s.q, x) != 0) return false;
  return compare_xy(s.p, x) <= 0 && compare_xy(x, s.q) <= 0;
}

bool segments_intersect(const Segment& s, const Segment& t) {
  int o1 = orient(s.p, s.q, t.p), o2 = orient(s.p, s.q, t.q);
  int o3 = orient(t.p, t.q, s.p), o4 = orient(t.p, t.q, s.q);
  if (o1 == 0 && o2 == 0) {
    // collinear: lexicographic intervals overlap
    return compare_xy(s.p, t.q) <= 0 && compare_xy(t.p, s.q) <= 0;
  }
  return o1 * o2 <= 0 && o3 * o4 <= 0;
}

bool line_meets_segment(const Line& l, const Segment& s) {
  return side(l, s.p) * side(l, s.q) <= 0;
}

Ray::Ray(Point o, Integer x, Integer y, std::int64_t i) : origin(std::move(o)), id(i) {
  if (x.is_zero() && y.is_zero()) throw InputError("zero ray direction");
  Integer g = Integer::gcd(x, y);
  dx = Integer::exact_div(x, g);
  dy = Integer::exact_div(y, g);
}

Line Ray::support() const {
  Point q = Point::homogeneous(origin.X() + dx * origin.W(), origin.Y() + dy * origin.W(),
                               origin.W());
  return Line::through(origin, q);
}

std::optional<RayHit> ray_hit(const Ray& r, const Segment& s) {
  Scalar ox = r.origin.x(), oy = r.origin.y();
  Scalar px = s.p.x(), py = s.p.y();
  Scalar ex = s.q.x() - px, ey = s.q.y() - py;
  Scalar dx(r.dx), dy(r.dy);
  Scalar wx = px - ox, wy = py - oy;
  Scalar denom = dx * ey - dy * ex;
  auto at = [&](const Scalar& t) {
    return RayHit{t, Point(ox + t * dx, oy + t * dy)};
  };
  if (denom.sign() != 0) {
    Scalar t = (wx * ey - wy * ex) / denom;
    Scalar u = (wx * dy - wy * dx) / denom;
    if (t.sign() < 0 || u.sign() < 0 || u > Scalar(1)) return std::nullopt;
    return at(t);
  }
  if ((wx * dy - wy * dx).sign() != 0) return std::nullopt;
  Scalar dd = dx * dx + dy * dy;
  Scalar tp = (wx * dx + wy * dy) / dd;
  Scalar tq = ((s.q.x() - ox) * dx + (s.q.y() - oy) * dy) / dd;
  Scalar lo = std::min(tp, tq), hi = std::max(tp, tq);
  if (hi.sign() < 0) return std::nullopt;
  return at(lo.sign() < 0 ? Scalar(0) : lo);
}

SimplexCell::SimplexCell(const Point& a, const Point& b, const Point& c) {
  int o = orient(a, b, c);
  if (o == 0) throw Error("degenerate simplex cell");
  corners_ = o > 0 ? std::array<Point, 3>{a, b, c} : std::array<Point, 3>{a, c, b};
  for (int i = 0; i < 3; ++i) {
    edges_[i] = Line::through(corners_[i], corners_[(i + 1) % 3]);
    inside_[i] = side(edges_[i], corners_[(i + 2) % 3]);
  }
}

SimplexCell SimplexCell::plane(const std::array<Point, 3>& frame) {
  SimplexCell c(frame[0], frame[1], frame[2]);
  c.frame_ = {true, true, true};
  c.unbounded_ = true;
  return c;
}

bool SimplexCell::contains(const Point& p) const {
  for (int i = 0; i < 3; ++i)
    if (side(edges_[i], p) * inside_[i] < 0) return false;
  return true;
}

bool SimplexCell::contains_strictly(const Point& p) const {
  for (int i = 0; i < 3; ++i)
    if (side(edges_[i], p) * inside_[i] <= 0) return false;
  return true;
}

std::pair<int, int> corner_signs(const SimplexCell& c, const Line& l) {
  int pos = 0, neg = 0;
  for (const Point& p : c.corners()) {
    int s = side(l, p);
    pos += s > 0;
    neg += s < 0;
  }
  return {pos, neg};
}

bool SimplexCell::crosses(const Line& l) const {
  auto [pos, neg] = corner_signs(*this, l);
  return pos > 0 && neg > 0;
}

bool SimplexCell::meets(const Line& l) const {
  auto [pos, neg] = corner_signs(*this, l);
  return pos < 3 && neg < 3;
}

bool SimplexCell::meets(const Segment& s) const {
  if (contains(s.p) || contains(s.q)) return true;
  for (int i = 0; i < 3; ++i)
    if (segments_intersect(s, Segment(corners_[i], corners_[(i + 1) % 3]))) return true;
  return false;
}

Scalar SimplexCell::area() const {
  const Point &a = corners_[0], &b = corners_[1], &c = corners_[2];
  Scalar d = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
  return d * Scalar(Integer(1), Integer(2));
}

std::array<Point, 3> make_frame(const std::vector<Point>& pts) {
  if (pts.empty()) return {Point(-1, -1), Point(2, -1), Point(-1, 2)};
  Scalar minx = pts[0].x(), maxx = minx, miny = pts[0].y(), maxy = miny;
  for (const Point& p : pts) {
    Scalar x = p.x(), y = p.y();
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, y);
    maxy = std::max(maxy, y);
  }
  Integer x0 = minx.floor() - Integer(1), y0 = miny.floor() - Integer(1);
  Integer s = std::max(maxx.ceil() - x0, maxy.ceil() - y0) + Integer(1);
  Integer s3 = s * Integer(3);
  return {Point(Scalar(x0), Scalar(y0)), Point(Scalar(x0 + s3), Scalar(y0)),
          Point(Scalar(x0), Scalar(y0 + s3))};
}

}  // namespace ptree
