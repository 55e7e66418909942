#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ptree/exact.hpp"

namespace ptree {

// Point in homogeneous integer coordinates (X/W, Y/W), W > 0.
class Point {
 public:
  Point() : X_(0), Y_(0), W_(1) {}
  Point(long long x, long long y) : X_(x), Y_(y), W_(1) {}
  Point(const Scalar& x, const Scalar& y);
  // Normalizes sign and common factors; W must be nonzero.
  static Point homogeneous(Integer X, Integer Y, Integer W);
  // Only fixes the sign of W. Cheaper, for transient points.
  static Point homogeneous_raw(Integer X, Integer Y, Integer W);

  const Integer& X() const { return X_; }
  const Integer& Y() const { return Y_; }
  const Integer& W() const { return W_; }
  Scalar x() const { return Scalar(X_, W_); }
  Scalar y() const { return Scalar(Y_, W_); }

  std::int64_t id = -1;

  friend bool operator==(const Point& a, const Point& b);
  std::string str() const;

 private:
  Integer X_, Y_, W_;
};

// Lexicographic (x, then y) comparison.
int compare_xy(const Point& a, const Point& b);
int compare_x(const Point& a, const Point& b);
inline bool lex_less(const Point& a, const Point& b) { return compare_xy(a, b) < 0; }

// Line a*x + b*y + c = 0 with gcd(a,b,c) = 1 and first nonzero coefficient positive.
class Line {
 public:
  Line() : a_(0), b_(1), c_(0) {}
  Line(Integer a, Integer b, Integer c);
  static Line through(const Point& p, const Point& q);
  // y = m*x + k
  static Line from_slope(const Scalar& m, const Scalar& k);

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }
  bool vertical() const { return b_.is_zero(); }

  friend bool operator==(const Line& p, const Line& q) {
    return p.a_ == q.a_ && p.b_ == q.b_ && p.c_ == q.c_;
  }
  friend bool operator<(const Line& p, const Line& q);
  std::string str() const;

 private:
  Integer a_, b_, c_;
};

// sign(a*x + b*y + c) at p.
inline int side(const Line& l, const Point& p) {
  return sign_dot3(l.a(), l.b(), l.c(), p.X(), p.Y(), p.W());
}
// +1 if p is strictly above the non-vertical line, 0 on it, -1 below.
inline int above(const Line& l, const Point& p) { return side(l, p) * l.b().sign(); }

int orient(const Point& p, const Point& q, const Point& r);
std::optional<Point> intersect(const Line& l, const Line& m);
bool parallel(const Line& l, const Line& m);

// Duality: point (a, b) <-> line y = a*x - b.
Line dualize_point(const Point& p);
Point dualize_line(const Line& l);

struct Segment {
  Point p, q;  // p lexicographically smaller
  std::int64_t id = -1;
  Segment() = default;
  Segment(Point a, Point b, std::int64_t id = -1);
  Line support() const { return Line::through(p, q); }
};

bool on_segment(const Segment& s, const Point& x);  // x collinear assumed not required
bool segments_intersect(const Segment& s, const Segment& t);
bool line_meets_segment(const Line& l, const Segment& s);

struct Ray {
  Point origin;
  Integer dx, dy;  // primitive direction
  std::int64_t id = -1;
  Ray() : dx(1), dy(0) {}
  Ray(Point o, Integer dx, Integer dy, std::int64_t id = -1);
  Line support() const;
};

// First point where the ray meets the closed segment, as (parameter t >= 0, point);
// the ray is o + t*(dx,dy).
struct RayHit {
  Scalar t;
  Point point;
};
std::optional<RayHit> ray_hit(const Ray& r, const Segment& s);

// Closed triangle cell given by its corners in counterclockwise order.
// Unbounded regions are represented by their part inside a frame triangle;
// edges on that frame carry the frame flag.
class SimplexCell {
 public:
  SimplexCell() = default;
  SimplexCell(const Point& a, const Point& b, const Point& c);
  static SimplexCell plane(const std::array<Point, 3>& frame);

  const std::array<Point, 3>& corners() const { return corners_; }
  const Point& corner(int i) const { return corners_[i]; }
  // Edge i joins corner i and corner i+1; interior side is side(edge, p) == inside(i).
  const Line& edge(int i) const { return edges_[i]; }
  int inside(int i) const { return inside_[i]; }
  bool frame_edge(int i) const { return frame_[i]; }
  void set_frame_edge(int i, bool v) { frame_[i] = v; }
  bool unbounded() const { return unbounded_; }
  void set_unbounded(bool v) { unbounded_ = v; }

  bool contains(const Point& p) const;           // closed
  bool contains_strictly(const Point& p) const;  // interior
  bool crosses(const Line& l) const;             // l meets the interior
  bool meets(const Line& l) const;               // l meets the closed cell
  bool meets(const Segment& s) const;
  Scalar area() const;

  std::int64_t id = -1;

 private:
  std::array<Point, 3> corners_;
  std::array<Line, 3> edges_;
  std::array<int, 3> inside_{1, 1, 1};
  std::array<bool, 3> frame_{false, false, false};
  bool unbounded_ = false;
};

// Side pattern of the three corners: returns {#positive, #negative}.
std::pair<int, int> corner_signs(const SimplexCell& c, const Line& l);

// Frame triangle strictly containing every given point (with margin).
std::array<Point, 3> make_frame(const std::vector<Point>& pts);

}  // namespace ptree
