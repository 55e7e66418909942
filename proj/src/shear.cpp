#include "ptree/shear.hpp"

#include <algorithm>

namespace ptree {

ShearTransform::ShearTransform(const Scalar& theta) : p_(theta.num()), q_(theta.den()) {}

Point ShearTransform::apply(const Point& pt) const {
  if (identity()) return pt;
  Point r = Point::homogeneous(q_ * pt.X() + p_ * pt.Y(), q_ * pt.Y(), pt.W());
  r.id = pt.id;
  return r;
}

Point ShearTransform::invert(const Point& pt) const {
  if (identity()) return pt;
  Point r = Point::homogeneous(q_ * pt.X() - p_ * pt.Y(), q_ * pt.Y(), q_ * q_ * pt.W());
  r.id = pt.id;
  return r;
}

Line ShearTransform::apply(const Line& l) const {
  if (identity()) return l;
  return Line(l.a() * q_, l.b() * q_ - l.a() * p_, l.c() * q_ * q_);
}

int ShearTransform::apply_side(const Line& l, int s) const {
  if (identity()) return s;
  // The transformed coefficients are a positive multiple of the raw ones;
  // only canonical sign normalization can flip the orientation.
  Integer a = l.a() * q_, b = l.b() * q_ - l.a() * p_;
  int lead = a.sign() != 0 ? a.sign() : b.sign();
  return lead < 0 ? -s : s;
}

Segment ShearTransform::apply(const Segment& s) const {
  return Segment(apply(s.p), apply(s.q), s.id);
}

Ray ShearTransform::apply(const Ray& r) const {
  if (identity()) return r;
  return Ray(apply(r.origin), q_ * r.dx + p_ * r.dy, q_ * r.dy, r.id);
}

ShearTransform ShearTransform::choose(const std::vector<Point>& pts,
                                      const std::vector<Line>& lines) {
  for (long long k = 0; k <= 100000; ++k) {
    ShearTransform t(k == 0 ? Scalar(0) : Scalar(Integer(1), Integer(k)));
    bool ok = true;
    for (const Line& l : lines) {
      if (t.apply(l).vertical()) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<Point> tp;
    tp.reserve(pts.size());
    for (const Point& p : pts) tp.push_back(t.apply(p));
    std::sort(tp.begin(), tp.end(), lex_less);
    for (std::size_t i = 1; i < tp.size() && ok; ++i)
      if (compare_x(tp[i - 1], tp[i]) == 0 && !(tp[i - 1] == tp[i])) ok = false;
    if (ok) return t;
  }
  throw Error("no admissible shear found");
}

}  // namespace ptree
