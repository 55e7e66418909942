#pragma once

#include <vector>

#include "ptree/geometry.hpp"

namespace ptree {

// x' = x + theta*y, scaled by the denominator q of theta so integer inputs
// stay integral: (x, y) -> (q*x + p*y, q*y). Orientation preserving.
class ShearTransform {
 public:
  ShearTransform() = default;
  explicit ShearTransform(const Scalar& theta);

  // First theta in 0, 1, 1/2, 1/3, ... that gives distinct points distinct
  // abscissae and leaves every given line non-vertical.
  static ShearTransform choose(const std::vector<Point>& pts, const std::vector<Line>& lines = {});

  Scalar theta() const { return Scalar(p_, q_); }
  bool identity() const { return p_.is_zero(); }

  Point apply(const Point& pt) const;
  Point invert(const Point& pt) const;
  Line apply(const Line& l) const;
  Segment apply(const Segment& s) const;
  Ray apply(const Ray& r) const;
  // Transformed halfplane side for a line given in original coordinates.
  int apply_side(const Line& l, int side) const;

 private:
  Integer p_ = Integer(0), q_ = Integer(1);
};

}  // namespace ptree
