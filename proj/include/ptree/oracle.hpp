#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptree/cutting.hpp"
#include "ptree/dataset.hpp"
#include "ptree/geometry.hpp"

// Brute-force references. Everything here is written directly against the
// exact predicates and shares no code with the indexing structures.
namespace ptree::oracle {

bool in_closed_triangle(const Triangle& t, const Point& p);  // degenerate triangles allowed

std::int64_t count_in_triangle(const std::vector<Point>& pts, const Triangle& t);
std::int64_t count_in_halfplane(const std::vector<Point>& pts, const Line& l, int side);

std::vector<std::int64_t> stab(const std::vector<Triangle>& tris, const Point& q);

bool detect_line(const std::vector<Segment>& segs, const Line& l);
std::vector<std::int64_t> segments_hit(const std::vector<Segment>& segs, const Segment& q);

struct FirstHit {
  std::int64_t id;
  Scalar t;
  Point point;
};
std::optional<FirstHit> first_hit(const std::vector<Segment>& segs, const Ray& r);

// Number of cells whose interior the line meets.
std::size_t crossings(const std::vector<SimplexCell>& cells, const Line& l);

struct Check {
  bool ok = true;
  std::string message;
};

// Weighted budget (exponents empty means unit weights), exact crossing lists,
// containment in the parent, pairwise interior disjointness and area coverage.
Check verify_cutting(const Cutting& c, const std::vector<Line>& lines, const std::vector<int>& exponents,
                     const Scalar& r);

}  // namespace ptree::oracle
