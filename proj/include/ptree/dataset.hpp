#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "ptree/geometry.hpp"

namespace ptree {

inline constexpr const char* kDatasetHeader = "# ptree-dataset v1";
inline constexpr const char* kQueryHeader = "# ptree-queries v1";

using Triangle = std::array<Point, 3>;

struct Dataset {
  std::vector<Point> points;
  std::vector<Segment> segments;
  std::vector<Triangle> triangles;
};

enum class QueryKind { Triangle, Halfplane, Point, Line, Segment, Ray };

struct Query {
  QueryKind kind = QueryKind::Point;
  Triangle tri;        // T
  Line line;           // H, L
  int side = 1;        // H: +1 keeps a*x+b*y+c >= 0, -1 keeps <= 0 (canonical line)
  Point point;         // Q
  Segment segment;     // G
  Ray ray;             // R
  std::int64_t id = 0;
};

// Reads "P x y", "S x1 y1 x2 y2" and "T x1 y1 x2 y2 x3 y3" records;
// coordinates are integers or num/den; '#' starts a comment.
Dataset read_dataset(std::istream& in);
void write_dataset(std::ostream& out, const Dataset& d);
Dataset load_dataset(const std::string& path);
void save_dataset(const std::string& path, const Dataset& d);

std::vector<Query> read_queries(std::istream& in);
void write_queries(std::ostream& out, const std::vector<Query>& qs);
std::vector<Query> load_queries(const std::string& path);
void save_queries(const std::string& path, const std::vector<Query>& qs);

// Line from possibly rational coefficients; returns the canonical line and
// flips side when normalization negated the coefficients.
Line line_from_coeffs(const Scalar& a, const Scalar& b, const Scalar& c, int* side = nullptr);

}  // namespace ptree
