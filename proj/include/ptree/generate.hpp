#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ptree/dataset.hpp"

namespace ptree {

enum class Family { Uniform, Clustered, Grid, CollinearDegenerate };

Family parse_family(const std::string& name);  // throws InputError
std::string family_name(Family f);
const std::vector<Family>& all_families();

// Deterministic generators. Randomness comes only from std::mt19937_64
// seeded with the given seed; values are reduced with %, never through
// std distributions, so outputs are identical across standard libraries.
class Generator {
 public:
  Generator(Family f, std::int64_t n, std::uint64_t seed);

  std::vector<Point> points();                 // n distinct points
  std::vector<Triangle> triangles();           // n nondegenerate triangles
  std::vector<Segment> disjoint_segments();    // n pairwise disjoint segments
  Dataset dataset();                           // all three of the above

  // count queries of one kind, mixing generic and degenerate placements
  // relative to the dataset.
  std::vector<Query> queries(const Dataset& d, QueryKind kind, std::int64_t count);

  std::int64_t range() const { return R_; }

 private:
  long long uni(long long lo, long long hi);  // [lo, hi)
  Point family_point();
  Point random_box_point(long long margin);

  Family fam_;
  std::int64_t n_;
  std::mt19937_64 rng_;
  std::int64_t R_;
  std::vector<Point> centers_;
};

QueryKind parse_query_kind(const std::string& name);  // triangle, halfplane, point, line, segment, ray
std::string query_kind_name(QueryKind k);

}  // namespace ptree
