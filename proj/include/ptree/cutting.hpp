#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ptree/geometry.hpp"

namespace ptree {

struct Cutting {
  SimplexCell parent;
  std::vector<SimplexCell> cells;
  std::vector<std::vector<int>> crossing;  // input line indices crossing each cell
};

// Lines with weights 2^exponent.
struct WeightedLineSet {
  std::vector<Line> lines;
  std::vector<int> exponents;
  BigInt total() const;
};

struct Multiset {
  std::vector<std::int64_t> multiplicity;  // parallel to the input lines
  std::int64_t size = 0;                   // |Q'|
  int p = 0, q = 0;
};

Multiset normalize_multiset(const std::vector<int>& exponents);

// Process-wide tally of normalize_multiset calls against the |Q'| <= 5m bound.
struct MultisetTally {
  std::int64_t calls = 0, over_bound = 0;
  double max_ratio = 0;  // |Q'| / m
};
MultisetTally& multiset_tally();

// Cells whose crossing multiplicity is at most |H|/r (r < 1 is treated as 1).
Cutting cut_unweighted(const std::vector<Line>& H, const SimplexCell& cell, const Scalar& r);

// Cells whose crossing weight is at most W'/r; computed as an unweighted
// cutting of the normalized multiset with parameter 5r.
Cutting cut_weighted(const WeightedLineSet& W, const SimplexCell& cell, const Scalar& r);

// Cutting with at most max_cells cells: tries r, r/2, r/4, ... and reports the
// parameter that succeeded in *used_r. Falls back to {cell} once r <= 1/5.
Cutting cut_weighted_capped(const WeightedLineSet& W, const SimplexCell& cell, const Scalar& r,
                            std::size_t max_cells, Scalar* used_r = nullptr);

// Splits a cell along a line crossing it; every convex piece is triangulated
// by the diagonal from its lexicographically smallest corner.
std::vector<SimplexCell> split_cell(const SimplexCell& cell, const Line& h);

// Triangulates a convex polygon given counterclockwise (3 or more corners).
std::vector<SimplexCell> triangulate_convex(const std::vector<Point>& poly, const SimplexCell& parent);

}  // namespace ptree
