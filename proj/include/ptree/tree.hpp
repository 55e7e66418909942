#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ptree/refine.hpp"

namespace ptree {

// Distinct lines through pairs of distinct points, in canonical order.
std::vector<Line> build_test_set(const std::vector<Point>& P);

// Test set of a deterministic sample of at most cap points (cap 0: all points).
std::vector<Line> build_test_set_capped(const std::vector<Point>& P, std::int64_t cap);

struct TreeConfig {
  RefineConfig refine;              // b, beta, c_cut
  std::int64_t r0 = 1;              // smallest accepted r
  std::int64_t test_set_cap = 64;   // sample size for the test set; 0 = all points
  std::int64_t c1 = 2, c2 = 2;      // caps asserted by the audit
  bool audit = false;               // audit-mode refine runs
  std::function<void(const Cutting&, const WeightedLineSet&, const Scalar& r)> on_cutting;
  std::function<void(const struct PartitionTree&)> on_tree;  // every finished tree
};

struct TreeCell {
  SimplexCell cell;
  std::vector<int> points;  // sorted ids into PartitionTree::points
  int parent = -1;
  std::vector<int> children;
};

struct RoundStats {
  std::int64_t t = 0, t_nominal = 0, b = 0;
  std::int64_t subcells = 0, budget = 0, point_cap = 0, max_points = 0;
  std::int64_t max_lambda = 0, cutting_cells = 0;
  bool audited = false, audit_ok = true;
  std::string audit_message;
};

struct PartitionTree {
  std::vector<Point> points;
  Scalar theta;  // shear applied by the caller, recorded only
  std::int64_t r = 1, b = 4, bprime = 1, beff = 1, k = 0;
  std::int64_t num_lines = 0;
  std::vector<std::vector<TreeCell>> levels;  // Pi_0 .. Pi_{k+1}
  std::vector<RoundStats> rounds;

  std::int64_t n() const { return std::int64_t(points.size()); }
  // Nominal cell count b' b^{i-1} of level i >= 1.
  std::int64_t nominal(std::size_t level) const;
  const std::vector<TreeCell>& leaves() const { return levels.back(); }
};

struct Schedule {
  std::int64_t k, bprime;
};
Schedule tree_schedule(std::int64_t r, std::int64_t b);

PartitionTree build_tree(const std::vector<Point>& P, std::int64_t r, const TreeConfig& cfg);

// Per level, the largest number of cells crossed by one probe.
std::vector<std::int64_t> crossing_profile(const PartitionTree& t, const std::vector<Line>& probes);

// Structural properties 1-4 and the point partition at every level; empty when all hold.
std::vector<std::string> audit_tree(const PartitionTree& t, std::int64_t c1 = 2, std::int64_t c2 = 2);

std::string serialize_tree(const PartitionTree& t);
PartitionTree deserialize_tree(const std::string& text);
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace ptree
