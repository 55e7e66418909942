#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ptree/arrangement.hpp"
#include "ptree/dataset.hpp"
#include "ptree/shear.hpp"
#include "ptree/tree.hpp"

namespace ptree {

// Closed halfplane side(line, p) * side >= 0.
struct Constraint {
  Line line;
  int side = 1;
};

// Points of one final leaf with the dual arrangement of their dual lines.
// Each feature stores which points lie above / below any primal line whose
// dual point falls in the feature, so a constraint is one point location.
class LeafCountStructure {
 public:
  LeafCountStructure() = default;
  explicit LeafCountStructure(std::vector<Point> pts);

  std::size_t size() const { return pts_.size(); }
  std::uint64_t all() const { return all_; }
  // Leaf points satisfying the constraint.
  std::uint64_t satisfying(const Constraint& c) const;
  std::int64_t count(const std::vector<Constraint>& cs) const;
  bool scan_only() const { return scan_; }
  const std::vector<Point>& points() const { return pts_; }

 private:
  std::vector<Point> pts_;
  std::uint64_t all_ = 0;
  bool scan_ = false;
  std::shared_ptr<Arrangement> arr_;
  std::vector<std::uint64_t> above_, below_;
};

struct RangeCountConfig {
  std::int64_t r = 0;       // 0: max(4, n/64)
  std::int64_t r1 = 0;      // 0: max(2, leaf/8); raised so final leaves hold <= t_leaf points
  std::int64_t t_leaf = 8;
  int b = 8, b1 = 8;
  TreeConfig tree;          // refine constants, test-set cap
};

struct QueryStats {
  std::int64_t visited_cells = 0;  // tree cells classified
  std::int64_t leaf_visits = 0;    // crossed final leaves
};

class RangeCountIndex {
 public:
  RangeCountIndex(const std::vector<Point>& P, const RangeCountConfig& cfg);

  // Closed triangle; degenerate triangles count points on the segment or point.
  std::int64_t count_in_triangle(const Triangle& t, QueryStats* st = nullptr) const;
  std::int64_t count_in_halfplane(const Line& l, int side, QueryStats* st = nullptr) const;

  const PartitionTree& stage1() const { return stage1_; }
  std::size_t num_final_leaves() const;
  std::size_t max_final_leaf() const;
  const ShearTransform& shear() const { return shear_; }
  std::string serialize() const;
  // final leaves partition P, sizes within t_leaf (coincident points excepted)
  std::vector<std::string> audit() const;

 private:
  struct Stage1Leaf {
    std::unique_ptr<PartitionTree> tree;   // null when the leaf is already final
    std::vector<LeafCountStructure> finals;  // per final leaf of tree (or one)
  };
  struct Region;
  std::int64_t descend(const PartitionTree& t, std::size_t level, int cell, const Region& q,
                       const std::vector<LeafCountStructure>* finals, const Stage1Leaf* s1, QueryStats& st) const;
  std::int64_t run(const Region& q, QueryStats* st) const;

  RangeCountConfig cfg_;
  ShearTransform shear_;
  std::vector<Point> pts_;  // sheared
  PartitionTree stage1_;
  std::vector<Stage1Leaf> leaves_;  // per stage-1 leaf
};

}  // namespace ptree
