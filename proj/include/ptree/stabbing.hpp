#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ptree/dataset.hpp"
#include "ptree/shear.hpp"
#include "ptree/tree.hpp"

namespace ptree {

// Levels j_0 = 1 < j_1 < ... < j_l of a tree with parameters r, b used by
// the stabbing structure; t_i = b' b^{j_i - 1}.
struct StabSchedule {
  std::int64_t k = 0, bprime = 1;
  std::vector<std::int64_t> j;  // as computed, before removing repeats
  std::int64_t l() const { return std::int64_t(j.size()) - 1; }
};
StabSchedule stab_schedule(std::int64_t r, std::int64_t b, const Scalar& eps);

struct StabbingConfig {
  std::int64_t r = 0;       // outermost tree; 0: max(4, m / t_leaf)
  int b = 4;
  Scalar eps = Scalar(Integer(1), Integer(2));
  std::int64_t t_leaf = 8;  // subproblems this small get an arrangement
  bool reporting = true;
  TreeConfig tree;
};

struct StabStats {
  std::int64_t visited_cells = 0;
  std::int64_t leaf_queries = 0;
  std::array<std::int64_t, 4> cells_by_level{};  // indexed by constraint level k
  std::array<std::int64_t, 4> leaves_by_level{};
  StabStats& operator+=(const StabStats& o);
};

struct StabSpace {
  std::int64_t stored_ids = 0;  // ids in level-0 lists and leaf face lists
  std::int64_t trees = 0, leaf_structures = 0;
  std::int64_t max_l = 0;       // longest schedule used
};

class StabbingIndex {
 public:
  StabbingIndex(const std::vector<Triangle>& S, const StabbingConfig& cfg);
  ~StabbingIndex();
  StabbingIndex(StabbingIndex&&) noexcept;

  std::int64_t count(const Point& q, StabStats* st = nullptr) const;
  std::vector<std::int64_t> report(const Point& q, StabStats* st = nullptr) const;  // sorted

  std::size_t size() const { return n_; }
  const StabSpace& space() const { return space_; }
  const StabSchedule& top_schedule() const { return top_; }
  std::string serialize() const;

  struct Level;

 private:
  StabbingConfig cfg_;
  ShearTransform shear_;
  std::size_t n_ = 0;
  StabSpace space_;
  StabSchedule top_;
  std::unique_ptr<Level> root_;
};

}  // namespace ptree
