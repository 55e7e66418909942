#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ptree/arrangement.hpp"
#include "ptree/shear.hpp"
#include "ptree/tree.hpp"

namespace ptree {

struct StoreConfig {
  std::int64_t r = 0;  // 0: max(4, 4n/b^3) clamped to [4, 2n]
  int b = 8;
  TreeConfig tree;
};

std::int64_t default_store_r(std::int64_t n, int b);

// Partition tree over the distinct segment endpoints. Each segment sits in
// exactly one slot: an edge of a child cell it crosses (S_e) or a leaf (S_v).
class SegmentStore {
 public:
  struct Place {
    int level = 0, cell = 0, edge = -1;  // edge -1: leaf list
  };

  SegmentStore() = default;
  // Segments are taken as given (callers shear first); ids are positions.
  SegmentStore(const std::vector<Segment>& S, const StoreConfig& cfg);

  bool empty() const { return segs_.empty(); }
  const PartitionTree& tree() const { return tree_; }
  const std::vector<Segment>& segments() const { return segs_; }
  const std::vector<std::vector<int>>& slots() const { return slots_; }
  const std::vector<Place>& placement() const { return place_; }
  const std::vector<Place>& slot_place() const { return slot_place_; }

  // Visits every node whose cell satisfies meets(cell), root first; for each
  // visited node hands the slots of its children's edges, or its own leaf
  // slot, to on_slot. Returning false from on_slot stops the walk.
  template <class Meets, class OnSlot>
  void walk(const Meets& meets, const OnSlot& on_slot, std::int64_t* visited = nullptr) const {
    if (empty()) return;
    bool go = true;
    descend(0, 0, meets, on_slot, visited, go);
  }

  // exactly-once storage, edge membership implies intersection, leaf membership implies containment
  std::vector<std::string> audit() const;
  std::string serialize() const;

 private:
  template <class Meets, class OnSlot>
  void descend(std::size_t level, int cell, const Meets& meets, const OnSlot& on_slot, std::int64_t* visited,
               bool& go) const {
    const TreeCell& node = tree_.levels[level][std::size_t(cell)];
    if (!go || !meets(node.cell)) return;
    if (visited) ++*visited;
    if (level + 1 == tree_.levels.size()) {
      int s = leaf_slot_[std::size_t(cell)];
      if (s >= 0) go = on_slot(s);
      return;
    }
    for (int ch : node.children)
      for (int e = 0; e < 3 && go; ++e) {
        int s = edge_slot_[level + 1][std::size_t(ch) * 3 + std::size_t(e)];
        if (s >= 0) go = on_slot(s);
      }
    for (int ch : node.children) descend(level + 1, ch, meets, on_slot, visited, go);
  }

  std::vector<Segment> segs_;
  PartitionTree tree_;
  std::vector<std::vector<int>> edge_slot_;  // [level][cell*3+e]
  std::vector<int> leaf_slot_;
  std::vector<std::vector<int>> slots_;
  std::vector<Place> slot_place_;
  std::vector<Place> place_;
};

// Up to 32 segments answering line and segment queries with two point
// locations: the endpoints' dual arrangement marks which segments a line
// meets, the supporting-line arrangement tells which segments separate the
// query endpoints.
class SegChunk {
 public:
  static constexpr std::size_t kMax = 32;
  SegChunk(std::vector<Segment> segs, std::vector<int> ids);

  std::uint32_t line_mask(const Line& l) const;
  std::uint32_t segment_mask(const Segment& q) const;
  const std::vector<int>& ids() const { return ids_; }
  std::size_t size() const { return segs_.size(); }
  std::size_t features() const;

 private:
  std::vector<Segment> segs_;
  std::vector<int> ids_;
  std::shared_ptr<Arrangement> a1_, a2_;
  std::vector<std::uint32_t> wedge_;
  std::vector<std::uint32_t> pos_, neg_, zero_;
  std::vector<std::pair<Line, std::uint32_t>> collinear_;  // sorted by line
};

struct SegStats {
  std::int64_t visited_cells = 0;
  std::int64_t chunk_queries = 0;
};

class SegQueryIndex {
 public:
  SegQueryIndex(const std::vector<Segment>& S, const StoreConfig& cfg);

  bool detect_line(const Line& l, SegStats* st = nullptr) const;
  std::int64_t count_intersecting(const Segment& q, SegStats* st = nullptr) const;
  std::vector<std::int64_t> report_intersecting(const Segment& q, SegStats* st = nullptr) const;  // sorted

  const SegmentStore& store() const { return store_; }
  const ShearTransform& shear() const { return shear_; }
  std::string serialize() const;

 private:
  template <class F>
  void segment_query(const Segment& q, SegStats* st, const F& take) const;

  ShearTransform shear_;
  SegmentStore store_;
  std::vector<std::vector<SegChunk>> chunks_;  // per slot
};

// Shear making every endpoint abscissa distinct and every supporting line non-vertical.
ShearTransform segment_shear(const std::vector<Segment>& S);

}  // namespace ptree
