#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ptree/segquery.hpp"

namespace ptree {

// Up to 32 pairwise disjoint segments. For every feature of the endpoints'
// dual arrangement the segments met by lines of that feature appear in one
// fixed order along the line, so a ray needs one location plus a binary search.
class RayChunk {
 public:
  RayChunk(std::vector<Segment> segs, std::vector<int> ids);

  struct Candidate {
    int local = -1;
    RayHit hit;
  };
  // First segment of the chunk hit by r (sheared ray with support l); sound
  // is cleared if the located candidate turned out not to be hit.
  std::optional<Candidate> first(const Ray& r, const Line& l, bool* sound = nullptr) const;
  const std::vector<int>& ids() const { return ids_; }
  std::size_t size() const { return segs_.size(); }

 private:
  std::vector<Segment> segs_;
  std::vector<int> ids_;
  std::shared_ptr<Arrangement> a1_;
  std::vector<std::vector<int>> order_;     // per feature, by abscissa of the crossing
  std::vector<std::vector<int>> collinear_; // per feature, segments on the line
};

struct ShotResult {
  std::int64_t id = -1;
  Scalar t;
  Point point;
};

struct RayStats {
  std::int64_t visited_cells = 0;
  std::int64_t chunk_queries = 0;
  std::int64_t unsound_candidates = 0;
};

class RayShootIndex {
 public:
  // Throws InputError naming the first intersecting pair.
  RayShootIndex(const std::vector<Segment>& S, const StoreConfig& cfg);

  std::optional<ShotResult> shoot(const Ray& r, RayStats* st = nullptr) const;

  const SegmentStore& store() const { return store_; }
  std::string serialize() const;

 private:
  std::vector<Segment> orig_;
  ShearTransform shear_;
  SegmentStore store_;
  std::vector<std::vector<RayChunk>> chunks_;
};

}  // namespace ptree
