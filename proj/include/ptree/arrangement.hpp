#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ptree/geometry.hpp"

namespace ptree {

// Arrangement of lines with slab-based point location. Features (vertices,
// edges, 2-faces) get ids in left-to-right, bottom-to-top discovery order.
// Duplicate input lines are merged; vertical lines are allowed.
class Arrangement {
 public:
  struct Feature {
    int dim = 2;
    Point witness;       // a point in the relative interior
    int min_face = -1;   // smallest incident 2-face (itself for faces)
    bool in_clip = true;
  };

  Arrangement() : Arrangement(std::vector<Line>{}) {}
  explicit Arrangement(const std::vector<Line>& lines, const SimplexCell* clip = nullptr);

  std::size_t num_lines() const { return lines_.size(); }
  const Line& line(std::size_t i) const { return lines_[i]; }
  int multiplicity(std::size_t i) const { return mult_[i]; }
  // distinct-line index of the k-th input line
  int line_of_input(std::size_t k) const { return input_map_[k]; }

  std::size_t num_features() const { return features_.size(); }
  const Feature& feature(int f) const { return features_[f]; }
  std::size_t num_vertices() const { return counts_[0]; }
  std::size_t num_edges() const { return counts_[1]; }
  std::size_t num_faces() const { return counts_[2]; }
  // 2-faces inside the clip, in id order
  const std::vector<int>& faces() const { return face_list_; }

  // Feature containing p (exact). Throws if p is outside the clip.
  int locate_feature(const Point& p) const;
  // 2-face by the half-open rule: a point on lower-dimensional features is
  // charged to the smallest-id incident face.
  int locate(const Point& p) const;

  // Some lower-dimensional features on the boundary of a 2-face.
  const std::vector<int>& face_neighbors(int f) const { return nbrs_[f]; }

  // Sign of every distinct line at the feature.
  std::vector<int> covector(int f) const;

 private:
  struct Block {
    int lo, hi;   // order positions in the slab left of the boundary
    int feature;  // vertex feature
  };
  struct Boundary {
    Scalar x;
    int vertical_line = -1;   // distinct line index or -1
    std::vector<Block> blocks;
    std::vector<int> vgaps;   // features of the open pieces of the vertical line
  };

  int slab_feature(int slab, int pos) const { return slab_feat_[std::size_t(slab) * stride_ + pos]; }
  int order_at(int slab, int g) const { return order_[std::size_t(slab) * nv_.size() + g]; }
  // #lines of the slab order strictly below p, and whether p lies on the next one
  std::pair<int, bool> rank_in_slab(int slab, const Point& p) const;

  std::vector<Line> lines_;
  std::vector<int> mult_;
  std::vector<int> input_map_;
  std::vector<int> nv_;             // non-vertical distinct line indices
  std::vector<Boundary> bounds_;
  std::vector<int> order_;          // per slab, nv_.size() entries (distinct line indices)
  std::vector<int> slab_feat_;      // per slab, stride_ entries
  std::size_t stride_ = 1;
  std::vector<Feature> features_;
  std::vector<int> face_list_;
  std::vector<std::vector<int>> nbrs_;
  std::size_t counts_[3] = {0, 0, 0};
  std::vector<int> clip_lines_;     // distinct indices of clip edges
  std::vector<int> clip_inside_;
};

// Per-feature count and id list of the items whose closed region contains
// the feature. contains(item, witness) is evaluated at the feature witness;
// for 2-faces further interior samples are checked and a disagreement throws.
struct Annotation {
  std::vector<std::int64_t> counts;
  std::vector<std::vector<int>> ids;
};
Annotation annotate_counts(const Arrangement& arr, int num_items,
                           const std::function<bool(int, const Point&)>& contains,
                           bool keep_ids);

}  // namespace ptree
