#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ptree/cutting.hpp"
#include "ptree/geometry.hpp"

namespace ptree {

struct RefineConfig {
  int b = 8;                                   // power of two, >= 4
  Scalar beta = Scalar(Integer(1), Integer(10));
  Scalar c_cut = Scalar(Integer(1), Integer(4));
};

// Exponent histogram: value = sum over entries of 2^exponent.
class ExponentSum {
 public:
  void add(int e);
  void remove(int e);
  bool empty() const { return entries_ == 0; }
  int msb() const;  // floor(log2 value); INT_MIN when empty
  BigInt value() const;

 private:
  std::vector<std::int64_t> count_;
  std::int64_t entries_ = 0;
};

inline constexpr int kMinusInf = -(1 << 30);

// ceil(lambda * log2(1 + 1/b)) for b a power of two, exact.
class ExponentTable {
 public:
  explicit ExponentTable(int b);
  int operator()(int lambda);

 private:
  int b_, j_;
  BigInt pow_;
  std::vector<int> table_;
};

struct CellSelectInput {
  int id;
  int IE;  // kMinusInf when W' = 0
  int IF;  // kMinusInf when N' = 0
};

// Deterministic selection rule; returns the chosen id and |S'_i1|.
std::pair<int, int> select_cell(const std::vector<CellSelectInput>& cells, int i, const RefineConfig& cfg);

// r_i with the branch taken ('A' capped, 'B' balanced, '-' no crossing lines).
struct RiChoice {
  Scalar r;
  char branch;
};
RiChoice compute_ri(int IE, int IF, const RefineConfig& cfg);

struct RefineCell {
  SimplexCell cell;
  std::vector<int> points;
};

struct RefineOptions {
  // nominal number of cells for the point cap ceil(2n/(b t)); 0 means |cells|
  std::int64_t t_nominal = 0;
  bool audit = false;        // recompute W', N' from scratch after every iteration
  bool trace = false;
  std::function<void(const Cutting&, const WeightedLineSet&, const Scalar& r)> on_cutting;
};

struct RefineResult {
  std::vector<RefineCell> subcells;
  std::vector<int> parent;       // input cell of each subcell
  std::vector<int> order;        // input cells in processing order
  std::vector<int> lambda;       // final lambda per line
  std::int64_t point_cap = 0;
  std::int64_t cutting_cells = 0;
  std::int64_t budget = 0;       // b * t
  std::vector<std::string> trace;
  bool audit_ok = true;
  std::string audit_message;
  std::int64_t audits = 0;
};

// Squared length wx dx^2 + wy dy^2 used to rank cuts. of() scales each axis by
// the extent of the points (rounded to a power of two) so that strongly
// anisotropic inputs, such as dual points, are not cut into long strips.
struct CutMetric {
  Scalar wx = Scalar(1), wy = Scalar(1);
  static CutMetric of(const std::vector<Point>& P, const std::vector<int>& ids);
};

// Splits a cell into triangles holding at most cap of the given points each,
// by cuts through one corner. Pieces without points are dropped.
std::vector<RefineCell> fan_split(const SimplexCell& cell, const std::vector<int>& ids,
                                  const std::vector<Point>& P, std::int64_t cap, const CutMetric& metric = {});

RefineResult refine(const std::vector<Point>& P, const std::vector<Line>& H,
                    const std::vector<RefineCell>& cells, const RefineConfig& cfg,
                    const RefineOptions& opt = {});

}  // namespace ptree
