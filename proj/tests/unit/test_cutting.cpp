#include <gtest/gtest.h>

#include <random>

#include "ptree/cutting.hpp"
#include "ptree/oracle.hpp"

using namespace ptree;

namespace {

std::vector<Line> random_lines_through(std::mt19937_64& rng, const SimplexCell& cell, int m, int range) {
  std::vector<Line> out;
  while (int(out.size()) < m) {
    Point a((long long)(rng() % range), (long long)(rng() % range));
    Point b((long long)(rng() % range), (long long)(rng() % range));
    if (a == b) continue;
    Line l = Line::through(a, b);
    if (cell.crosses(l)) out.push_back(l);
  }
  return out;
}

std::size_t max_crossing(const Cutting& c) {
  std::size_t m = 0;
  for (auto& v : c.crossing) m = std::max(m, v.size());
  return m;
}

}  // namespace

TEST(Cutting, TrivialCases) {
  SimplexCell cell(Point(0, 0), Point(1, 0), Point(0, 1));
  std::vector<Line> H{Line::through(Point(0, 0), Point(1, 1))};
  EXPECT_EQ(cut_unweighted(H, cell, Scalar(1)).cells.size(), 1u);
  EXPECT_EQ(cut_unweighted({}, cell, Scalar(7)).cells.size(), 1u);
  EXPECT_EQ(cut_unweighted(H, cell, Scalar(Integer(1), Integer(3))).cells.size(), 1u);
}

TEST(Cutting, TwelveLinesInUnitTriangle) {
  // unit triangle scaled by 12 so that lines through grid points cross it
  SimplexCell cell(Point(0, 0), Point(12, 0), Point(0, 12));
  std::mt19937_64 rng(1);
  auto H = random_lines_through(rng, cell, 12, 13);
  Cutting c = cut_unweighted(H, cell, Scalar(3));
  EXPECT_LE(max_crossing(c), 4u);
  auto chk = oracle::verify_cutting(c, H, {}, Scalar(3));
  EXPECT_TRUE(chk.ok) << chk.message;
}

TEST(Cutting, RandomUnweightedValidity) {
  std::mt19937_64 rng(2);
  SimplexCell cell(Point(-3, -2), Point(40, 1), Point(5, 37));
  for (int trial = 0; trial < 30; ++trial) {
    auto H = random_lines_through(rng, cell, 5 + int(rng() % 30), 40);
    Scalar r(Integer(2 + (long long)(rng() % 6)), Integer(1 + (long long)(rng() % 2)));
    Cutting c = cut_unweighted(H, cell, r);
    auto chk = oracle::verify_cutting(c, H, {}, r);
    ASSERT_TRUE(chk.ok) << chk.message;
  }
}

TEST(Cutting, DuplicateLinesCountWithMultiplicity) {
  SimplexCell cell(Point(0, 0), Point(10, 0), Point(0, 10));
  Line l = Line::through(Point(1, 0), Point(1, 5));
  std::vector<Line> H{l, l, l, Line::through(Point(0, 1), Point(5, 1))};
  Cutting c = cut_unweighted(H, cell, Scalar(2));
  auto chk = oracle::verify_cutting(c, H, {}, Scalar(2));
  EXPECT_TRUE(chk.ok) << chk.message;
  for (auto& ids : c.crossing) EXPECT_LE(ids.size(), 2u);
}

TEST(Normalize, WorkedExamples) {
  Multiset one = normalize_multiset({17});
  EXPECT_LE(one.multiplicity[0], 4);
  EXPECT_LE(one.size, 5);
  Multiset flat = normalize_multiset(std::vector<int>(8, 0));
  EXPECT_EQ(flat.q, 3);
  EXPECT_EQ(flat.p, 3);
  for (auto m : flat.multiplicity) EXPECT_EQ(m, 2);
  EXPECT_EQ(flat.size, 16);
}

TEST(Normalize, SizeBoundOnRandomExponents) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> e(1 + rng() % 300);
    for (int& x : e) x = int(rng() % 50);
    Multiset m = normalize_multiset(e);
    ASSERT_LE(m.size, 5 * std::int64_t(e.size()));
  }
}

TEST(Cutting, WeightedBudgets) {
  std::mt19937_64 rng(4);
  SimplexCell cell(Point(0, 0), Point(50, 0), Point(0, 50));
  for (int trial = 0; trial < 20; ++trial) {
    WeightedLineSet W;
    W.lines = random_lines_through(rng, cell, 10 + int(rng() % 20), 50);
    for (std::size_t i = 0; i < W.lines.size(); ++i) W.exponents.push_back(int(rng() % 41));
    Cutting c = cut_weighted(W, cell, Scalar(4));
    auto chk = oracle::verify_cutting(c, W.lines, W.exponents, Scalar(4));
    ASSERT_TRUE(chk.ok) << chk.message;
  }
}

TEST(Cutting, DominatingLineCrossesNoCell) {
  std::mt19937_64 rng(5);
  SimplexCell cell(Point(0, 0), Point(30, 0), Point(0, 30));
  WeightedLineSet W;
  W.lines = random_lines_through(rng, cell, 8, 30);
  W.exponents.assign(8, 0);
  W.exponents[3] = 20;
  Cutting c = cut_weighted(W, cell, Scalar(2));
  for (auto& ids : c.crossing) EXPECT_EQ(std::count(ids.begin(), ids.end(), 3), 0);
}

TEST(Cutting, UniformWeightsMatchUnweightedBridge) {
  std::mt19937_64 rng(6);
  SimplexCell cell(Point(0, 0), Point(30, 0), Point(0, 30));
  WeightedLineSet W;
  W.lines = random_lines_through(rng, cell, 14, 30);
  W.exponents.assign(W.lines.size(), 5);
  // uniform weights normalize to two copies per line; the bridge uses 5r
  Cutting a = cut_weighted(W, cell, Scalar(1));
  Cutting b = cut_unweighted(W.lines, cell, Scalar(5));
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_EQ(a.crossing[i], b.crossing[i]);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(a.cells[i].corner(k), b.cells[i].corner(k));
  }
}

TEST(Cutting, CappedHalvesUntilSmallEnough) {
  std::mt19937_64 rng(7);
  SimplexCell cell(Point(0, 0), Point(40, 0), Point(0, 40));
  WeightedLineSet W;
  W.lines = random_lines_through(rng, cell, 40, 40);
  W.exponents.assign(W.lines.size(), 0);
  Scalar used;
  Cutting c = cut_weighted_capped(W, cell, Scalar(8), 4, &used);
  EXPECT_LE(c.cells.size(), 4u);
  EXPECT_LT(used, Scalar(8));
  auto chk = oracle::verify_cutting(c, W.lines, W.exponents, used);
  EXPECT_TRUE(chk.ok) << chk.message;
}

TEST(Cutting, FrameCellKeepsFrameFlags) {
  auto frame = make_frame({Point(0, 0), Point(10, 10)});
  SimplexCell plane = SimplexCell::plane(frame);
  std::vector<Line> H{Line::through(Point(0, 0), Point(10, 10)), Line::through(Point(0, 10), Point(10, 0))};
  Cutting c = cut_unweighted(H, plane, Scalar(2));
  int frame_edges = 0;
  for (auto& cell : c.cells)
    for (int e = 0; e < 3; ++e) frame_edges += cell.frame_edge(e);
  EXPECT_GE(frame_edges, 3);
  auto chk = oracle::verify_cutting(c, H, {}, Scalar(2));
  EXPECT_TRUE(chk.ok) << chk.message;
}
