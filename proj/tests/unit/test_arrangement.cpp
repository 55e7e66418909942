#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ptree/arrangement.hpp"

using namespace ptree;

namespace {

std::vector<int> signs_at(const Arrangement& arr, const Point& p) {
  std::vector<int> s(arr.num_lines());
  for (std::size_t i = 0; i < arr.num_lines(); ++i) s[i] = side(arr.line(i), p);
  return s;
}

// Independent counts: distinct crossing points, and pieces per line.
std::pair<std::size_t, std::size_t> brute_ve(const std::vector<Line>& in) {
  std::vector<Line> ls = in;
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  std::vector<Point> all;
  std::size_t e = 0;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    std::vector<Point> on;
    for (std::size_t j = 0; j < ls.size(); ++j)
      if (i != j)
        if (auto p = intersect(ls[i], ls[j])) on.push_back(*p);
    std::sort(on.begin(), on.end(), lex_less);
    on.erase(std::unique(on.begin(), on.end()), on.end());
    e += on.size() + 1;
    all.insert(all.end(), on.begin(), on.end());
  }
  std::sort(all.begin(), all.end(), lex_less);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return {all.size(), e};
}

std::vector<Line> random_lines(std::mt19937_64& rng, int m, bool allow_vertical) {
  std::vector<Line> ls;
  while (int(ls.size()) < m) {
    long long x1 = rng() % 7, y1 = rng() % 7, x2 = rng() % 7, y2 = rng() % 7;
    if (x1 == x2 && y1 == y2) continue;
    if (x1 == x2 && !allow_vertical) continue;
    ls.push_back(Line::through(Point(x1, y1), Point(x2, y2)));
  }
  return ls;
}

std::vector<Point> probe_points(std::mt19937_64& rng, const Arrangement& arr, int n) {
  std::vector<Point> ps;
  for (int i = 0; i < n; ++i)
    ps.push_back(Point(Scalar(Integer((long long)(rng() % 29) - 7), Integer(2)),
                       Scalar(Integer((long long)(rng() % 29) - 7), Integer(2))));
  for (std::size_t f = 0; f < arr.num_features(); ++f) ps.push_back(arr.feature(int(f)).witness);
  return ps;
}

}  // namespace

TEST(Arrangement, GeneralPositionCounts) {
  std::vector<Line> ls{Line::through(Point(0, 0), Point(1, 1)), Line::through(Point(0, 1), Point(1, 0)),
                       Line::through(Point(0, 3), Point(5, 4))};
  Arrangement arr(ls);
  EXPECT_EQ(arr.num_vertices(), 3u);
  EXPECT_EQ(arr.num_edges(), 9u);
  EXPECT_EQ(arr.num_faces(), 7u);
}

TEST(Arrangement, EmptyAndSingle) {
  Arrangement none{std::vector<Line>{}};
  EXPECT_EQ(none.num_faces(), 1u);
  EXPECT_EQ(none.locate(Point(3, 4)), none.faces()[0]);
  Arrangement one({Line(Integer(1), Integer(0), Integer(-2))});  // x = 2
  EXPECT_EQ(one.num_faces(), 2u);
  EXPECT_EQ(one.num_edges(), 1u);
  EXPECT_EQ(one.feature(one.locate_feature(Point(2, 9))).dim, 1);
}

TEST(Arrangement, RandomAgainstBruteForce) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 150; ++trial) {
    int m = 1 + int(rng() % 9);
    auto ls = random_lines(rng, m, trial % 2 == 0);
    Arrangement arr(ls);
    auto [v, e] = brute_ve(ls);
    ASSERT_EQ(arr.num_vertices(), v);
    ASSERT_EQ(arr.num_edges(), e);
    // Euler relation on the one-point compactification: (V+1) - E + F = 2
    ASSERT_EQ(long(arr.num_vertices()) - long(arr.num_edges()) + long(arr.num_faces()), 1);
    // covectors are unique per feature and dimension matches zero count
    std::set<std::vector<int>> seen;
    for (std::size_t f = 0; f < arr.num_features(); ++f) {
      auto c = arr.covector(int(f));
      ASSERT_TRUE(seen.insert(c).second);
      int zeros = int(std::count(c.begin(), c.end(), 0));
      int dim = arr.feature(int(f)).dim;
      if (dim == 2) ASSERT_EQ(zeros, 0);
      if (dim == 1) ASSERT_EQ(zeros, 1);
      if (dim == 0) ASSERT_GE(zeros, 2);
    }
    for (const Point& p : probe_points(rng, arr, 60)) {
      int f = arr.locate_feature(p);
      ASSERT_EQ(arr.covector(f), signs_at(arr, p));
      // half-open rule: smallest face whose covector agrees on nonzero entries
      auto s = signs_at(arr, p);
      int best = -1;
      for (int g : arr.faces()) {
        auto c = arr.covector(g);
        bool ok = true;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (s[i] != 0 && s[i] != c[i]) ok = false;
        if (ok) {
          best = g;
          break;
        }
      }
      ASSERT_EQ(arr.locate(p), best);
    }
  }
}

TEST(Arrangement, MultiplicityAndConcurrency) {
  // five lines through the origin, one repeated
  std::vector<Line> ls;
  for (long long k : {1, 2, 3, -1, 2}) ls.push_back(Line::through(Point(0, 0), Point(1, k)));
  Arrangement arr(ls);
  EXPECT_EQ(arr.num_lines(), 4u);
  EXPECT_EQ(arr.multiplicity(arr.line_of_input(1)), 2);
  EXPECT_EQ(arr.num_vertices(), 1u);
  EXPECT_EQ(arr.num_edges(), 8u);
  EXPECT_EQ(arr.num_faces(), 8u);
  EXPECT_EQ(arr.feature(arr.locate_feature(Point(0, 0))).dim, 0);
}

TEST(Arrangement, ClippedEulerRelation) {
  std::mt19937_64 rng(5);
  SimplexCell clip(Point(-1, -1), Point(9, -1), Point(-1, 9));
  for (int trial = 0; trial < 40; ++trial) {
    auto ls = random_lines(rng, 1 + int(rng() % 7), true);
    Arrangement arr(ls, &clip);
    EXPECT_EQ(long(arr.num_vertices()) - long(arr.num_edges()) + long(arr.num_faces()), 1);
    for (const Point& p : probe_points(rng, arr, 40)) {
      if (!clip.contains(p)) {
        EXPECT_THROW(arr.locate_feature(p), Error);
        continue;
      }
      EXPECT_EQ(arr.covector(arr.locate_feature(p)), signs_at(arr, p));
    }
  }
}

TEST(Arrangement, AnnotateCounts) {
  std::vector<Line> ls{Line::through(Point(0, 0), Point(1, 0)), Line::through(Point(0, 0), Point(0, 1))};
  Arrangement arr(ls);
  // item 0: y >= 0, item 1: x >= 0
  auto ann = annotate_counts(
      arr, 2,
      [](int i, const Point& p) { return (i == 0 ? p.y() : p.x()).sign() >= 0; }, true);
  int q = arr.locate(Point(1, 1));
  EXPECT_EQ(ann.counts[q], 2);
  EXPECT_EQ(ann.counts[arr.locate_feature(Point(0, 0))], 2);
  EXPECT_EQ(ann.counts[arr.locate(Point(-1, -1))], 0);
  // a predicate not aligned with the lines is rejected
  EXPECT_THROW(annotate_counts(arr, 1, [](int, const Point& p) { return p.x() > p.y(); }, false),
               Error);
}
