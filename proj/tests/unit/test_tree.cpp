#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "ptree/oracle.hpp"
#include "ptree/tree.hpp"

using namespace ptree;

namespace {

std::vector<Point> random_points(std::mt19937_64& rng, int n, int range) {
  std::set<std::pair<long long, long long>> seen;
  std::vector<Point> out;
  while (int(out.size()) < n) {
    long long x = (long long)(rng() % range), y = (long long)(rng() % range);
    if (!seen.insert({x, y}).second) continue;
    out.emplace_back(x, y);
    out.back().id = std::int64_t(out.size() - 1);
  }
  return out;
}

std::vector<Line> random_probes(std::mt19937_64& rng, int count, int range) {
  std::vector<Line> out;
  while (int(out.size()) < count) {
    // endpoints at half-integers avoid lines through two data points
    Point a(Scalar(Integer((long long)(rng() % (2 * range)) * 2 + 1), Integer(4)),
            Scalar(Integer((long long)(rng() % (2 * range)) * 2 + 1), Integer(4)));
    Point b(Scalar(Integer((long long)(rng() % (2 * range)) * 2 + 1), Integer(4)),
            Scalar(Integer((long long)(rng() % (2 * range)) * 2 + 1), Integer(4)));
    if (a == b) continue;
    out.push_back(Line::through(a, b));
  }
  return out;
}

}  // namespace

TEST(TestSet, SmallCases) {
  EXPECT_EQ(build_test_set({Point(0, 0), Point(1, 0), Point(0, 1)}).size(), 3u);
  EXPECT_EQ(build_test_set({Point(0, 0), Point(1, 1), Point(2, 2), Point(5, 5)}).size(), 1u);
  EXPECT_THROW(build_test_set({Point(0, 0)}), InputError);
}

TEST(TestSet, MatchesPairEnumeration) {
  std::mt19937_64 rng(21);
  auto P = random_points(rng, 20, 8);  // small grid forces collinear triples
  auto H = build_test_set(P);
  // independent count: a pair (i, j) spans a new line iff no earlier pair is collinear with it
  std::size_t want = 0;
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = i + 1; j < P.size(); ++j) {
      bool fresh = true;
      for (std::size_t a = 0; a < P.size() && fresh; ++a)
        for (std::size_t b = a + 1; b < P.size() && fresh; ++b) {
          if (a > i || (a == i && b >= j)) break;
          if (orient(P[i], P[j], P[a]) == 0 && orient(P[i], P[j], P[b]) == 0) fresh = false;
        }
      want += fresh;
    }
  EXPECT_EQ(H.size(), want);
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = i + 1; j < P.size(); ++j)
      EXPECT_TRUE(std::binary_search(H.begin(), H.end(), Line::through(P[i], P[j])));
}

TEST(Tree, ScheduleArithmetic) {
  EXPECT_EQ(tree_schedule(4, 4).k, 1);
  EXPECT_EQ(tree_schedule(4, 4).bprime, 1);
  EXPECT_EQ(tree_schedule(24, 4).k, 2);
  EXPECT_EQ(tree_schedule(24, 4).bprime, 2);
  EXPECT_EQ(tree_schedule(1, 8).k, 0);
  EXPECT_EQ(tree_schedule(63, 8).bprime, 8);
}

TEST(Tree, SixteenPoints) {
  std::mt19937_64 rng(22);
  auto P = random_points(rng, 16, 30);
  TreeConfig cfg;
  cfg.refine.b = 4;
  PartitionTree t = build_tree(P, 4, cfg);
  ASSERT_EQ(t.levels.size(), 3u);
  EXPECT_EQ(t.levels[1].size(), 1u);  // b' = 1: first round is the identity
  EXPECT_LE(t.levels[2].size(), 4u);
  for (auto& c : t.levels[2]) EXPECT_LE(c.points.size(), 8u);
  auto bad = audit_tree(t);
  EXPECT_TRUE(bad.empty()) << bad.front();
}

TEST(Tree, PropertiesAcrossParameters) {
  std::mt19937_64 rng(23);
  for (auto [n, r, b] : std::vector<std::tuple<int, int, int>>{{64, 24, 4}, {64, 16, 8}, {48, 48, 4}, {33, 5, 8}}) {
    auto P = random_points(rng, n, 100);
    TreeConfig cfg;
    cfg.refine.b = b;
    int cuttings = 0;
    cfg.on_cutting = [&](const Cutting& c, const WeightedLineSet& W, const Scalar& used) {
      ++cuttings;
      auto chk = oracle::verify_cutting(c, W.lines, W.exponents, used);
      EXPECT_TRUE(chk.ok) << chk.message;
    };
    PartitionTree t = build_tree(P, r, cfg);
    EXPECT_EQ(t.levels.size(), std::size_t(t.k + 2));
    auto bad = audit_tree(t);
    EXPECT_TRUE(bad.empty()) << "n=" << n << " r=" << r << ": " << bad.front();
    for (auto& st : t.rounds) {
      EXPECT_LE(st.subcells, st.budget);
      EXPECT_LE(st.max_points, st.point_cap);
    }
    EXPECT_GT(cuttings, 0);
  }
}

TEST(Tree, CrossingProfile) {
  std::mt19937_64 rng(24);
  auto P = random_points(rng, 64, 100);
  TreeConfig cfg;
  PartitionTree t = build_tree(P, 64, cfg);
  auto H = build_test_set(P);
  auto prof = crossing_profile(t, H);
  ASSERT_EQ(prof.size(), t.levels.size());
  for (std::size_t i = 1; i < prof.size(); ++i) {
    double bound = std::sqrt(double(t.nominal(i))) + std::pow(std::log2(65.0), 3);
    EXPECT_LE(double(prof[i]) / bound, 8.0);
  }
  auto rnd = crossing_profile(t, random_probes(rng, 200, 100));
  for (std::size_t i = 1; i < prof.size(); ++i) EXPECT_LE(rnd[i], 4 * prof[i]);
  // a far away line meets no bounded cell
  auto far = crossing_profile(t, {Line::through(Point(-100000, -99999), Point(-99999, -100000))});
  for (std::size_t i = 1; i < far.size(); ++i) {
    std::int64_t bounded = 0;
    for (auto& c : t.levels[i])
      if (!c.cell.unbounded()) bounded += c.cell.crosses(Line::through(Point(-100000, -99999), Point(-99999, -100000)));
    EXPECT_EQ(bounded, 0);
  }
}

TEST(Tree, SerializationRoundTrip) {
  std::mt19937_64 rng(25);
  auto P = random_points(rng, 40, 60);
  TreeConfig cfg;
  PartitionTree t = build_tree(P, 20, cfg);
  std::string s = serialize_tree(t);
  PartitionTree u = deserialize_tree(s);
  EXPECT_EQ(serialize_tree(u), s);
  EXPECT_TRUE(audit_tree(u).empty());
  EXPECT_EQ(fnv1a64(serialize_tree(build_tree(P, 20, cfg))), fnv1a64(s));
  EXPECT_EQ(fnv1a64(""), 1469598103934665603ull);
}

TEST(Tree, AuditCatchesCorruption) {
  std::mt19937_64 rng(26);
  auto P = random_points(rng, 32, 60);
  TreeConfig cfg;
  PartitionTree t = build_tree(P, 16, cfg);
  auto& leaves = t.levels.back();
  ASSERT_GE(leaves.size(), 2u);
  // move one point to another leaf
  int id = leaves[0].points.back();
  leaves[0].points.pop_back();
  leaves[1].points.push_back(id);
  std::sort(leaves[1].points.begin(), leaves[1].points.end());
  EXPECT_FALSE(audit_tree(t).empty());
}

TEST(Tree, RejectsBadR) {
  std::vector<Point> P{Point(0, 0), Point(1, 2), Point(3, 1)};
  TreeConfig cfg;
  EXPECT_THROW(build_tree(P, 4, cfg), InputError);
  EXPECT_THROW(build_tree(P, 0, cfg), InputError);
  EXPECT_NO_THROW(build_tree(P, 3, cfg));
  EXPECT_NO_THROW(build_tree({Point(5, 5)}, 1, cfg));
}

TEST(Tree, AuditModeRuns) {
  std::mt19937_64 rng(27);
  auto P = random_points(rng, 24, 50);
  TreeConfig cfg;
  cfg.audit = true;
  PartitionTree t = build_tree(P, 24, cfg);
  for (auto& st : t.rounds) EXPECT_TRUE(st.audit_ok) << st.audit_message;
}
