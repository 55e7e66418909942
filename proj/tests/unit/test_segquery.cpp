#include <gtest/gtest.h>

#include <random>

#include "ptree/oracle.hpp"
#include "ptree/segquery.hpp"

using namespace ptree;

namespace {

Point rnd(std::mt19937_64& rng, int lo, int hi) {
  return Point((long long)(lo + rng() % (hi - lo)), (long long)(lo + rng() % (hi - lo)));
}

std::vector<Segment> random_segments(std::mt19937_64& rng, int n, int range, int len) {
  std::vector<Segment> out;
  while (int(out.size()) < n) {
    Point a = rnd(rng, 0, range);
    Point b(a.x() + Scalar((long long)(rng() % (2 * len)) - len), a.y() + Scalar((long long)(rng() % (2 * len)) - len));
    if (a == b) continue;
    out.emplace_back(a, b, std::int64_t(out.size()));
  }
  return out;
}

Line random_line(std::mt19937_64& rng, int lo, int hi) {
  for (;;) {
    Point a = rnd(rng, lo, hi), b = rnd(rng, lo, hi);
    if (!(a == b)) return Line::through(a, b);
  }
}

}  // namespace

TEST(SegChunk, MasksMatchBruteForce) {
  std::mt19937_64 rng(41);
  auto S = random_segments(rng, 20, 12, 5);
  // add collinear and overlapping pieces
  S.emplace_back(Point(0, 0), Point(4, 4));
  S.emplace_back(Point(2, 2), Point(6, 6));
  S.emplace_back(Point(8, 8), Point(9, 9));
  std::vector<int> ids(S.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = int(i);
  SegChunk ch(S, ids);
  for (int t = 0; t < 2000; ++t) {
    Line l = random_line(rng, -2, 14);
    std::uint32_t want = 0;
    for (std::size_t i = 0; i < S.size(); ++i)
      if (line_meets_segment(l, S[i])) want |= 1u << i;
    ASSERT_EQ(ch.line_mask(l), want);
    Point a = rnd(rng, -2, 14), b = rnd(rng, -2, 14);
    if (a == b) continue;
    Segment q(a, b);
    want = 0;
    for (std::size_t i = 0; i < S.size(); ++i)
      if (segments_intersect(q, S[i])) want |= 1u << i;
    ASSERT_EQ(ch.segment_mask(q), want) << a.str() << ' ' << b.str();
  }
}

TEST(SegmentStore, ExactlyOnceAndAudit) {
  std::mt19937_64 rng(42);
  auto S = random_segments(rng, 150, 200, 40);
  StoreConfig cfg;
  cfg.r = 32;
  cfg.b = 4;
  SegmentStore store(S, cfg);
  for (auto& s : store.audit()) ADD_FAILURE() << s;
  std::size_t total = 0;
  for (auto& s : store.slots()) total += s.size();
  EXPECT_EQ(total, S.size());
}

TEST(SegmentStore, LongSegmentGoesToShallowEdge) {
  std::mt19937_64 rng(43);
  auto S = random_segments(rng, 60, 100, 3);
  S.emplace_back(Point(-5, 50), Point(105, 51), 60);
  StoreConfig cfg;
  cfg.r = 16;
  cfg.b = 4;
  SegmentStore store(S, cfg);
  // first level with more than one cell
  int first = 1;
  while (store.tree().levels[std::size_t(first)].size() == 1) ++first;
  EXPECT_EQ(store.placement().back().level, first);
  EXPECT_GE(store.placement().back().edge, 0);
  EXPECT_TRUE(store.audit().empty());
}

TEST(SegmentStore, TinySegmentsInLeaves) {
  // far-apart unit segments: each pair of endpoints stays together down to a leaf
  std::vector<Segment> S;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) S.emplace_back(Point(100 * i, 100 * j + 7 * i), Point(100 * i + 1, 100 * j + 7 * i));
  StoreConfig cfg;
  cfg.r = 8;
  cfg.b = 4;
  SegmentStore store(S, cfg);
  EXPECT_TRUE(store.audit().empty());
  int leaves = 0;
  for (auto& p : store.placement()) leaves += p.edge < 0;
  EXPECT_GT(leaves, 32);
}

TEST(SegQuery, EmptyAndSingle) {
  SegQueryIndex none({}, {});
  EXPECT_FALSE(none.detect_line(Line::through(Point(0, 0), Point(1, 1))));
  EXPECT_EQ(none.count_intersecting(Segment(Point(0, 0), Point(1, 1))), 0);
  SegQueryIndex one({Segment(Point(0, 0), Point(4, 0))}, {});
  EXPECT_TRUE(one.detect_line(Line::through(Point(2, -1), Point(2, 1))));
  EXPECT_FALSE(one.detect_line(Line::through(Point(0, 1), Point(1, 1))));
  EXPECT_EQ(one.report_intersecting(Segment(Point(1, -1), Point(1, 1))), (std::vector<std::int64_t>{0}));
  EXPECT_EQ(one.count_intersecting(Segment(Point(5, -1), Point(5, 1))), 0);
}

TEST(SegQuery, DetectMatchesOracle) {
  std::mt19937_64 rng(44);
  for (int n : {16, 64, 256}) {
    auto S = random_segments(rng, n, 300, 30);
    SegQueryIndex idx(S, {});
    for (auto& s : idx.store().audit()) ADD_FAILURE() << s;
    for (int q = 0; q < 400; ++q) {
      Line l = random_line(rng, -10, 310);
      ASSERT_EQ(idx.detect_line(l), oracle::detect_line(S, l)) << n << ' ' << q;
    }
    // lines through endpoints
    for (int q = 0; q < 100; ++q) {
      const Segment& s = S[std::size_t(rng() % S.size())];
      Line l = Line::through(s.q, rnd(rng, 0, 300));
      ASSERT_EQ(idx.detect_line(l), oracle::detect_line(S, l));
    }
  }
}

TEST(SegQuery, CountReportMatchOracle) {
  std::mt19937_64 rng(45);
  for (int n : {32, 128, 256}) {
    auto S = random_segments(rng, n, 64, 12);  // coarse grid: touching and collinear cases
    StoreConfig cfg;
    cfg.r = n / 4;
    cfg.b = 4;
    SegQueryIndex idx(S, cfg);
    for (int q = 0; q < 400; ++q) {
      Point a = rnd(rng, -4, 68), b = rnd(rng, -4, 68);
      if (a == b) continue;
      Segment g(a, b);
      auto want = oracle::segments_hit(S, g);
      ASSERT_EQ(idx.report_intersecting(g), want) << n << ' ' << q;
      ASSERT_EQ(idx.count_intersecting(g), std::int64_t(want.size()));
    }
  }
}

TEST(SegQuery, VerticalQueries) {
  std::mt19937_64 rng(46);
  auto S = random_segments(rng, 100, 50, 8);
  SegQueryIndex idx(S, {});
  for (int x = -1; x < 52; x += 3) {
    Line l = Line::through(Point(x, 0), Point(x, 1));
    ASSERT_EQ(idx.detect_line(l), oracle::detect_line(S, l));
    Segment g(Point(x, 10), Point(x, 40));
    ASSERT_EQ(idx.report_intersecting(g), oracle::segments_hit(S, g));
  }
}

TEST(SegQuery, Deterministic) {
  std::mt19937_64 a(47), b(47);
  SegQueryIndex x(random_segments(a, 80, 100, 10), {}), y(random_segments(b, 80, 100, 10), {});
  EXPECT_EQ(fnv1a64(x.serialize()), fnv1a64(y.serialize()));
}
