#include <gtest/gtest.h>

#include <random>

#include "ptree/oracle.hpp"
#include "ptree/stabbing.hpp"

using namespace ptree;

namespace {

Point rnd(std::mt19937_64& rng, int lo, int hi) {
  return Point((long long)(lo + rng() % (hi - lo)), (long long)(lo + rng() % (hi - lo)));
}

std::vector<Triangle> random_triangles(std::mt19937_64& rng, int n, int range, int size) {
  std::vector<Triangle> out;
  while (int(out.size()) < n) {
    Point a = rnd(rng, 0, range);
    Triangle t{a, Point(a.x() + Scalar((long long)(rng() % size)), a.y() + Scalar((long long)(rng() % size) - size / 2)),
               Point(a.x() + Scalar((long long)(rng() % size) - size / 2), a.y() + Scalar((long long)(rng() % size)))};
    if (orient(t[0], t[1], t[2]) == 0) continue;
    out.push_back(t);
  }
  return out;
}

std::vector<std::int64_t> oracle_ids(const std::vector<Triangle>& S, const Point& q) { return oracle::stab(S, q); }

}  // namespace

TEST(StabSchedule, HandExample) {
  // r = 16, b = 4: k = 2, b' = 1; r^(1/2) = 4 -> j = 2, r^(3/4) = 8 -> j = 3, and 16/4 < 16 stops
  StabSchedule s = stab_schedule(16, 4, Scalar(Integer(1), Integer(2)));
  EXPECT_EQ(s.k, 2);
  EXPECT_EQ(s.bprime, 1);
  EXPECT_EQ(s.j, (std::vector<std::int64_t>{1, 2, 3}));
  EXPECT_EQ(s.l(), 2);
}

TEST(StabSchedule, ShortAndValid) {
  const Scalar half(Integer(1), Integer(2));
  for (std::int64_t b : {4, 8, 16})
    for (std::int64_t r = 1; r <= (1 << 16); r = r < 64 ? r + 1 : r * 2 - 1) {
      StabSchedule s = stab_schedule(r, b, half);
      ASSERT_LE(s.l(), 6) << r << ' ' << b;
      std::int64_t t = s.bprime;
      for (std::int64_t i = 1; i < s.j.back(); ++i) t *= b;
      ASSERT_LE(t, r) << r << ' ' << b;
      ASSERT_LT(r, b * t) << r << ' ' << b;
      for (std::size_t i = 1; i < s.j.size(); ++i) ASSERT_GE(s.j[i], s.j[i - 1]);
      // only the last entry meets the stopping rule
      for (std::size_t i = 0; i + 1 < s.j.size(); ++i) {
        std::int64_t ti = s.bprime;
        for (std::int64_t e = 1; e < s.j[i]; ++e) ti *= b;
        ASSERT_GE(r, b * ti);
      }
    }
}

TEST(StabSchedule, RejectsBadEps) {
  EXPECT_THROW(stab_schedule(16, 4, Scalar(0)), InputError);
  EXPECT_THROW(stab_schedule(16, 4, Scalar(1)), InputError);
}

TEST(Stabbing, SingleTriangle) {
  StabbingIndex idx({Triangle{Point(0, 0), Point(4, 0), Point(0, 4)}}, {});
  EXPECT_EQ(idx.count(Point(1, 1)), 1);
  EXPECT_EQ(idx.count(Point(2, 2)), 1);  // on the hypotenuse
  EXPECT_EQ(idx.count(Point(3, 3)), 0);
  EXPECT_EQ(idx.report(Point(0, 0)), (std::vector<std::int64_t>{0}));
}

TEST(Stabbing, IdenticalTriangles) {
  std::vector<Triangle> S(40, Triangle{Point(0, 0), Point(10, 1), Point(3, 9)});
  StabbingConfig cfg;
  cfg.t_leaf = 4;
  StabbingIndex idx(S, cfg);
  EXPECT_EQ(idx.count(Point(4, 4)), 40);
  EXPECT_EQ(idx.count(Point(10, 1)), 40);
  EXPECT_EQ(idx.count(Point(-1, 4)), 0);
  EXPECT_EQ(idx.report(Point(4, 4)).size(), 40u);
}

TEST(Stabbing, RandomMatchesOracle) {
  std::mt19937_64 rng(31);
  for (int n : {16, 64, 128}) {
    auto S = random_triangles(rng, n, 40, 16);
    StabbingConfig cfg;
    cfg.t_leaf = 4;
    StabbingIndex idx(S, cfg);
    for (int q = 0; q < 400; ++q) {
      Point p = rnd(rng, -4, 56);  // integer grid: many points on triangle edges and corners
      auto want = oracle_ids(S, p);
      ASSERT_EQ(idx.count(p), std::int64_t(want.size())) << n << ' ' << q;
      ASSERT_EQ(idx.report(p), want);
    }
    EXPECT_LE(idx.space().max_l, 6);
  }
}

TEST(Stabbing, VerticesAreStabbed) {
  std::mt19937_64 rng(32);
  auto S = random_triangles(rng, 60, 30, 12);
  StabbingIndex idx(S, {});
  for (const Triangle& t : S)
    for (const Point& v : t) ASSERT_EQ(idx.report(v), oracle_ids(S, v));
}

TEST(Stabbing, OutsideBoundingBox) {
  std::mt19937_64 rng(33);
  auto S = random_triangles(rng, 50, 30, 10);
  StabbingIndex idx(S, {});
  EXPECT_EQ(idx.count(Point(-100, -100)), 0);
  EXPECT_TRUE(idx.report(Point(500, 3)).empty());
}

TEST(Stabbing, ExplicitRAndSpace) {
  std::mt19937_64 rng(34);
  auto S = random_triangles(rng, 96, 50, 14);
  StabbingConfig cfg;
  cfg.r = 16;
  cfg.t_leaf = 4;
  StabbingIndex idx(S, cfg);
  EXPECT_EQ(idx.top_schedule().j.back() <= idx.top_schedule().k + 1, true);
  EXPECT_GT(idx.space().trees, 0);
  for (int q = 0; q < 200; ++q) {
    Point p = rnd(rng, -2, 66);
    ASSERT_EQ(idx.count(p), std::int64_t(oracle_ids(S, p).size()));
  }
}

TEST(Stabbing, Errors) {
  EXPECT_THROW(StabbingIndex({Triangle{Point(0, 0), Point(1, 1), Point(2, 2)}}, {}), InputError);
  try {
    StabbingIndex({Triangle{Point(0, 0), Point(1, 0), Point(0, 1)}, Triangle{Point(0, 0), Point(1, 1), Point(3, 3)}}, {});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("triangle 1"), std::string::npos);
  }
  StabbingConfig cfg;
  cfg.reporting = false;
  StabbingIndex idx({Triangle{Point(0, 0), Point(1, 0), Point(0, 1)}}, cfg);
  EXPECT_THROW(idx.report(Point(0, 0)), Error);
}

TEST(Stabbing, Deterministic) {
  std::mt19937_64 a(35), b(35);
  StabbingIndex x(random_triangles(a, 50, 30, 10), {}), y(random_triangles(b, 50, 30, 10), {});
  EXPECT_EQ(fnv1a64(x.serialize()), fnv1a64(y.serialize()));
}
