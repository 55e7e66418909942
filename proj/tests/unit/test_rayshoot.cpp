#include <gtest/gtest.h>

#include <random>

#include "ptree/oracle.hpp"
#include "ptree/rayshoot.hpp"

using namespace ptree;

namespace {

Point rnd(std::mt19937_64& rng, int lo, int hi) {
  return Point((long long)(lo + rng() % (hi - lo)), (long long)(lo + rng() % (hi - lo)));
}

// Rejection sampling of pairwise disjoint segments.
std::vector<Segment> disjoint_segments(std::mt19937_64& rng, int n, int range, int len) {
  std::vector<Segment> out;
  int tries = 0;
  while (int(out.size()) < n) {
    if (++tries > 200000) throw std::runtime_error("could not place segments");
    Point a = rnd(rng, 0, range);
    Point b(a.x() + Scalar((long long)(rng() % (2 * len)) - len), a.y() + Scalar((long long)(rng() % (2 * len)) - len));
    if (a == b) continue;
    Segment s(a, b, std::int64_t(out.size()));
    bool ok = true;
    for (const Segment& t : out) ok = ok && !segments_intersect(s, t);
    if (ok) out.push_back(s);
  }
  return out;
}

Ray random_ray(std::mt19937_64& rng, int lo, int hi) {
  for (;;) {
    long long dx = (long long)(rng() % 21) - 10, dy = (long long)(rng() % 21) - 10;
    if (dx == 0 && dy == 0) continue;
    return Ray(rnd(rng, lo, hi), Integer(dx), Integer(dy));
  }
}

void expect_same(const std::optional<ShotResult>& got, const std::optional<oracle::FirstHit>& want) {
  ASSERT_EQ(got.has_value(), want.has_value());
  if (!got) return;
  EXPECT_EQ(got->id, want->id);
  EXPECT_EQ(got->t, want->t);
  EXPECT_TRUE(got->point == want->point);
}

}  // namespace

TEST(RayShoot, SingleSegment) {
  std::vector<Segment> S{Segment(Point(2, -3), Point(2, 3), 0)};
  RayShootIndex idx(S, {});
  auto h = idx.shoot(Ray(Point(0, 1), Integer(1), Integer(0)));
  ASSERT_TRUE(h);
  EXPECT_EQ(h->id, 0);
  EXPECT_TRUE(h->point == Point(2, 1));
  EXPECT_EQ(h->t, Scalar(2));
  EXPECT_FALSE(idx.shoot(Ray(Point(0, 1), Integer(-1), Integer(0))));
  EXPECT_FALSE(idx.shoot(Ray(Point(0, 5), Integer(1), Integer(0))));
}

TEST(RayShoot, RejectsCrossingPair) {
  std::vector<Segment> S{Segment(Point(0, 0), Point(4, 4)), Segment(Point(5, 5), Point(6, 9)),
                         Segment(Point(0, 4), Point(4, 0))};
  try {
    RayShootIndex idx(S, {});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("segments 0 and 2"), std::string::npos);
  }
}

TEST(RayShoot, RandomMatchesOracle) {
  std::mt19937_64 rng(51);
  for (int n : {16, 64, 200}) {
    auto S = disjoint_segments(rng, n, 200, 12);
    StoreConfig cfg;
    cfg.r = n / 4;
    cfg.b = 4;
    RayShootIndex idx(S, cfg);
    for (auto& s : idx.store().audit()) ADD_FAILURE() << s;
    RayStats st;
    for (int q = 0; q < 400; ++q) {
      Ray r = random_ray(rng, -10, 210);
      ASSERT_NO_FATAL_FAILURE(expect_same(idx.shoot(r, &st), oracle::first_hit(S, r))) << n << ' ' << q;
    }
    EXPECT_EQ(st.unsound_candidates, 0);
  }
}

TEST(RayShoot, DegenerateRays) {
  std::mt19937_64 rng(52);
  auto S = disjoint_segments(rng, 80, 60, 8);
  RayShootIndex idx(S, {});
  for (const Segment& s : S) {
    // origin on the segment, through an endpoint, along the segment, vertical
    Ray on(s.p, Integer(1), Integer(2));
    expect_same(idx.shoot(on), oracle::first_hit(S, on));
    Ray through(Point(s.q.x() - Scalar(3), s.q.y() - Scalar(1)), Integer(3), Integer(1));
    expect_same(idx.shoot(through), oracle::first_hit(S, through));
    Ray along(Point(s.p.x() * Scalar(2) - s.q.x(), s.p.y() * Scalar(2) - s.q.y()),
              s.q.X() - s.p.X(), s.q.Y() - s.p.Y());
    expect_same(idx.shoot(along), oracle::first_hit(S, along));
    Ray up(Point(s.q.x(), Scalar(-5)), Integer(0), Integer(1));
    expect_same(idx.shoot(up), oracle::first_hit(S, up));
  }
}

TEST(RayShoot, Deterministic) {
  std::mt19937_64 a(53), b(53);
  RayShootIndex x(disjoint_segments(a, 60, 100, 10), {}), y(disjoint_segments(b, 60, 100, 10), {});
  EXPECT_EQ(fnv1a64(x.serialize()), fnv1a64(y.serialize()));
}
