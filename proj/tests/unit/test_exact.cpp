#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ptree/dataset.hpp"
#include "ptree/geometry.hpp"
#include "ptree/shear.hpp"

using namespace ptree;

namespace {

Integer random_integer(std::mt19937_64& rng) {
  int bits = int(rng() % 300);
  BigInt v = 0;
  for (int b = 0; b < bits; b += 32) v = (v << 32) + BigInt(std::uint32_t(rng()));
  if (bits) v >>= (((bits + 31) / 32) * 32 - bits);
  if (rng() & 1) v = -v;
  return Integer(v);
}

}  // namespace

TEST(Integer, MatchesBigArithmetic) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    Integer a = random_integer(rng), b = random_integer(rng);
    BigInt A = a.to_big(), B = b.to_big();
    EXPECT_EQ((a + b).to_big(), A + B);
    EXPECT_EQ((a - b).to_big(), A - B);
    EXPECT_EQ((a * b).to_big(), A * B);
    EXPECT_EQ(a < b, A < B);
    EXPECT_EQ(a == b, A == B);
    EXPECT_EQ(Integer(A * B) == a * b, true);
    if (!b.is_zero()) EXPECT_EQ(Integer::exact_div(a * b, b), a);
  }
}

TEST(Integer, PromotesAtTheBoundary) {
  Integer big = Integer::pow2(125);
  Integer sum = big + big;  // 2^126 leaves the inline range
  EXPECT_FALSE(sum.is_small());
  EXPECT_EQ(sum.to_big(), BigInt(1) << 126);
  Integer back = sum - big;
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, big);
  EXPECT_EQ(Integer::parse("-123456789012345678901234567890123456789012").str(),
            "-123456789012345678901234567890123456789012");
}

TEST(Integer, DotSignFastAndSlowAgree) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5000; ++i) {
    Integer v[6];
    for (auto& x : v) x = random_integer(rng);
    BigInt e = v[0].to_big() * v[3].to_big() + v[1].to_big() * v[4].to_big() +
               v[2].to_big() * v[5].to_big();
    EXPECT_EQ(sign_dot3(v[0], v[1], v[2], v[3], v[4], v[5]), e.sign());
  }
}

TEST(Scalar, ParseAndCanonicalForm) {
  EXPECT_EQ(Scalar::parse("6/-4").str(), "-3/2");
  EXPECT_EQ(Scalar::parse("0/5").str(), "0");
  EXPECT_EQ(Scalar::parse("10/5").str(), "2");
  EXPECT_LT(Scalar::parse("1/3"), Scalar::parse("1/2"));
  EXPECT_EQ(Scalar::parse("1/3") + Scalar::parse("1/6"), Scalar::parse("1/2"));
  EXPECT_THROW(Scalar::parse("1/0"), InputError);
  EXPECT_THROW(Scalar::parse("x"), InputError);
  EXPECT_EQ(Scalar::parse("-7/2").floor(), Integer(-4));
  EXPECT_EQ(Scalar::parse("-7/2").ceil(), Integer(-3));
}

TEST(Geometry, LineCanonicalForm) {
  Line l(Integer(-2), Integer(4), Integer(6));
  EXPECT_EQ(l.a(), Integer(1));
  EXPECT_EQ(l.b(), Integer(-2));
  EXPECT_EQ(l.c(), Integer(-3));
  Line m = Line::through(Point(0, 0), Point(2, 4));
  EXPECT_EQ(m, Line(Integer(2), Integer(-1), Integer(0)));
  EXPECT_EQ(side(m, Point(2, 4)), 0);
}

TEST(Geometry, DualityIsAnInvolutionAndPreservesAboveBelow) {
  std::mt19937_64 rng(3);
  auto rs = [&] { return Scalar(Integer((long long)(rng() % 41) - 20), Integer(1 + (long long)(rng() % 5))); };
  for (int i = 0; i < 2000; ++i) {
    Point p(rs(), rs());
    Line l = Line::from_slope(rs(), rs());
    EXPECT_EQ(dualize_line(dualize_point(p)), p);
    EXPECT_EQ(dualize_point(dualize_line(l)), l);
    EXPECT_EQ(above(l, p), above(dualize_point(p), dualize_line(l)));
  }
}

TEST(Geometry, IntersectionAndOrientation) {
  Line l = Line::through(Point(0, 0), Point(1, 1));
  Line m = Line::through(Point(0, 2), Point(2, 0));
  auto x = intersect(l, m);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, Point(1, 1));
  EXPECT_FALSE(intersect(l, Line::through(Point(0, 1), Point(1, 2))));
  EXPECT_EQ(orient(Point(0, 0), Point(1, 0), Point(0, 1)), 1);
  EXPECT_EQ(orient(Point(0, 0), Point(0, 1), Point(1, 0)), -1);
  EXPECT_EQ(orient(Point(0, 0), Point(1, 1), Point(3, 3)), 0);
}

TEST(Geometry, SegmentsAndRays) {
  Segment a(Point(0, 0), Point(4, 0)), b(Point(2, -1), Point(2, 3)), c(Point(5, 0), Point(6, 0));
  EXPECT_TRUE(segments_intersect(a, b));
  EXPECT_FALSE(segments_intersect(a, c));
  EXPECT_TRUE(segments_intersect(a, Segment(Point(4, 0), Point(9, 0))));
  Ray r(Point(-1, 0), Integer(3), Integer(0));
  auto h = ray_hit(r, a);
  ASSERT_TRUE(h);
  EXPECT_EQ(h->t, Scalar(Integer(1), Integer(1)));
  EXPECT_EQ(h->point, Point(0, 0));
  auto hb = ray_hit(Ray(Point(0, 1), Integer(2), Integer(-1)), b);
  ASSERT_TRUE(hb);
  EXPECT_EQ(hb->point, Point(2, 0));
  EXPECT_FALSE(ray_hit(Ray(Point(0, 1), Integer(-1), Integer(0)), b));
}

TEST(Geometry, SimplexCellPredicates) {
  SimplexCell c(Point(0, 0), Point(0, 4), Point(4, 0));  // clockwise input is reordered
  EXPECT_EQ(orient(c.corner(0), c.corner(1), c.corner(2)), 1);
  EXPECT_TRUE(c.contains(Point(2, 2)));
  EXPECT_FALSE(c.contains_strictly(Point(2, 2)));
  EXPECT_TRUE(c.contains_strictly(Point(1, 1)));
  EXPECT_FALSE(c.contains(Point(3, 3)));
  EXPECT_TRUE(c.crosses(Line::through(Point(0, 1), Point(1, 0))));
  EXPECT_FALSE(c.crosses(Line::through(Point(0, 4), Point(4, 0))));
  EXPECT_TRUE(c.meets(Line::through(Point(0, 4), Point(4, 0))));
  EXPECT_EQ(c.area(), Scalar(8));
  EXPECT_TRUE(c.meets(Segment(Point(-1, 1), Point(5, 1))));
  EXPECT_FALSE(c.meets(Segment(Point(3, 3), Point(5, 1))));
}

TEST(Shear, SeparatesSharedAbscissae) {
  std::vector<Point> pts{Point(0, 0), Point(0, 1), Point(1, 0), Point(1, 5)};
  ShearTransform t = ShearTransform::choose(pts);
  EXPECT_EQ(t.theta(), Scalar(Integer(1), Integer(2)));  // theta = 1 maps (0,1) and (1,0) together
  for (const Point& p : pts) EXPECT_EQ(t.invert(t.apply(p)), p);
  Line l = Line::through(Point(0, 0), Point(1, 5));
  for (const Point& p : pts) EXPECT_EQ(side(l, p), side(t.apply(l), t.apply(p)));
  // a vertical input line forces a nonzero theta
  ShearTransform u = ShearTransform::choose({Point(0, 0), Point(1, 0)},
                                            {Line(Integer(1), Integer(0), Integer(-3))});
  EXPECT_FALSE(u.identity());
}

TEST(Dataset, RoundTripIsBitExact) {
  std::string text =
      "# ptree-dataset v1\n"
      "P 1/3 -2\n"
      "P 7 8  # trailing comment\n"
      "S 0 0 3/2 1\n"
      "T 0 0 1 0 0 1\n";
  std::istringstream in(text);
  Dataset d = read_dataset(in);
  ASSERT_EQ(d.points.size(), 2u);
  EXPECT_EQ(d.points[0].x(), Scalar(Integer(1), Integer(3)));
  std::ostringstream out;
  write_dataset(out, d);
  std::istringstream in2(out.str());
  Dataset e = read_dataset(in2);
  std::ostringstream out2;
  write_dataset(out2, e);
  EXPECT_EQ(out.str(), out2.str());
  std::istringstream bad("P 1 2 3\n");
  EXPECT_THROW(read_dataset(bad), InputError);
  std::istringstream bad2("P 1/0 2\n");
  EXPECT_THROW(read_dataset(bad2), InputError);
}

TEST(Dataset, QueriesRoundTrip) {
  std::string text = "T 0 0 4 0 0 4\nH -1 0 2 1\nQ 1/2 1\nL 1 -1 0\nG 0 0 1 1\nR 0 0 2 4\n";
  std::istringstream in(text);
  auto qs = read_queries(in);
  ASSERT_EQ(qs.size(), 6u);
  EXPECT_EQ(qs[1].side, -1);  // canonical line is x - 2 = 0
  EXPECT_EQ(qs[5].ray.dx, Integer(1));
  std::ostringstream out;
  write_queries(out, qs);
  std::istringstream in2(out.str());
  auto qs2 = read_queries(in2);
  std::ostringstream out2;
  write_queries(out2, qs2);
  EXPECT_EQ(out.str(), out2.str());
}
