#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace hilbert;
using namespace hilbert::testing;

namespace {

constexpr double kHalfLn3 = 0.5493061443340549;  // 0.5 * ln 3

std::vector<ProjectiveMap> fixed_projective_maps() {
  Matrix a(3, 3), b(3, 3), c(3, 3);
  a << 1.0, 0.2, 0.1, 0.0, 1.0, -0.3, 0.1, 0.05, 1.0;
  b << 2.0, 0.0, 0.0, 0.0, 0.5, 0.0, -0.2, 0.3, 1.5;
  c << 0.8, -0.6, 0.5, 0.6, 0.8, 0.0, 0.25, 0.0, 1.0;
  return {ProjectiveMap(a), ProjectiveMap(b), ProjectiveMap(c)};
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an exception";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(CrossRatio, HandEvaluations) {
  EXPECT_DOUBLE_EQ(cross_ratio(vec({-1}), vec({0}), vec({0.5}), vec({1})), 3.0);
  EXPECT_DOUBLE_EQ(cross_ratio(vec({-1}), vec({-0.5}), vec({0.5}), vec({1})), 9.0);
  // Same configuration embedded on a diagonal line of the plane.
  const Vector dir = vec({0.6, 0.8});
  EXPECT_NEAR(cross_ratio(-1.0 * dir, 0.0 * dir, 0.5 * dir, 1.0 * dir), 3.0, 1e-14);
}

TEST(CrossRatio, RejectsBadInput) {
  EXPECT_EQ(code_of([] { cross_ratio(vec({-1}), vec({0}), vec({0}), vec({1})); }), ErrorCode::BadOrdering);
  EXPECT_EQ(code_of([] { cross_ratio(vec({-1}), vec({0.5}), vec({0}), vec({1})); }), ErrorCode::BadOrdering);
  EXPECT_EQ(code_of([] { cross_ratio(vec({0, 0}), vec({1, 0.1}), vec({2, 0}), vec({3, 0})); }),
            ErrorCode::NotCollinear);
}

TEST(Distance, Examples) {
  const HilbertStructure seg(interval()), sq(square());
  EXPECT_EQ(seg.distance(vec({0.3}), vec({0.3})), 0.0);
  EXPECT_NEAR(seg.distance(vec({0}), vec({0.5})), kHalfLn3, 1e-12);
  EXPECT_NEAR(sq.distance(vec({0.5, 0.5}), vec({0.75, 0.5})), kHalfLn3, 1e-12);
  // Agrees with the literal cross-ratio formula.
  EXPECT_NEAR(sq.distance(vec({0.5, 0.5}), vec({0.75, 0.5})),
              0.5 * std::log(cross_ratio(vec({0, 0.5}), vec({0.5, 0.5}), vec({0.75, 0.5}), vec({1, 0.5}))), 1e-15);
}

TEST(Distance, RejectsBoundaryPoints) {
  const HilbertStructure sq(square());
  EXPECT_EQ(code_of([&] { sq.distance(vec({0.0, 0.5}), vec({0.5, 0.5})); }), ErrorCode::PointNotInterior);
  EXPECT_EQ(code_of([&] { sq.distance(vec({0.5, 0.5}), vec({0.5, 1.0 - 1e-8})); }), ErrorCode::PointNotInterior);
}

TEST(Finsler, Examples) {
  const HilbertStructure seg(interval()), sq(square());
  EXPECT_DOUBLE_EQ(seg.finsler_norm(vec({0}), vec({1})), 1.0);
  EXPECT_DOUBLE_EQ(sq.finsler_norm(vec({0.5, 0.5}), vec({1, 0})), 2.0);
  EXPECT_EQ(sq.finsler_norm(vec({0.3, 0.7}), vec({0, 0})), 0.0);
}

TEST(Projective, Examples) {
  const Vector x = vec({0.3, -1.2, 2.5});
  EXPECT_TRUE(apply_projective(ProjectiveMap(Matrix::Identity(4, 4)), x).isApprox(x));

  Matrix t = Matrix::Identity(4, 4);
  t.col(3).head(3) = vec({1, 2, 3});
  EXPECT_TRUE(apply_projective(ProjectiveMap(t), x).isApprox(x + vec({1, 2, 3})));

  Matrix s = Matrix::Identity(4, 4) * 2.0;
  s(3, 3) = 1.0;
  EXPECT_TRUE(apply_projective(ProjectiveMap(s), x).isApprox(2.0 * x));

  Matrix inf = Matrix::Identity(3, 3);
  inf(2, 0) = -1.0;  // w = 1 - x
  EXPECT_EQ(code_of([&] { apply_projective(ProjectiveMap(inf), vec({1.0, 0.0})); }), ErrorCode::PointAtInfinity);
}

TEST(MetricAxioms, SampledTriples) {
  for (const auto& [name, p] : test_polytopes()) {
    SCOPED_TRACE(name);
    const HilbertStructure h(p);
    const auto pts = sample_interior(p, SampleConfig{5, 3000, 1e-3, {}});
    for (std::size_t i = 0; i + 2 < pts.size(); i += 3) {
      const Vector &a = pts[i], &b = pts[i + 1], &c = pts[i + 2];
      const double ab = h.distance(a, b), bc = h.distance(b, c), ac = h.distance(a, c);
      EXPECT_EQ(ab, h.distance(b, a));
      EXPECT_GE(ab + bc - ac, -1e-9);
      EXPECT_GT(ab, 0.0);
    }
    const Vector& a = pts.front();
    EXPECT_EQ(h.distance(a, a + Vector::Constant(p.dimension(), 1e-10)), 0.0);
    EXPECT_GT(h.distance(a, a + Vector::Constant(p.dimension(), 1e-8)), 0.0);
  }
}

TEST(Finsler, PositiveHomogeneity) {
  std::mt19937_64 rng(3);
  for (const auto& [name, p] : test_polytopes()) {
    const HilbertStructure h(p);
    const InteriorSampler sampler(p);
    for (int i = 0; i < 200; ++i) {
      const Vector x = sampler.uniform(rng, 1e-3);
      const Vector v = unit_direction(rng, p.dimension());
      const double base = h.finsler_norm(x, v);
      for (double lambda : {-3.7, -1.0, 0.01, 2.5, 1e3}) {
        EXPECT_NEAR(h.finsler_norm(x, lambda * v), std::abs(lambda) * base, 1e-12 * std::abs(lambda) * base)
            << name;
      }
    }
  }
}

TEST(Finsler, IsTheDerivativeOfDistance) {
  std::mt19937_64 rng(4);
  const double t = 1e-6;
  for (const auto& [name, p] : test_polytopes()) {
    const HilbertStructure h(p);
    const InteriorSampler sampler(p);
    for (int i = 0; i < 100; ++i) {
      const Vector x = sampler.uniform(rng, 1e-2);
      const Vector v = unit_direction(rng, p.dimension());
      const double f = h.finsler_norm(x, v);
      EXPECT_LE(std::abs(h.distance(x, x + t * v) / t - f), 1e-4 * f) << name;
    }
  }
}

TEST(Projective, DistanceIsInvariant) {
  const Polytope pent = pentagon();
  const HilbertStructure h(pent);
  const auto pts = sample_interior(pent, SampleConfig{9, 400, 1e-3, {}});
  for (const auto& map : fixed_projective_maps()) {
    const Polytope image = apply_projective(map, pent);
    ASSERT_EQ(image.vertices().size(), 5u);
    const HilbertStructure hi(image);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
      const double d = h.distance(pts[i], pts[i + 1]);
      const double di = hi.distance(apply_projective(map, pts[i]), apply_projective(map, pts[i + 1]));
      EXPECT_NEAR(di, d, 1e-9);
    }
  }
}

TEST(Finsler, MonotoneUnderInclusion) {
  const HilbertStructure small(square());
  const HilbertStructure big(build_polytope(std::vector<Vector>{vec({-1, -1}), vec({2, -1.5}), vec({2.5, 2}),
                                                                vec({-0.5, 2})}));
  std::mt19937_64 rng(8);
  const InteriorSampler sampler(small.polytope());
  for (int i = 0; i < 500; ++i) {
    const Vector x = sampler.uniform(rng, 1e-4);
    const Vector v = unit_direction(rng, 2);
    EXPECT_LE(big.finsler_norm(x, v), small.finsler_norm(x, v));
  }
}
