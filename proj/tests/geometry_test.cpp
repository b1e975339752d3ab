#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "octograv/geometry.hpp"
#include "octograv/scenarios.hpp"
#include "octograv/tables.hpp"
#include "test_support.hpp"

namespace {

using namespace octograv;
using octograv::testing::christoffel_oracle;
using octograv::testing::constant_frame;
using octograv::testing::metric_oracle;
using octograv::testing::wavy_frame;

constexpr std::size_t T = 0, X = 1;

double curvature_norm(const GeometryAtPoint<4>& geo) { return max_abs<double>(geo.riemann.flat()); }

template <std::size_t Dim>
Point<Dim> sample_point(double base) {
  Point<Dim> x{};
  for (std::size_t k = 0; k < Dim; ++k) x[k] = base * std::cos(1.3 * double(k) + 0.4);
  return x;
}

TEST(Metric, IdentityFrameGivesMinkowski) {
  const auto m = metric_at(flat_frame<4>(), Point<4>{});
  EXPECT_EQ(m.metric, minkowski<4>());
  EXPECT_EQ(m.frame_determinant, 1.0);
  EXPECT_EQ(m.sqrt_minus_g, 1.0);
}

TEST(Metric, DiagonalFrame) {
  Matrix<4> e = Matrix<4>::Zero();
  e.diagonal() << 2.0, 3.0, 3.0, 3.0;
  const auto m = metric_from_frame<4>(e);
  Matrix<4> expected = Matrix<4>::Zero();
  expected.diagonal() << -4.0, 9.0, 9.0, 9.0;
  EXPECT_EQ(m.metric, expected);
}

TEST(Metric, SchwarzschildTimeComponent) {
  const double mass = 1.5;
  const auto m = metric_at(schwarzschild_frame(mass),
                           Point<4>{0.0, 4.0 * mass, std::numbers::pi / 2, 0.0});
  EXPECT_NEAR(m.metric(T, T), -0.5, 1e-15);
}

TEST(Metric, DegenerateFramesAreRejected) {
  EXPECT_THROW(metric_from_frame<4>(Matrix<4>::Zero()), DegenerateFrame);
  Matrix<4> nan = Matrix<4>::Identity();
  nan(2, 2) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(metric_from_frame<4>(nan), DegenerateFrame);
  Matrix<4> tiny = Matrix<4>::Identity() * 1e-4;  // det 1e-16
  EXPECT_THROW(metric_from_frame<4>(tiny), DegenerateFrame);
  EXPECT_THROW(geometry_at(schwarzschild_frame(1.0), Point<4>{0.0, 1.0, 1.0, 0.0}),
               DegenerateFrame);
}

TEST(Metric, NonpositiveDeterminantIsSignatureError) {
  MetricAtPoint<4> bad;
  bad.sqrt_minus_g = 0.0;
  EXPECT_THROW(levi_civita_density_at(bad), SignatureError);
}

TEST(Connection, FlatFrameIsZero) {
  const auto geo = geometry_at(flat_frame<4>(), Point<4>{0.3, -0.2, 0.1, 0.5});
  EXPECT_EQ(max_abs<double>(geo.christoffel.flat()), 0.0);
  EXPECT_EQ(max_abs<double>(geo.spin_connection.flat()), 0.0);
  EXPECT_EQ(max_abs<double>(geo.curvature.flat()), 0.0);
  EXPECT_EQ(max_abs<double>(geo.riemann.flat()), 0.0);
}

TEST(Connection, DeSitterOracles) {
  for (double h : {0.1, 0.7}) {
    for (double t : {-0.8, 0.0, 0.6}) {
      const Point<4> x{t, 0.2, -0.4, 0.9};
      const auto geo = geometry_at(de_sitter_frame(h), x);
      EXPECT_NEAR(geo.christoffel(T, X, X), h * std::exp(2 * h * t), 1e-14);
      EXPECT_NEAR(geo.christoffel(X, T, X), h, 1e-14);
      EXPECT_NEAR(geo.spin_connection(X, 0, 1), h * std::exp(h * t), 1e-14);
      EXPECT_NEAR(geo.spin_connection(X, 1, 0), -h * std::exp(h * t), 1e-14);
      EXPECT_NEAR(ricci_scalar(geo), 12 * h * h, 1e-13);
      EXPECT_NEAR(ricci_scalar_from_christoffel(geo), 12 * h * h, 1e-13);
    }
  }
}

TEST(Connection, SchwarzschildOracles) {
  const double mass = 1.0;
  for (double r : {3.0, 5.5, 17.0}) {
    const Point<4> x{2.0, r, 1.1, 0.3};
    const auto geo = geometry_at(schwarzschild_frame(mass), x);
    EXPECT_NEAR(geo.christoffel(X, T, T), mass / (r * r) * (1 - 2 * mass / r), 1e-14);
    EXPECT_NEAR(ricci_scalar(geo), 0.0, 1e-14);
    EXPECT_NEAR(ricci_scalar_from_christoffel(geo), 0.0, 1e-14);
    EXPECT_GT(curvature_norm(geo), 1e-4);  // curved, but Ricci-flat
  }
}

TEST(Connection, ChristoffelMatchesMetricDifferences) {
  const auto frame = wavy_frame<4>(0.2);
  const auto x = sample_point<4>(0.8);
  const auto geo = geometry_at(frame, x);
  const auto oracle = christoffel_oracle<4>(frame.value, x);
  for (std::size_t l = 0; l < 4; ++l)
    for (std::size_t m = 0; m < 4; ++m)
      for (std::size_t n = 0; n < 4; ++n) EXPECT_NEAR(geo.christoffel(l, m, n), oracle[l][m][n], 1e-8);
}

TEST(Connection, MetricCompatibility) {
  const auto frame = wavy_frame<4>(0.2);
  const auto x = sample_point<4>(0.5);
  const auto geo = geometry_at(frame, x);
  const double h = 1e-5;
  for (std::size_t l = 0; l < 4; ++l) {
    auto p = x, q = x;
    p[l] += h;
    q[l] -= h;
    const Matrix<4> dg = (metric_oracle<4>(frame.value(p)) - metric_oracle<4>(frame.value(q))) / (2 * h);
    for (std::size_t m = 0; m < 4; ++m)
      for (std::size_t n = 0; n < 4; ++n) {
        double cov = dg(m, n);
        for (std::size_t r = 0; r < 4; ++r)
          cov -= geo.christoffel(r, l, m) * geo.metric(r, n) + geo.christoffel(r, l, n) * geo.metric(m, r);
        EXPECT_NEAR(cov, 0.0, 1e-9);
      }
  }
}

TEST(Connection, SpinConnectionIsAntisymmetric) {
  for (const auto& x : {sample_point<4>(0.3), sample_point<4>(-0.9)}) {
    EXPECT_LT(spin_antisymmetry_residual(geometry_at(wavy_frame<4>(0.25), x)), 1e-10);
  }
  ScenarioSpec spec{.name = "random-smooth-8d"};
  EXPECT_LT(spin_antisymmetry_residual(geometry_at(make_frame8(spec), sample_point<8>(0.3))), 1e-10);
}

TEST(Curvature, SpinRouteEqualsChristoffelRoute) {
  const auto geo = geometry_at(wavy_frame<4>(0.2), sample_point<4>(0.7));
  const auto spin = coordinate_curvature(geo);
  const double scale = curvature_norm(geo);
  ASSERT_GT(scale, 1e-3);
  for (std::size_t k = 0; k < spin.extent; ++k)
    EXPECT_NEAR(spin.flat()[k], geo.riemann.flat()[k], 1e-12 * scale);
}

TEST(Curvature, PairSymmetryAndBianchi) {
  const auto geo4 = geometry_at(wavy_frame<4>(0.2), sample_point<4>(0.7));
  const auto low4 = lowered_curvature(geo4);
  const double s4 = max_abs<double>(low4.flat());
  EXPECT_LT(pair_symmetry_residual(low4), 1e-12 * s4);
  EXPECT_LT(first_bianchi_residual(low4), 1e-12 * s4);

  const auto geo8 = geometry_at(wavy_frame<8>(0.1), sample_point<8>(0.4));
  const auto low8 = lowered_curvature(geo8);
  const double s8 = max_abs<double>(low8.flat());
  EXPECT_LT(pair_symmetry_residual(low8), 1e-12 * s8);
  EXPECT_LT(first_bianchi_residual(low8), 1e-12 * s8);
}

TEST(FiniteDifference, AgreesWithAnalytic) {
  const auto analytic = wavy_frame<4>(0.2);
  const auto fd = with_finite_differences(analytic);
  EXPECT_EQ(fd.provider(), ProviderKind::finite_difference);
  const auto x = sample_point<4>(0.6);
  const auto a = geometry_at(analytic, x);
  const auto f = geometry_at(fd, x);
  for (std::size_t k = 0; k < a.spin_connection.extent; ++k)
    EXPECT_NEAR(f.spin_connection.flat()[k], a.spin_connection.flat()[k], 1e-8);
  for (std::size_t k = 0; k < a.riemann.extent; ++k)
    EXPECT_NEAR(f.riemann.flat()[k], a.riemann.flat()[k], 1e-5);
}

TEST(FiniteDifference, SecondOrderConvergenceOfSpinConnection) {
  const auto analytic = wavy_frame<4>(0.3);
  const auto x = sample_point<4>(0.6);
  const auto exact = geometry_at(analytic, x).spin_connection;
  auto error = [&](double h) {
    const auto g = geometry_at(with_finite_differences(analytic, {h, h}), x);
    double e = 0.0;
    for (std::size_t k = 0; k < exact.extent; ++k)
      e = std::max(e, std::abs(g.spin_connection.flat()[k] - exact.flat()[k]));
    return e;
  };
  const double ratio = error(2e-3) / error(1e-3);
  EXPECT_GT(ratio, 3.5);
  EXPECT_LT(ratio, 4.5);
}

TEST(FiniteDifference, RejectsNonpositiveSteps) {
  EXPECT_THROW(with_finite_differences(flat_frame<4>(), {0.0, 1e-4}), UsageError);
  EXPECT_THROW(with_finite_differences(flat_frame<4>(), {1e-5, -1.0}), UsageError);
}

TEST(LeviCivita, FlatValues) {
  const auto lc = levi_civita_density_at(metric_at(flat_frame<4>(), Point<4>{}));
  EXPECT_EQ(lc.lower(0, 1, 2, 3), 1.0);
  EXPECT_EQ(lc.upper(0, 1, 2, 3), -1.0);
  EXPECT_EQ(lc.lower(1, 0, 2, 3), -1.0);
}

TEST(LeviCivita, ScalesAsFourthPower) {
  for (double lambda : {0.5, 2.0, 3.0}) {
    const auto m = metric_from_frame<4>(Matrix<4>(Matrix<4>::Identity() * lambda));
    const auto lc = levi_civita_density_at(m);
    EXPECT_NEAR(lc.lower(0, 1, 2, 3), std::pow(lambda, 4), 1e-12);
    EXPECT_NEAR(lc.upper(0, 1, 2, 3), -std::pow(lambda, -4), 1e-12);
  }
}

TEST(LeviCivita, KroneckerIdentityOnCurvedMetric) {
  const auto lc = levi_civita_density_at(metric_at(wavy_frame<4>(0.3), sample_point<4>(0.5)));
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < 4; ++n)
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t s = 0; s < 4; ++s) {
          double sum = 0.0;
          for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) sum += lc.upper(a, b, m, n) * lc.lower(a, b, r, s);
          const double delta = double(m == r && n == s) - double(m == s && n == r);
          EXPECT_NEAR(-0.5 * sum, delta, 1e-12);
        }
}

TEST(LeviCivita, FramePullbackMatchesDensity) {
  const auto eps = epsilon4_from_cross();
  const auto m = metric_at(wavy_frame<4>(0.3), sample_point<4>(0.5));
  ASSERT_GT(m.frame_determinant, 0.0);
  const auto dens = levi_civita_density_at(m);
  const auto pull = levi_civita_from_frame(m, eps);
  for (std::size_t k = 0; k < dens.lower.extent; ++k) {
    EXPECT_NEAR(pull.lower.flat()[k], dens.lower.flat()[k], 1e-12);
    EXPECT_NEAR(pull.upper.flat()[k], dens.upper.flat()[k], 1e-12);
  }
  // parity flip: pullback follows det e, the density follows sqrt(-g)
  Matrix<4> flipped = m.frame;
  flipped.row(1) *= -1.0;
  const auto mf = metric_from_frame<4>(flipped);
  const auto pf = levi_civita_from_frame(mf, eps);
  EXPECT_NEAR(pf.lower(0, 1, 2, 3), -dens.lower(0, 1, 2, 3), 1e-12);
}

TEST(ChiPullback, IdentityAchtbein) {
  const auto chi = build_chi(Chirality::left);
  const auto c = chi_coordinate_at(flat_frame<8>(), Point<8>{}, chi);
  EXPECT_EQ(c.lower, chi.values);
  EXPECT_EQ(c.upper, raise_frame_indices(chi.values));
}

TEST(ChiPullback, ChiralitiesStayConjugate) {
  ScenarioSpec spec{.name = "random-smooth-8d"};
  const auto frame = make_frame8(spec);
  const auto x = sample_point<8>(0.4);
  const auto l = chi_coordinate_at(frame, x, build_chi(Chirality::left));
  const auto r = chi_coordinate_at(frame, x, build_chi(Chirality::right));
  for (std::size_t k = 0; k < l.lower.extent; ++k) {
    EXPECT_LT(std::abs(l.lower.flat()[k] - std::conj(r.lower.flat()[k])), 1e-12);
    EXPECT_LT(std::abs(l.upper.flat()[k] - std::conj(r.upper.flat()[k])), 1e-12);
  }
}

TEST(ChiPullback, DiagonalAchtbeinIsMultilinear) {
  Matrix<8> e = Matrix<8>::Zero();
  for (std::size_t a = 0; a < 8; ++a) e(a, a) = 0.5 + 0.25 * double(a);
  const auto chi = build_chi(Chirality::right);
  const auto c = chi_coordinate_at(constant_frame<8>(e), Point<8>{}, chi);
  const double scale = e(0, 0) * e(1, 1) * e(2, 2) * e(3, 3);
  EXPECT_NEAR(std::abs(c.lower(0, 1, 2, 3) - scale * chi(0, 1, 2, 3)), 0.0, 1e-14);
  const double scale2 = e(1, 1) * e(2, 2) * e(4, 4) * e(7, 7);
  EXPECT_NEAR(std::abs(c.lower(1, 2, 4, 7) - scale2 * chi(1, 2, 4, 7)), 0.0, 1e-14);
}

}  // namespace
