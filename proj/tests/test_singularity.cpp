#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csf/diagnostics.hpp"
#include "csf/flow.hpp"
#include "csf/generators.hpp"
#include "csf/singularity.hpp"

using namespace csf;

namespace {

constexpr double pi = std::numbers::pi;

Trajectory circle_run(Index n, const PlanePoint& center, double kappa_stop) {
  StepControl c;
  c.kappa_stop = kappa_stop;
  RecordPolicy p;
  p.record_stride = 10;
  p.snapshot_stride = 200;
  return evolve(regular_polygon(n, 1.0, center), c, p);
}

// Kasa fit through the 3x3 normal equations, solved by Cramer's rule
RoundnessReport kasa_by_cramer(const Points& p) {
  double M[3][3] = {}, rhs[3] = {};
  for (Index i = 0; i < p.cols(); ++i) {
    const double x = p(0, i), y = p(1, i), row[3] = {x, y, 1.0}, z = x * x + y * y;
    for (int a = 0; a < 3; ++a) {
      rhs[a] += row[a] * z;
      for (int b = 0; b < 3; ++b) M[a][b] += row[a] * row[b];
    }
  }
  auto det = [](double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det(M);
  double sol[3];
  for (int k = 0; k < 3; ++k) {
    double C[3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) C[a][b] = b == k ? rhs[a] : M[a][b];
    sol[k] = det(C) / d;
  }
  RoundnessReport r;
  r.fit_center = PlanePoint(sol[0] / 2.0, sol[1] / 2.0);
  r.fit_radius = std::sqrt(sol[2] + r.fit_center.squaredNorm());
  for (Index i = 0; i < p.cols(); ++i)
    r.max_radial_deviation = std::max(r.max_radial_deviation, std::abs((p.col(i) - r.fit_center).norm() - r.fit_radius));
  r.deviation_ratio = r.max_radial_deviation / r.fit_radius;
  return r;
}

}  // namespace

TEST_CASE("roundness of circles and of the ellipse") {
  const RoundnessReport c = roundness(regular_polygon(300, std::sqrt(2.0), {1.0, 2.0}));
  CHECK(std::abs(c.fit_radius - std::sqrt(2.0)) < 1e-6);
  CHECK((c.fit_center - PlanePoint(1.0, 2.0)).norm() < 1e-12);
  CHECK(c.deviation_ratio < 1e-6);

  const DiscreteCurve e = ellipse_uniform_arclength(2.0, 1.0, 512);
  const RoundnessReport fit = roundness(e);
  const RoundnessReport oracle = kasa_by_cramer(e.vertices());
  CHECK(std::abs(fit.fit_radius - oracle.fit_radius) < 1e-10);
  CHECK(std::abs(fit.deviation_ratio - oracle.deviation_ratio) < 1e-10);
  CHECK(fit.deviation_ratio > 0.2);

  Points line(2, 10);
  for (Index i = 0; i < 10; ++i) line.col(i) = PlanePoint(i, 2.0 * i);
  CHECK_THROWS_AS(roundness(line), Error);
}

TEST_CASE("type I rate on the circle is one half") {
  StepControl c;
  c.t_max = 0.49;
  RecordPolicy p;
  p.record_stride = 50;
  const Trajectory tr = evolve(regular_polygon(512), c, p);
  const Type1Rate rate = type1_rate(tr, 0.5);
  CHECK(std::abs(rate.sup - 0.5) < 1e-3);
  for (double v : rate.series) CHECK(std::abs(v - 0.5) < 1e-3);
  CHECK_THROWS_AS(type1_rate(tr, 0.3), Error);

  // scale invariance: t -> lambda^2 t, kappa -> kappa / lambda
  Trajectory big = tr;
  for (DiagnosticRecord& r : big.records) {
    r.t *= 9.0;
    r.kappa_max /= 3.0;
    r.kappa_min /= 3.0;
  }
  const Type1Rate scaled_rate = type1_rate(big, 4.5);
  for (std::size_t k = 0; k < rate.series.size(); ++k) CHECK(std::abs(scaled_rate.series[k] - rate.series[k]) < 1e-9);
}

TEST_CASE("type I rate on the ellipse run is bounded") {
  StepControl c;
  c.kappa_stop = 100;
  RecordPolicy p;
  p.record_stride = 50;
  const DiscreteCurve e = ellipse_uniform_arclength(2.0, 1.0, 256);
  const Trajectory tr = evolve(e, c, p);
  const double T = std::max(extinction_time_estimate(e), tr.records.back().t + 1e-9);
  const Type1Rate rate = type1_rate(tr, T);
  CHECK(rate.sup < 5.0);
  CHECK(rate.sup > 0.4);
}

TEST_CASE("blowup point") {
  // the max-|kappa| vertex sits on the final circle of radius about 1 / kappa_stop
  const Trajectory tr = circle_run(128, {3.0, -2.0}, 1e3);
  CHECK((detect_blowup_point(tr) - PlanePoint(3.0, -2.0)).norm() < 1e-2);

  StepControl c;
  c.kappa_stop = 1e3;
  RecordPolicy p;
  p.record_stride = 10;
  const Trajectory e = evolve(ellipse_uniform_arclength(2.0, 1.0, 128), c, p);
  const PlanePoint at_origin = detect_blowup_point(e);
  CHECK(at_origin.norm() < 1e-2);
  const Trajectory moved = evolve(ellipse_uniform_arclength(2.0, 1.0, 128, {3.0, -2.0}), c, p);
  CHECK((detect_blowup_point(moved) - (at_origin + PlanePoint(3.0, -2.0))).norm() < 1e-12);

  StepControl short_run;
  short_run.t_max = 0.01;
  CHECK_THROWS_AS(detect_blowup_point(evolve(regular_polygon(64), short_run, p)), Error);
}

TEST_CASE("parabolic rescaling of the circle run") {
  const Trajectory tr = circle_run(512, PlanePoint::Zero(), 20.0);
  for (double lambda : {2.0, 4.0, 8.0}) {
    const RescaledSlice s = parabolic_rescale(tr, {PlanePoint::Zero(), 0.5, lambda}, -1.0);
    CHECK(s.t_original == doctest::Approx(0.5 - 1.0 / (lambda * lambda)).epsilon(1e-14));
    CHECK(((s.curve.vertices().colwise().norm().array()) - std::sqrt(2.0)).abs().maxCoeff() < 1e-3);
    CHECK(roundness(s.curve).deviation_ratio < 1e-3);

    // curvature scales by 1 / lambda
    const InterpolatedCurve orig = curve_at_time(tr, s.t_original);
    const double k_orig = geometry_fields(orig.curve).kappa.maxCoeff();
    CHECK(geometry_fields(s.curve).kappa.maxCoeff() == doctest::Approx(k_orig / lambda).epsilon(1e-10));

    // huisken functional with the matched spacetime centre
    const double a = huisken_functional(orig.curve, {PlanePoint::Zero(), 0.5}, s.t_original);
    const double b = huisken_functional(s.curve, {PlanePoint::Zero(), 0.0}, -1.0);
    CHECK(std::abs(a - b) < 1e-6);
  }
  // lambda = 1, x0 = 0: a pure time shift
  const RescaledSlice id = parabolic_rescale(tr, {PlanePoint::Zero(), 0.3, 1.0}, -0.1);
  CHECK(id.t_original == doctest::Approx(0.2).epsilon(1e-15));
  CHECK((id.curve.vertices() - curve_at_time(tr, id.t_original).curve.vertices()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(parabolic_rescale(tr, {PlanePoint::Zero(), 0.5, 1.0}, -1.0), Error);
  CHECK_THROWS_AS(parabolic_rescale(tr, {PlanePoint::Zero(), 0.5, 2.0}, 0.5), Error);
}

TEST_CASE("rescaling composes") {
  const DiscreteCurve c = random_blob(8, 200);
  const PlanePoint x0(0.3, -0.1);
  const DiscreteCurve twice = rescale_curve(rescale_curve(c, x0, 2.5), PlanePoint::Zero(), 1.7);
  const DiscreteCurve once = rescale_curve(c, x0, 2.5 * 1.7);
  CHECK((twice.vertices() - once.vertices()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("type II point selection on the circle") {
  const Trajectory tr = circle_run(128, PlanePoint::Zero(), 20.0);
  const double T = extinction_time_from_stop(tr);
  double prev_t1 = 0.0;
  for (int k : {3, 5, 10, 20}) {
    const Type2Selection s = type2_point_selection(tr, T, k);
    // independent scan of the record table
    const double Tk = T - 1.0 / k;
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t r = 0; r < tr.records.size(); ++r) {
      if (tr.records[r].t > Tk) break;
      const double v = tr.records[r].abs_kappa_max() * tr.records[r].abs_kappa_max() * (Tk - tr.records[r].t);
      if (v > best) best = v, arg = r;
    }
    CHECK(s.record == arg);
    CHECK(s.t_k == tr.records[arg].t);
    CHECK(std::abs(s.lambda_k - tr.records[arg].abs_kappa_max()) < 1e-12);
    CHECK(s.t_k1 == doctest::Approx(best).epsilon(1e-12));
    // on the circle kappa^2 (T_k - t) = (T_k - t) / (2 (T - t)) falls with t, so the first record wins
    CHECK(arg == 0);
    CHECK(s.t_k1 < 1.0);
    prev_t1 = std::max(prev_t1, s.t_k1);
  }
  CHECK(prev_t1 < 1.0);
  const Trajectory again = circle_run(128, PlanePoint::Zero(), 20.0);
  const Type2Selection a = type2_point_selection(tr, T, 7), b = type2_point_selection(again, T, 7);
  CHECK(a.record == b.record);
  CHECK(a.vertex == b.vertex);
  CHECK(a.t_k1 == b.t_k1);
  CHECK_THROWS_AS(type2_point_selection(tr, T, 1), Error);
}
