#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csf/diagnostics.hpp"
#include "csf/exact.hpp"
#include "csf/flow.hpp"
#include "csf/generators.hpp"
#include "csf/singularity.hpp"

using namespace csf;

namespace {

constexpr double pi = std::numbers::pi;
const double shrinker_density = std::sqrt(2.0 * pi / std::exp(1.0));

// R for the 2:1 ellipse from 4096 parameter samples; arclength by composite Simpson on |gamma'|
double ellipse_distance_ratio_oracle(double a, double b) {
  const int m = 4096, sub = 16;
  std::vector<double> x(m), y(m), ell(m + 1, 0.0);
  auto speed = [&](double th) { return std::hypot(a * std::sin(th), b * std::cos(th)); };
  const double dth = 2.0 * pi / m;
  for (int i = 0; i < m; ++i) {
    const double th = i * dth;
    x[i] = a * std::cos(th);
    y[i] = b * std::sin(th);
    const double hh = dth / sub;
    double acc = 0.0;
    for (int k = 0; k < sub; ++k) {
      const double t0 = th + k * hh;
      acc += hh / 6.0 * (speed(t0) + 4.0 * speed(t0 + 0.5 * hh) + speed(t0 + hh));
    }
    ell[i + 1] = ell[i] + acc;
  }
  const double L = ell[m];
  double best = 1.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double d = std::hypot(x[i] - x[j], y[i] - y[j]);
      best = std::max(best, L / (pi * d) * std::sin(pi * (ell[j] - ell[i]) / L));
    }
  return best;
}

int sign_changes_by_scan(const Eigen::VectorXd& k) {
  std::vector<double> nonzero;
  for (Index i = 0; i < k.size(); ++i)
    if (k(i) != 0.0) nonzero.push_back(k(i));
  int count = 0;
  for (std::size_t i = 0; i < nonzero.size(); ++i)
    if ((nonzero[i] > 0) != (nonzero[(i + 1) % nonzero.size()] > 0)) ++count;
  return count;
}

Trajectory circle_run(double kappa_stop, bool dense_huisken) {
  StepControl c;
  c.kappa_stop = kappa_stop;
  RecordPolicy p;
  p.record_stride = 20;
  p.snapshot_stride = 400;
  p.distance_ratio_at_snapshots = true;
  if (dense_huisken) p.huisken_center = SpacetimePoint{PlanePoint::Zero(), 0.5};
  return evolve(regular_polygon(256), c, p);
}

}  // namespace

TEST_CASE("huisken functional on a line is one") {
  const Index n = 20001;
  Points line(2, n);
  for (Index i = 0; i < n; ++i) line.col(i) = PlanePoint(-10.0 + 20.0 * i / (n - 1), 0.3);
  const SpacetimePoint X0{{0.4, 0.3}, 2.0};
  CHECK(std::abs(huisken_functional(line, Topology::open, X0, 1.0) - 1.0) < 1e-6);
  CHECK_THROWS_AS(huisken_functional(line, Topology::open, X0, 2.0), Error);
}

TEST_CASE("huisken functional on the self-similar circle") {
  for (double tau : {0.1, 0.5, 2.0}) {
    const SpacetimePoint X0{{0.3, -0.7}, 1.0};
    const DiscreteCurve c = regular_polygon(512, std::sqrt(2.0 * tau), X0.x0);
    CHECK(std::abs(huisken_functional(c, X0, 1.0 - tau) - shrinker_density) < 1e-4);
    CHECK(std::abs(huisken_rate(c, X0, 1.0 - tau)) < 1e-4);
  }
}

TEST_CASE("huisken functional is invariant under parabolic rescaling") {
  const DiscreteCurve c = random_blob(4, 400);
  const SpacetimePoint X0{{0.1, 0.2}, 1.0};
  const double lambda = 3.0;
  const SpacetimePoint Y0{lambda * X0.x0, lambda * lambda * X0.t0};
  const double a = huisken_functional(c, X0, 0.5);
  const double b = huisken_functional(scaled(c, lambda), Y0, lambda * lambda * 0.5);
  CHECK(std::abs(a - b) < 1e-6);
  CHECK(a > 0.1);
}

TEST_CASE("huisken functional is constant along the circle run") {
  // centred at the run's own extinction time; the polygon's T differs from 1/2 by O(h^2)
  const Trajectory tr = circle_run(20.0, false);
  const SpacetimePoint X0{PlanePoint::Zero(), extinction_time_from_stop(tr)};
  const HuiskenReport h = huisken_monotonicity_check(tr, X0);
  CHECK(h.monotone.passed);
  CHECK(h.rate.passed);
  for (double v : h.values) CHECK(std::abs(v - shrinker_density) < 1e-4);
  CHECK(std::abs(gaussian_density(tr, X0, 0.5) - shrinker_density) < 1e-3);
  CHECK(std::abs(gaussian_density(tr, X0, 0.2) - shrinker_density) < 1e-3);
  CHECK_THROWS_AS(gaussian_density(tr, X0, 0.9), Error);
}

TEST_CASE("dense huisken records use the configured centre") {
  const Trajectory tr = circle_run(20.0, true);
  std::size_t with_value = 0;
  for (const DiagnosticRecord& r : tr.records)
    if (r.huisken_value) {
      ++with_value;
      CHECK(std::abs(*r.huisken_value - huisken_functional(curve_at_time(tr, r.t).curve, {PlanePoint::Zero(), 0.5}, r.t)) <
            1e-3);
    }
  CHECK(with_value == tr.records.size());
}

TEST_CASE("huisken functional decreases on the ellipse towards its extinction point") {
  StepControl c;
  c.kappa_stop = 1e3;
  RecordPolicy p;
  p.record_stride = 50;
  p.snapshot_stride = 500;
  const Trajectory tr = evolve(ellipse_uniform_arclength(2.0, 1.0, 256), c, p);
  const SpacetimePoint X0{detect_blowup_point(tr), extinction_time_from_stop(tr)};
  CHECK(X0.x0.norm() < 1e-2);
  const HuiskenReport h = huisken_monotonicity_check(tr, X0);
  CHECK(h.monotone.passed);
  CHECK(h.rate.passed);
  CHECK(h.values.front() > h.values.back() + 0.01);

  const HuiskenReport far = huisken_monotonicity_check(tr, {{1000.0, 0.0}, X0.t0});
  CHECK(far.monotone.passed);
  for (double v : far.values) CHECK(std::abs(v) < 1e-8);
}

TEST_CASE("distance ratio examples") {
  CHECK(std::abs(distance_ratio(regular_polygon(512)).value - 1.0) < 1e-4);
  for (std::uint64_t seed : {1u, 2u, 3u}) CHECK(distance_ratio(random_blob(seed, 200)).value >= 1.0 - 1e-9);
  const double oracle = ellipse_distance_ratio_oracle(2.0, 1.0);
  const DistanceRatio r = distance_ratio(ellipse_uniform_arclength(2.0, 1.0, 1024));
  CHECK(std::abs(r.value - oracle) < 1e-3);
  CHECK(r.value > 1.5);
}

TEST_CASE("distance ratio on runs") {
  const Trajectory circle = circle_run(20.0, false);
  const CheckReport rc = distance_ratio_monotonicity_check(circle);
  CHECK(rc.passed);
  for (const DiagnosticRecord& rec : circle.records)
    if (rec.R_ratio) CHECK(std::abs(*rec.R_ratio - 1.0) < 1e-4);

  StepControl c;
  c.kappa_stop = 50;
  RecordPolicy p;
  p.record_stride = 100;
  p.snapshot_stride = 1000;
  p.distance_ratio_at_snapshots = true;
  const Trajectory tr = evolve(flower(3, 0.4, 256), c, p);
  CHECK(tr.stop_reason() == EventKind::stop_curvature);
  CHECK(distance_ratio_monotonicity_check(tr).passed);
  std::vector<double> R;
  for (const DiagnosticRecord& rec : tr.records)
    if (rec.R_ratio) R.push_back(*rec.R_ratio);
  REQUIRE(R.size() > 3);
  CHECK(R.front() > 2.0);
  CHECK(R.back() < 1.05);
}

TEST_CASE("harnack quantity on the shrinking circle") {
  const double t = 0.2;
  const double r = std::sqrt(1.0 - 2.0 * t);
  const HarnackField h = harnack_quantity(regular_polygon(512, r), t);
  CHECK((h.F.array() + t / (r * r)).abs().maxCoeff() < 1e-3);
  CHECK(h.max <= 0.5);
  CHECK_THROWS_AS(harnack_quantity(flower(3, 0.4, 256), 0.1), Error);
}

TEST_CASE("harnack equality on the grim reaper") {
  ExactSolutionSpec g;
  g.kind = ExactKind::grim_reaper;
  g.clip = 1.2;
  g.sample_count = 1001;
  const Polyline p = sample(g, 0.0);
  const Eigen::VectorXd Z = harnack_z(polyline_fields(p.points, Topology::open));
  double worst = 0.0;
  for (Index i = 0; i < Z.size(); ++i)
    if (std::abs(p.points(0, i)) < 1.0) worst = std::max(worst, std::abs(Z(i)));
  CHECK(worst < 1e-3);
}

TEST_CASE("harnack bound and convex invariants on the ellipse run") {
  StepControl c;
  c.kappa_stop = 50;
  RecordPolicy p;
  p.record_stride = 20;
  p.harnack = true;
  const Trajectory tr = evolve(ellipse_uniform_arclength(2.0, 1.0, 256), c, p);
  const CheckReport h = harnack_check(tr);
  CHECK(h.passed);
  CHECK(h.checked + 1 >= tr.records.size());
  const CheckReport tac = total_abs_curvature_check(tr);
  CHECK(tac.passed);
  for (const DiagnosticRecord& r : tr.records) {
    CHECK(std::abs(r.total_abs_curv - 2.0 * pi) < 1e-3);
    CHECK(r.inflections == 0);
  }
  CHECK(area_rate_check(tr).passed);
  CHECK(length_dissipation_check(tr).passed);
}

TEST_CASE("total absolute curvature and inflections") {
  const AbsCurvature convex = total_abs_curvature(ellipse_uniform_arclength(2.0, 1.0, 512));
  CHECK(std::abs(convex.value - 2.0 * pi) < 1e-3);
  CHECK(convex.inflections == 0);
  const DiscreteCurve fl = flower(3, 0.4, 1024);
  const AbsCurvature a = total_abs_curvature(fl);
  CHECK(a.inflections == 6);
  CHECK(a.inflections == sign_changes_by_scan(geometry_fields(fl).kappa));
  CHECK(a.value > 2.0 * pi + 0.1);
}

TEST_CASE("total absolute curvature is nonincreasing on the flower run") {
  StepControl c;
  c.t_max = 0.1;
  RecordPolicy p;
  p.record_stride = 20;
  const Trajectory tr = evolve(flower(3, 0.4, 256), c, p);
  CHECK(total_abs_curvature_check(tr).passed);
  CHECK(tr.records.front().total_abs_curv > tr.records.back().total_abs_curv);
}

TEST_CASE("shrinker residual") {
  CHECK(shrinker_residual(regular_polygon(512, std::sqrt(2.0))) < 1e-3);
  CHECK(std::abs(shrinker_residual(regular_polygon(512, 1.0)) - 0.5) < 1e-3);
  CHECK(shrinker_residual(regular_polygon(512, std::sqrt(2.0), {0.5, 0.0})) > 0.1);
}

TEST_CASE("diagnostics under rigid motion and scaling") {
  const DiscreteCurve c = random_blob(6, 300);
  RecordOptions o;
  o.distance_ratio = true;
  const DiagnosticRecord a = make_record(c, 0.0, o);
  const DiagnosticRecord b = make_record(rotated(translated(c, {5.0, -3.0}), 2.2, {1.0, 1.0}), 0.0, o);
  CHECK(std::abs(a.L - b.L) < 1e-12);
  CHECK(std::abs(a.A - b.A) < 1e-12);
  CHECK(std::abs(a.int_kappa_sq - b.int_kappa_sq) < 1e-10);
  CHECK(std::abs(a.total_abs_curv - b.total_abs_curv) < 1e-10);
  CHECK(std::abs(*a.R_ratio - *b.R_ratio) < 1e-12);
  CHECK(a.inflections == b.inflections);
  const DiagnosticRecord s = make_record(scaled(c, 2.0), 0.0, o);
  CHECK(std::abs(s.L - 2.0 * a.L) < 1e-12);
  CHECK(std::abs(s.A - 4.0 * a.A) < 1e-12);
  CHECK(std::abs(s.int_kappa_sq - 0.5 * a.int_kappa_sq) < 1e-10);
  CHECK(std::abs(*s.R_ratio - *a.R_ratio) < 1e-12);
}

TEST_CASE("curve_at_time interpolates between snapshots") {
  Trajectory tr;
  tr.snapshots.push_back({0, {regular_polygon(64, 1.0), 0.0}});
  tr.snapshots.push_back({10, {regular_polygon(64, 0.5), 1.0}});
  const InterpolatedCurve mid = curve_at_time(tr, 0.25);
  CHECK(mid.interpolated);
  CHECK(((mid.curve.vertices().colwise().norm().array()) - 0.875).abs().maxCoeff() < 1e-14);
  tr.events.push_back({0.5, EventKind::remesh, 5});
  const InterpolatedCurve near = curve_at_time(tr, 0.75);
  CHECK(near.remesh_boundary);
  CHECK_FALSE(near.interpolated);
  CHECK(((near.curve.vertices().colwise().norm().array()) - 0.5).abs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(curve_at_time(tr, 1.5), Error);
}

TEST_CASE("check reports record violations") {
  CheckReport r{"x"};
  r.observe(0.0, 1.0, 2.0);
  CHECK(r.passed);
  CHECK(r.worst_margin == 1.0);
  r.observe(1.0, 3.0, 2.0);
  CHECK_FALSE(r.passed);
  CHECK(r.violations.size() == 1);
  CHECK(r.checked == 2);
}
