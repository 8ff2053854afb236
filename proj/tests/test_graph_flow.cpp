#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csf/flow.hpp"
#include "csf/generators.hpp"
#include "csf/graph_flow.hpp"

using namespace csf;

namespace {

constexpr double pi = std::numbers::pi;

Eigen::VectorXd constant(Index n, double c) { return Eigen::VectorXd::Constant(n, c); }

Eigen::VectorXd cos_mode(Index n, int m, double amp) {
  Eigen::VectorXd u(n);
  for (Index j = 0; j < n; ++j) u(j) = amp * std::cos(m * 2.0 * pi * j / n);
  return u;
}

double mode_amplitude(const Eigen::VectorXd& u, int m) {
  const Index n = u.size();
  double c = 0.0, s = 0.0;
  for (Index j = 0; j < n; ++j) {
    const double x = 2.0 * pi * j / n;
    c += u(j) * std::cos(m * x);
    s += u(j) * std::sin(m * x);
  }
  return 2.0 * std::hypot(c, s) / n;
}

double gauge_error(Index n) {
  const BaseCurveData base = circle_base(1.0, n);
  Eigen::VectorXd u(n);
  for (Index j = 0; j < n; ++j) {
    const double x = 2.0 * pi * j / n;
    u(j) = 0.05 * std::cos(2.0 * x) + 0.03 * std::sin(5.0 * x);
  }
  const GraphState s{u, 0.0};
  return (graph_curvature(s, base) - geometry_fields(to_curve(s, base)).kappa).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("rhs examples on the unit circle and on a general base") {
  const BaseCurveData circle = circle_base(1.0, 128);
  CHECK((graph_rhs({constant(128, 0.0), 0.0}, circle).array() - 1.0).abs().maxCoeff() < 1e-14);
  for (double c : {0.25, -0.3}) {
    CHECK((graph_rhs({constant(128, c), 0.0}, circle).array() - 1.0 / (1.0 - c)).abs().maxCoeff() < 1e-13);
    CHECK((graph_curvature({constant(128, c), 0.0}, circle).array() - 1.0 / (1.0 - c)).abs().maxCoeff() < 1e-13);
  }
  const BaseCurveData ellipse = ellipse_base(2.0, 1.0, 256);
  CHECK((graph_rhs({constant(256, 0.0), 0.0}, ellipse) - ellipse.k).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((graph_curvature({constant(256, 0.0), 0.0}, ellipse) - ellipse.k).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(graph_rhs({constant(128, 1.0), 0.0}, circle), Error);
}

TEST_CASE("ellipse base data") {
  const Index n = 4096;
  const BaseCurveData e = ellipse_base(2.0, 1.0, n);
  CHECK(std::abs(e.k(0) - 2.0) < 1e-12);
  CHECK(std::abs(e.dx * n - perimeter(e.position)) < 1e-5);
  const Eigen::VectorXd spacing = edge_lengths(e.position);
  CHECK(spacing.maxCoeff() / spacing.minCoeff() < 1.001);
  CHECK((e.tangent.colwise().norm().array() - 1.0).abs().maxCoeff() < 1e-14);
  CHECK(e.tangent.cwiseProduct(e.normal).colwise().sum().cwiseAbs().maxCoeff() < 1e-14);
  // k' against centred differences of k
  double worst = 0.0;
  for (Index j = 0; j < n; ++j) {
    const double fd = (e.k((j + 1) % n) - e.k((j + n - 1) % n)) / (2.0 * e.dx);
    worst = std::max(worst, std::abs(fd - e.k_prime(j)));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("to_curve examples") {
  const BaseCurveData circle = circle_base(1.0, 256);
  CHECK((to_curve({constant(256, 0.0), 0.0}, circle).vertices() - circle.position).cwiseAbs().maxCoeff() == 0.0);
  const DiscreteCurve shrunk = to_curve({constant(256, 0.25), 0.0}, circle);
  CHECK(((shrunk.vertices().colwise().norm().array()) - 0.75).abs().maxCoeff() < 1e-15);

  const Eigen::VectorXd u = cos_mode(256, 1, 0.1);
  Points golden(2, 256);
  for (Index j = 0; j < 256; ++j) {
    const double x = 2.0 * pi * j / 256;
    golden.col(j) = (1.0 - 0.1 * std::cos(x)) * PlanePoint(std::cos(x), std::sin(x));
  }
  const DiscreteCurve c = to_curve({u, 0.0}, circle);
  CHECK(std::abs(enclosed_area(c) - signed_area(golden)) < 1e-13);
  // continuum: (1/2) int (1 - 0.1 cos x)^2 dx = pi (1 + 0.005)
  CHECK(std::abs(enclosed_area(c) - pi * 1.005) < 1e-3);
}

TEST_CASE("graph curvature agrees with polygon curvature at second order") {
  const double e1 = gauge_error(256);
  const double e2 = gauge_error(512);
  CHECK(e1 < 1e-3);
  const double order = std::log2(e1 / e2);
  CHECK(order > 1.7);
  CHECK(order < 2.3);
}

TEST_CASE("circle base: radius follows sqrt(1 - 2t)") {
  const BaseCurveData base = circle_base(1.0, 256);
  const GraphState probe{constant(256, 0.0), 0.0};
  const double dt = graph_stable_dt(probe, base);
  const GraphRun run = graph_evolve(base, probe.u, 0.1, dt, 50);
  REQUIRE_FALSE(run.validity_stop);
  CHECK(run.states.back().t == doctest::Approx(0.1).epsilon(1e-14));
  for (const GraphState& s : run.states) {
    const double r = 1.0 - s.u.mean();
    CHECK(std::abs(r - std::sqrt(1.0 - 2.0 * s.t)) < 1e-4);
  }
}

TEST_CASE("mode 3 perturbation of the circle decays monotonically") {
  const BaseCurveData base = circle_base(1.0, 256);
  const Eigen::VectorXd u0 = cos_mode(256, 3, 0.01);
  const double dt = graph_stable_dt({u0, 0.0}, base);
  const GraphRun run = graph_evolve(base, u0, 0.1, dt, 20);
  double prev = mode_amplitude(u0, 3);
  CHECK(prev == doctest::Approx(0.01).epsilon(1e-12));
  for (const GraphState& s : run.states) {
    const double a = mode_amplitude(s.u, 3);
    CHECK(a <= prev + 1e-15);
    prev = a;
  }
  CHECK(prev < 0.5 * 0.01);
}

TEST_CASE("validity stop when the offset approaches the base centre") {
  const BaseCurveData base = circle_base(1.0, 128);
  // u = 1 - sqrt(1 - 2t) passes 0.45 near t = 0.349
  const GraphRun run = graph_evolve(base, constant(128, 0.0), 0.45, graph_stable_dt({constant(128, 0.0), 0.0}, base), 100);
  CHECK(run.validity_stop);
  CHECK(run.states.back().u.maxCoeff() <= 0.45);
  CHECK(run.states.back().t > 0.34);
  CHECK(run.states.back().t < 0.35);
}

TEST_CASE("graph engine and polygon engine agree on the ellipse") {
  const Index n = 1024;
  const BaseCurveData base = ellipse_base(2.0, 1.0, n);
  const Eigen::VectorXd u0 = constant(n, 0.0);
  const GraphRun run = graph_evolve(base, u0, 0.01, graph_stable_dt({u0, 0.0}, base), 1000000);
  REQUIRE_FALSE(run.validity_stop);
  StepControl c;
  c.t_max = 0.01;
  RecordPolicy p;
  p.snapshot_stride = 1000000;
  const Trajectory tr = evolve(ellipse_uniform_arclength(2.0, 1.0, n), c, p);
  CHECK(tr.events.size() == 1);
  CHECK(hausdorff_distance(to_curve(run.states.back(), base), tr.snapshots.back().state.curve) < 1e-3);
}

TEST_CASE("polygon base from a fine polygon") {
  const BaseCurveData b = polygon_base(regular_polygon(2048, 2.0), 512);
  CHECK((b.k.array() - 0.5).abs().maxCoeff() < 1e-5);
  CHECK(b.k_prime.cwiseAbs().maxCoeff() < 1e-4);
  // grid spacing is the chord of the regular 512-gon the spline resample produces
  CHECK(std::abs(b.dx - 2.0 * 2.0 * std::sin(pi / 512)) < 1e-9);
}
