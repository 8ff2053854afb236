#include "csf/graph_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "csf/arclength.hpp"
#include "csf/geometry.hpp"

namespace csf {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(Index n) {
  if (n < DiscreteCurve::min_vertices) throw Error(Errc::domain, "graph grid needs at least 16 points");
}

struct Derivatives {
  Eigen::VectorXd d1;
  Eigen::VectorXd d2;
};

Derivatives periodic_derivatives(const Eigen::VectorXd& u, double dx) {
  const Index n = u.size();
  Derivatives d{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Index j = 0; j < n; ++j) {
    const double up = u((j + 1) % n);
    const double um = u((j + n - 1) % n);
    d.d1(j) = (up - um) / (2.0 * dx);
    d.d2(j) = (up - 2.0 * u(j) + um) / (dx * dx);
  }
  return d;
}

void check_size(const GraphState& state, const BaseCurveData& base) {
  if (state.u.size() != base.size()) throw Error(Errc::domain, "offset and base grid sizes differ");
}

// Numerator and denominator shared by the evolution equation and the curvature formula.
struct GraphTerms {
  Eigen::VectorXd numerator;  // (1-ku) u'' + 2k u'^2 + k' u u' - 2k^2 u + k^3 u^2 + k
  Eigen::VectorXd metric;     // (1-ku)^2 + u'^2
  Eigen::VectorXd one_minus_ku;
};

GraphTerms graph_terms(const GraphState& state, const BaseCurveData& base) {
  check_size(state, base);
  const Eigen::VectorXd& u = state.u;
  const Eigen::VectorXd& k = base.k;
  const Derivatives d = periodic_derivatives(u, base.dx);
  GraphTerms g;
  g.one_minus_ku = (1.0 - k.array() * u.array()).matrix();
  for (Index j = 0; j < u.size(); ++j)
    if (!(g.one_minus_ku(j) > 1e-6))
      throw Error(Errc::numerical, "degenerate gauge: 1 - k u <= 1e-6 at grid point " + std::to_string(j));
  const auto a = g.one_minus_ku.array();
  const auto up = d.d1.array();
  g.numerator = (a * d.d2.array() + 2.0 * k.array() * up.square() + base.k_prime.array() * u.array() * up -
                 2.0 * k.array().square() * u.array() + k.array().cube() * u.array().square() + k.array())
                    .matrix();
  g.metric = (a.square() + up.square()).matrix();
  return g;
}

BaseCurveData finish_base(Points position, Points tangent, Eigen::VectorXd k, Eigen::VectorXd k_prime, double length) {
  BaseCurveData b;
  b.dx = length / static_cast<double>(position.cols());
  b.normal.resize(2, tangent.cols());
  b.normal.row(0) = -tangent.row(1);
  b.normal.row(1) = tangent.row(0);
  b.position = std::move(position);
  b.tangent = std::move(tangent);
  b.k = std::move(k);
  b.k_prime = std::move(k_prime);
  return b;
}

}  // namespace

BaseCurveData circle_base(double radius, Index n) {
  check_grid(n);
  if (!(radius > 0.0)) throw Error(Errc::domain, "circle radius must be positive");
  Points pos(2, n), tan(2, n);
  for (Index j = 0; j < n; ++j) {
    const double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    pos.col(j) = radius * PlanePoint(std::cos(th), std::sin(th));
    tan.col(j) = PlanePoint(-std::sin(th), std::cos(th));
  }
  return finish_base(std::move(pos), std::move(tan), Eigen::VectorXd::Constant(n, 1.0 / radius),
                     Eigen::VectorXd::Zero(n), 2.0 * kPi * radius);
}

BaseCurveData ellipse_base(double a, double b, Index n) {
  check_grid(n);
  if (!(a > 0.0 && b > 0.0)) throw Error(Errc::domain, "ellipse semi-axes must be positive");
  const auto speed = [a, b](double th) { return std::hypot(a * std::sin(th), b * std::cos(th)); };
  const auto breaks = uniform_breaks(0.0, 2.0 * kPi, 256);
  const ArclengthTable table(speed, std::span<const double>(breaks), 1);
  Points pos(2, n), tan(2, n);
  Eigen::VectorXd k(n), kp(n);
  for (Index j = 0; j < n; ++j) {
    const double th = j == 0 ? 0.0 : table.parameter(table.total() * static_cast<double>(j) / static_cast<double>(n));
    const double s = std::sin(th);
    const double c = std::cos(th);
    const double sigma = speed(th);
    pos.col(j) = PlanePoint(a * c, b * s);
    tan.col(j) = PlanePoint(-a * s, b * c) / sigma;
    k(j) = a * b / (sigma * sigma * sigma);
    const double dsigma = (a * a - b * b) * s * c / sigma;
    kp(j) = -3.0 * a * b * dsigma / std::pow(sigma, 5);
  }
  return finish_base(std::move(pos), std::move(tan), std::move(k), std::move(kp), table.total());
}

BaseCurveData polygon_base(const DiscreteCurve& curve, Index n) {
  check_grid(n);
  const DiscreteCurve uniform = resample_smooth(curve, n);
  const GeometryFields g = geometry_fields(uniform);
  return finish_base(uniform.vertices(), g.tangent, g.kappa, g.kappa_s, length(uniform));
}

Eigen::VectorXd graph_rhs(const GraphState& state, const BaseCurveData& base) {
  const GraphTerms g = graph_terms(state, base);
  // u'' + (1-ku)^{-1}(...) is the shared numerator divided by (1-ku)
  return g.numerator.array() / (g.one_minus_ku.array() * g.metric.array());
}

Eigen::VectorXd graph_curvature(const GraphState& state, const BaseCurveData& base) {
  const GraphTerms g = graph_terms(state, base);
  return g.numerator.array() / g.metric.array().pow(1.5);
}

DiscreteCurve to_curve(const GraphState& state, const BaseCurveData& base) {
  check_size(state, base);
  Points v = base.position + (base.normal.array().rowwise() * state.u.transpose().array()).matrix();
  return DiscreteCurve(std::move(v));
}

double graph_stable_dt(const GraphState& state, const BaseCurveData& base) {
  const GraphTerms g = graph_terms(state, base);
  return 0.25 * base.dx * base.dx * g.metric.minCoeff();
}

GraphRun graph_evolve(const BaseCurveData& base, const Eigen::VectorXd& u0, double t_end, double dt, std::size_t stride,
                      double margin) {
  if (!(dt > 0.0)) throw Error(Errc::domain, "dt must be positive");
  if (stride == 0) throw Error(Errc::domain, "stride must be positive");
  if (u0.size() != base.size()) throw Error(Errc::domain, "offset and base grid sizes differ");
  if (!((base.k.array() * u0.array()).abs().maxCoeff() <= margin))
    throw Error(Errc::domain, "initial offset outside the validity region |k u| <= margin");

  GraphRun run;
  GraphState state{u0, 0.0};
  run.states.push_back(state);
  std::size_t steps = 0;
  const auto eval = [&base](const Eigen::VectorXd& u) { return graph_rhs(GraphState{u, 0.0}, base); };
  while (state.t < t_end) {
    const double h = std::min(dt, t_end - state.t);
    const Eigen::VectorXd k1 = eval(state.u);
    const Eigen::VectorXd k2 = eval(state.u + 0.5 * h * k1);
    const Eigen::VectorXd k3 = eval(state.u + 0.5 * h * k2);
    const Eigen::VectorXd k4 = eval(state.u + h * k3);
    Eigen::VectorXd next = state.u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double before = std::max(state.u.cwiseAbs().maxCoeff(), base.dx);
    if (!next.allFinite() || next.cwiseAbs().maxCoeff() > 10.0 * before)
      throw Error(Errc::numerical, "graph flow unstable at t = " + std::to_string(state.t) + " (max |u| grew tenfold)");
    if ((base.k.array() * next.array()).abs().maxCoeff() > margin) {
      run.validity_stop = true;
      break;
    }
    state.u = std::move(next);
    state.t = h == t_end - state.t ? t_end : state.t + h;
    ++steps;
    if (steps % stride == 0) run.states.push_back(state);
  }
  if (run.states.back().t != state.t) run.states.push_back(state);
  return run;
}

}  // namespace csf
