#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "csf/curve.hpp"

namespace csf {

/// Smooth closed base curve sampled on a uniform periodic arclength grid.
struct BaseCurveData {
  double dx = 0.0;             // grid spacing (base length / n)
  Points position;             // gamma_0(x_j)
  Points tangent;
  Points normal;               // inward
  Eigen::VectorXd k;           // curvature
  Eigen::VectorXd k_prime;     // dk/dx

  Index size() const { return k.size(); }
};

/// Circle of radius R, analytic.
BaseCurveData circle_base(double radius, Index n);
/// Ellipse x = a cos(theta), y = b sin(theta), analytic, grid at uniform arclength from (a, 0).
BaseCurveData ellipse_base(double a, double b, Index n);
/// Fine polygon: spline-resampled to n points at uniform arclength, k and k' from the discrete
/// geometry fields.
BaseCurveData polygon_base(const DiscreteCurve& curve, Index n);

struct GraphState {
  Eigen::VectorXd u;  // offset along the base normal
  double t = 0.0;
};

/// Right-hand side of the graph equation with centred periodic differences. Throws
/// Errc::numerical where 1 - k u <= 1e-6.
Eigen::VectorXd graph_rhs(const GraphState& state, const BaseCurveData& base);

/// Curvature of the graph curve gamma_0 + u N.
Eigen::VectorXd graph_curvature(const GraphState& state, const BaseCurveData& base);

/// gamma_0(x_j) + u_j N(x_j), validated (Errc::invalid_curve if not embedded).
DiscreteCurve to_curve(const GraphState& state, const BaseCurveData& base);

/// 0.25 dx^2 min_j ((1 - k u)^2 + u'^2), the explicit step heuristic.
double graph_stable_dt(const GraphState& state, const BaseCurveData& base);

struct GraphRun {
  std::vector<GraphState> states;  // every `stride` steps plus the last accepted state
  bool validity_stop = false;      // max |k u| would have exceeded the margin
};

/// Classical RK4 up to t_end. A step whose result leaves |k u| <= margin is rejected and the run
/// ends with validity_stop. Growth of max |u| by more than 10x in one step throws Errc::numerical.
GraphRun graph_evolve(const BaseCurveData& base, const Eigen::VectorXd& u0, double t_end, double dt,
                      std::size_t stride = 1, double margin = 0.45);

}  // namespace csf
