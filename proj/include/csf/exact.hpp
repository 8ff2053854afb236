#pragma once

#include "csf/curve.hpp"
#include "csf/geometry.hpp"

namespace csf {

/// The closed-form solutions of the flow that serve as oracles.
enum class ExactKind { circle, grim_reaper, paperclip, hairclip };

struct ExactSolutionSpec {
  ExactKind kind = ExactKind::circle;
  double radius = 1.0;                       // circle: initial radius R
  PlanePoint center = PlanePoint::Zero();    // circle: centre
  double clip = 1.45;                        // grim reaper: |x| <= clip < pi/2
  Index sample_count = 512;
};

/// Sampled exact solution. Grim reaper and hairclip are open polylines.
struct Polyline {
  Points points;
  Topology topology = Topology::closed;
  bool is_open() const { return topology == Topology::open; }
};

/// Sample the solution at time t.
///
/// circle: regular n-gon of radius sqrt(R^2 - 2t), vertex 0 on the positive x-axis.
/// grim reaper: graph of -log cos x + t at uniform arclength over |x| <= clip.
/// paperclip: cosh y = e^{-t} cos x, uniform arclength from the tip on the positive x-axis,
///   exactly symmetric under x -> -x and y -> -y (needs an even sample count).
/// hairclip: sinh y = e^{-t} cos x over x in [-pi, pi] at uniform arclength.
Polyline sample(const ExactSolutionSpec& spec, double t);

/// Same as `sample` for the closed kinds, validated as a DiscreteCurve.
DiscreteCurve sample_closed(const ExactSolutionSpec& spec, double t);

/// Largest violation of the defining equation over the sampled points.
double implicit_residual(const ExactSolutionSpec& spec, double t, const Points& points);

/// sup_i |<(p_i(t+h) - p_i(t-h)) / 2h, N_i> - kappa_i| with kappa, N from the discrete geometry
/// at time t. Open polylines skip `end_margin` vertices at each end.
double normal_velocity_residual(const ExactSolutionSpec& spec, double t, double h = 1e-5, Index end_margin = 3);

/// Roundness deviation ratio of the paperclip at time t < 0.
double paperclip_extinction_roundness(double t, Index n = 512);

/// Half-height of the paperclip, arccosh(e^{-t}); the curve crosses x = 0 at +- this value.
double paperclip_half_height(double t);

/// Point of the grim reaper graph above x at time t.
PlanePoint grim_reaper_point(double x, double t);

}  // namespace csf
