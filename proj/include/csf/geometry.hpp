#pragma once

#include "csf/curve.hpp"

namespace csf {

enum class Topology { closed, open };

/// Per-vertex discrete geometry of a polygon or polyline.
struct GeometryFields {
  Eigen::VectorXd ds;        // dual arclength weight, half the adjacent edge lengths
  Points tangent;            // unit tangent of the circle through three consecutive vertices
  Points normal;             // tangent rotated by +pi/2 (inward for counterclockwise curves)
  Eigen::VectorXd kappa;     // signed Menger curvature, positive when bending toward normal
  Eigen::VectorXd kappa_s;   // first arclength derivative of kappa
  Eigen::VectorXd kappa_ss;  // second arclength derivative of kappa

  Index size() const { return kappa.size(); }
};

GeometryFields geometry_fields(const DiscreteCurve& curve);

/// Same fields for a raw vertex list. Open polylines use one-sided stencils at the two ends.
GeometryFields polyline_fields(const Points& vertices, Topology topology);

/// Curvature and normal only, bit-identical to the matching geometry_fields entries; the flow
/// loop uses this on steps that record nothing.
struct CurvatureVector {
  Eigen::VectorXd kappa;
  Points normal;
  double max_abs_kappa = 0.0;
};
CurvatureVector curvature_vector(const DiscreteCurve& curve);

/// Signed curvature of the circle through a, b, c (0 for collinear points).
double menger_curvature(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c);

}  // namespace csf
