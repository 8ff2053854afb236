#pragma once

#include <Eigen/Dense>

#include <utility>

#include "csf/error.hpp"

namespace csf {

using Index = Eigen::Index;
using PlanePoint = Eigen::Vector2d;
/// Vertex storage: one column per vertex.
using Points = Eigen::Matrix2Xd;

/// Closed, embedded, counterclockwise polygon with at least `min_vertices` vertices.
///
/// Instances are immutable. The checking constructor enforces every invariant, including the
/// O(n^2) embeddedness test; `assume_embedded` skips only that test and is used inside the flow
/// loop, which verifies embeddedness on its own schedule.
class DiscreteCurve {
 public:
  static constexpr Index min_vertices = 16;

  explicit DiscreteCurve(Points vertices);
  static DiscreteCurve assume_embedded(Points vertices);

  Index size() const { return vertices_.cols(); }
  const Points& vertices() const { return vertices_; }
  PlanePoint vertex(Index i) const { return vertices_.col(wrap(i)); }
  Index wrap(Index i) const {
    const Index n = size();
    return ((i % n) + n) % n;
  }

 private:
  struct Unchecked {};
  DiscreteCurve(Points vertices, Unchecked) : vertices_(std::move(vertices)) {}
  static void check_basic(const Points& vertices);

  Points vertices_;
};

// Polygon measurements on raw vertex lists (closed, implicit last-to-first edge).
double signed_area(const Points& vertices);
double perimeter(const Points& vertices);
Eigen::VectorXd edge_lengths(const Points& vertices);
bool is_embedded(const Points& vertices, bool closed = true);
bool segments_intersect(const PlanePoint& a0, const PlanePoint& a1, const PlanePoint& b0, const PlanePoint& b1);

double length(const DiscreteCurve& curve);
double enclosed_area(const DiscreteCurve& curve);
inline bool is_embedded(const DiscreteCurve& curve) { return is_embedded(curve.vertices()); }

/// n vertices on the piecewise-linear input, in order from vertex 0, with all n chords equal.
/// Equilateral polygons are fixed points, so resampling twice at the same n changes nothing.
DiscreteCurve resample(const DiscreteCurve& curve, Index n);

/// n vertices at equal arclength spacing along the periodic cubic spline through the input
/// (chord-length knots), starting at vertex 0. Keeps curvature second-order accurate, which
/// piecewise-linear resampling does not.
DiscreteCurve resample_smooth(const DiscreteCurve& curve, Index n);

struct ArcChord {
  double intrinsic;  // shorter arc between the two vertices
  double extrinsic;  // Euclidean distance
};
ArcChord intrinsic_extrinsic(const DiscreteCurve& curve, Index i, Index j);

/// Distance from p to the closed polygon.
double distance_to_polygon(const PlanePoint& p, const Points& polygon);
/// Symmetric Hausdorff distance between two closed polygons (vertex-to-polygon, both ways).
double hausdorff_distance(const DiscreteCurve& a, const DiscreteCurve& b);
/// Smallest vertex-to-polygon distance between two curves (both directions).
double min_separation(const DiscreteCurve& a, const DiscreteCurve& b);

DiscreteCurve translated(const DiscreteCurve& curve, const PlanePoint& shift);
DiscreteCurve rotated(const DiscreteCurve& curve, double angle, const PlanePoint& pivot = PlanePoint::Zero());
DiscreteCurve scaled(const DiscreteCurve& curve, double factor, const PlanePoint& pivot = PlanePoint::Zero());

}  // namespace csf
