#include "csf/geometry.hpp"

#include <cmath>

namespace csf {

namespace {

double cross(const PlanePoint& a, const PlanePoint& b) { return a.x() * b.y() - a.y() * b.x(); }

PlanePoint rotate_quarter(const PlanePoint& v) { return {-v.y(), v.x()}; }

// Three-point weights on a nonuniform grid with spacings h1 (left) and h2 (right).
struct Stencil {
  double left, centre, right;
};

Stencil first_derivative(double h1, double h2) {
  return {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))};
}

Stencil second_derivative(double h1, double h2) {
  return {2.0 / (h1 * (h1 + h2)), -2.0 / (h1 * h2), 2.0 / (h2 * (h1 + h2))};
}

// Weights for the derivatives at the first node of three, from spacings h1, h2 (one-sided).
Stencil first_derivative_forward(double h1, double h2) {
  return {-(2.0 * h1 + h2) / (h1 * (h1 + h2)), (h1 + h2) / (h1 * h2), -h1 / (h2 * (h1 + h2))};
}

Eigen::VectorXd differentiate(const Eigen::VectorXd& f, const Eigen::VectorXd& edge, Topology topology, bool second) {
  const Index n = f.size();
  Eigen::VectorXd out(n);
  const bool closed = topology == Topology::closed;
  for (Index i = 0; i < n; ++i) {
    if (!closed && (i == 0 || i == n - 1)) continue;
    const Index prev = (i + n - 1) % n;
    const Index next = (i + 1) % n;
    const double h1 = edge(prev);
    const double h2 = edge(i);
    const Stencil w = second ? second_derivative(h1, h2) : first_derivative(h1, h2);
    out(i) = w.left * f(prev) + w.centre * f(i) + w.right * f(next);
  }
  if (!closed) {
    if (second) {
      out(0) = out(1);
      out(n - 1) = out(n - 2);
    } else {
      const Stencil a = first_derivative_forward(edge(0), edge(1));
      out(0) = a.left * f(0) + a.centre * f(1) + a.right * f(2);
      const Stencil b = first_derivative_forward(edge(n - 2), edge(n - 3));
      out(n - 1) = -(b.left * f(n - 1) + b.centre * f(n - 2) + b.right * f(n - 3));
    }
  }
  return out;
}

// Unit tangent of the circle through a, b, c at b: sin-weighted unit edges.
PlanePoint circle_tangent(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c, double h1, double h2) {
  PlanePoint t = (b - a) / h1 * h2 + (c - b) / h2 * h1;
  t.normalize();
  return t;
}

}  // namespace

double menger_curvature(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) {
  const PlanePoint ab = b - a;
  const PlanePoint bc = c - b;
  const double turn = cross(ab, bc);
  if (turn == 0.0) return 0.0;
  const double denom = ab.norm() * bc.norm() * (c - a).norm();
  if (!(denom > 0.0)) return 0.0;
  const double k = 2.0 * turn / denom;
  return std::isfinite(k) ? k : 0.0;
}

GeometryFields polyline_fields(const Points& v, Topology topology) {
  const Index n = v.cols();
  if (n < 3) throw Error(Errc::domain, "geometry fields need at least three vertices");
  const bool closed = topology == Topology::closed;
  // edge(i) joins vertex i and i+1; for open polylines the last entry is unused padding.
  Eigen::VectorXd edge(n);
  for (Index i = 0; i < n; ++i) edge(i) = (closed || i + 1 < n) ? (v.col((i + 1) % n) - v.col(i)).norm() : edge(i - 1);

  GeometryFields g;
  g.ds.resize(n);
  g.tangent.resize(2, n);
  g.normal.resize(2, n);
  g.kappa.resize(n);

  for (Index i = 0; i < n; ++i) {
    Index prev = (i + n - 1) % n;
    Index mid = i;
    Index next = (i + 1) % n;
    if (!closed && i == 0) { prev = 0; mid = 1; next = 2; }
    if (!closed && i == n - 1) { prev = n - 3; mid = n - 2; next = n - 1; }
    const PlanePoint a = v.col(prev);
    const PlanePoint b = v.col(mid);
    const PlanePoint c = v.col(next);
    g.kappa(i) = menger_curvature(a, b, c);

    if (closed || (i > 0 && i < n - 1)) {
      const double h1 = (b - a).norm();
      const double h2 = (c - b).norm();
      g.tangent.col(i) = circle_tangent(a, b, c, h1, h2);
      g.ds(i) = closed ? 0.5 * (edge(prev) + edge(i)) : 0.5 * (h1 + h2);
    } else {
      const PlanePoint e = i == 0 ? PlanePoint(v.col(1) - v.col(0)) : PlanePoint(v.col(n - 1) - v.col(n - 2));
      g.tangent.col(i) = e.normalized();
      g.ds(i) = 0.5 * e.norm();
    }
    g.normal.col(i) = rotate_quarter(g.tangent.col(i));
  }
  g.kappa_s = differentiate(g.kappa, edge, topology, false);
  g.kappa_ss = differentiate(g.kappa, edge, topology, true);
  return g;
}

CurvatureVector curvature_vector(const DiscreteCurve& curve) {
  const Points& v = curve.vertices();
  const Index n = v.cols();
  CurvatureVector out{Eigen::VectorXd(n), Points(2, n), 0.0};
  for (Index i = 0; i < n; ++i) {
    const PlanePoint a = v.col((i + n - 1) % n);
    const PlanePoint b = v.col(i);
    const PlanePoint c = v.col((i + 1) % n);
    out.kappa(i) = menger_curvature(a, b, c);
    out.normal.col(i) = rotate_quarter(circle_tangent(a, b, c, (b - a).norm(), (c - b).norm()));
  }
  out.max_abs_kappa = out.kappa.cwiseAbs().maxCoeff();
  return out;
}

GeometryFields geometry_fields(const DiscreteCurve& curve) { return polyline_fields(curve.vertices(), Topology::closed); }

}  // namespace csf
