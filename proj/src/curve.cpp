#include "csf/curve.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "csf/arclength.hpp"

namespace csf {

namespace {

double cross(const PlanePoint& a, const PlanePoint& b) { return a.x() * b.y() - a.y() * b.x(); }

double orient(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) { return cross(b - a, c - a); }

bool on_segment(const PlanePoint& a, const PlanePoint& b, const PlanePoint& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) && std::min(a.y(), b.y()) <= p.y() &&
         p.y() <= std::max(a.y(), b.y());
}

double point_segment_distance(const PlanePoint& p, const PlanePoint& a, const PlanePoint& b) {
  const PlanePoint e = b - a;
  const double ee = e.squaredNorm();
  const double t = ee > 0.0 ? std::clamp((p - a).dot(e) / ee, 0.0, 1.0) : 0.0;
  return (a + t * e - p).norm();
}

Eigen::VectorXd cumulative_length(const Points& v) {
  const Index n = v.cols();
  Eigen::VectorXd c(n + 1);
  c(0) = 0.0;
  for (Index i = 0; i < n; ++i) c(i + 1) = c(i) + (v.col((i + 1) % n) - v.col(i)).norm();
  return c;
}

/// Periodic cubic spline through closed polygon vertices, chord-length parametrized.
class PeriodicSpline {
 public:
  explicit PeriodicSpline(const Points& v) : points_(v), knots_(cumulative_length(v)) {
    const Index n = v.cols();
    Eigen::SparseMatrix<double> system(n, n);
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(3 * n));
    Eigen::Matrix<double, Eigen::Dynamic, 2> rhs(n, 2);
    for (Index i = 0; i < n; ++i) {
      const Index prev = (i + n - 1) % n;
      const Index next = (i + 1) % n;
      const double h_prev = knots_(i == 0 ? n : i) - knots_(i == 0 ? n - 1 : i - 1);
      const double h_next = knots_(i + 1) - knots_(i);
      entries.emplace_back(i, prev, h_prev);
      entries.emplace_back(i, i, 2.0 * (h_prev + h_next));
      entries.emplace_back(i, next, h_next);
      const PlanePoint slope = (v.col(next) - v.col(i)) / h_next - (v.col(i) - v.col(prev)) / h_prev;
      rhs.row(i) = 6.0 * slope.transpose();
    }
    system.setFromTriplets(entries.begin(), entries.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(system);
    if (solver.info() != Eigen::Success) throw Error(Errc::numerical, "periodic spline system is singular");
    moments_ = solver.solve(rhs).transpose();
  }

  double period() const { return knots_(knots_.size() - 1); }
  const Eigen::VectorXd& knots() const { return knots_; }

  PlanePoint position(double u) const {
    const auto [i, a, b, h] = locate(u);
    const Index j = (i + 1) % points_.cols();
    return moments_.col(i) * (a * a * a / (6.0 * h)) + moments_.col(j) * (b * b * b / (6.0 * h)) +
           (points_.col(i) / h - moments_.col(i) * h / 6.0) * a + (points_.col(j) / h - moments_.col(j) * h / 6.0) * b;
  }

  PlanePoint derivative(double u) const {
    const auto [i, a, b, h] = locate(u);
    const Index j = (i + 1) % points_.cols();
    return -moments_.col(i) * (a * a / (2.0 * h)) + moments_.col(j) * (b * b / (2.0 * h)) -
           (points_.col(i) / h - moments_.col(i) * h / 6.0) + (points_.col(j) / h - moments_.col(j) * h / 6.0);
  }

 private:
  struct Local {
    Index segment;
    double to_end;    // u_{i+1} - u
    double from_start;  // u - u_i
    double width;
  };

  Local locate(double u) const {
    const Index n = points_.cols();
    const double* begin = knots_.data();
    const double* end = begin + n;  // last segment starts at knots_(n-1)
    Index i = static_cast<Index>(std::upper_bound(begin, end, u) - begin) - 1;
    i = std::clamp<Index>(i, 0, n - 1);
    const double h = knots_(i + 1) - knots_(i);
    return {i, knots_(i + 1) - u, u - knots_(i), h};
  }

  Points points_;
  Eigen::VectorXd knots_;
  Points moments_;
};

}  // namespace

bool segments_intersect(const PlanePoint& a0, const PlanePoint& a1, const PlanePoint& b0, const PlanePoint& b1) {
  const double d1 = orient(b0, b1, a0);
  const double d2 = orient(b0, b1, a1);
  const double d3 = orient(a0, a1, b0);
  const double d4 = orient(a0, a1, b1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(b0, b1, a0)) return true;
  if (d2 == 0 && on_segment(b0, b1, a1)) return true;
  if (d3 == 0 && on_segment(a0, a1, b0)) return true;
  if (d4 == 0 && on_segment(a0, a1, b1)) return true;
  return false;
}

double signed_area(const Points& v) {
  const Index n = v.cols();
  double twice = 0.0;
  for (Index i = 0; i < n; ++i) twice += cross(v.col(i), v.col((i + 1) % n));
  return 0.5 * twice;
}

double perimeter(const Points& v) { return edge_lengths(v).sum(); }

Eigen::VectorXd edge_lengths(const Points& v) {
  const Index n = v.cols();
  Eigen::VectorXd out(n);
  for (Index i = 0; i < n; ++i) out(i) = (v.col((i + 1) % n) - v.col(i)).norm();
  return out;
}

bool is_embedded(const Points& v, bool closed) {
  const Index n = v.cols();
  if (n < 3) return false;
  const Index edges = closed ? n : n - 1;
  Eigen::Matrix4Xd box(4, edges);
  for (Index i = 0; i < edges; ++i) {
    const PlanePoint a = v.col(i);
    const PlanePoint b = v.col((i + 1) % n);
    box.col(i) << std::min(a.x(), b.x()), std::max(a.x(), b.x()), std::min(a.y(), b.y()), std::max(a.y(), b.y());
  }
  for (Index i = 0; i < edges; ++i) {
    const PlanePoint a0 = v.col(i);
    const PlanePoint a1 = v.col((i + 1) % n);
    // Adjacent edges only meet at their shared vertex unless the polygon folds back on itself.
    if (closed || i + 1 < edges) {
      const PlanePoint a2 = v.col((i + 2) % n);
      if (cross(a1 - a0, a2 - a1) == 0.0 && (a1 - a0).dot(a2 - a1) < 0.0) return false;
    }
    for (Index j = i + 2; j < edges; ++j) {
      if (closed && i == 0 && j == n - 1) continue;
      if (box(1, i) < box(0, j) || box(1, j) < box(0, i) || box(3, i) < box(2, j) || box(3, j) < box(2, i)) continue;
      if (segments_intersect(a0, a1, v.col(j), v.col((j + 1) % n))) return false;
    }
  }
  return true;
}

void DiscreteCurve::check_basic(const Points& v) {
  const Index n = v.cols();
  if (n < min_vertices)
    throw Error(Errc::invalid_curve, "curve needs at least " + std::to_string(min_vertices) + " vertices, got " +
                                         std::to_string(n));
  if (!v.allFinite()) throw Error(Errc::invalid_curve, "curve has non-finite coordinates");
  for (Index i = 0; i < n; ++i)
    if ((v.col((i + 1) % n) - v.col(i)).squaredNorm() == 0.0)
      throw Error(Errc::invalid_curve, "consecutive vertices coincide at index " + std::to_string(i));
  if (!(signed_area(v) > 0.0))
    throw Error(Errc::invalid_curve, "curve must be counterclockwise with positive enclosed area");
}

DiscreteCurve::DiscreteCurve(Points vertices) : vertices_(std::move(vertices)) {
  check_basic(vertices_);
  if (!is_embedded(vertices_)) throw Error(Errc::invalid_curve, "curve is not embedded (edges intersect)");
}

DiscreteCurve DiscreteCurve::assume_embedded(Points vertices) {
  check_basic(vertices);
  return DiscreteCurve(std::move(vertices), Unchecked{});
}

double length(const DiscreteCurve& curve) { return perimeter(curve.vertices()); }

double enclosed_area(const DiscreteCurve& curve) { return signed_area(curve.vertices()); }

namespace {

// Marches n - 1 chords of length c along the polygon from vertex 0. Each new point is where the
// polygon first leaves the disc of radius c around the previous one. Returns false if the march
// runs past the end.
bool march_chords(const Points& v, double c, Points& out) {
  const Index m = v.cols();
  const Index n = out.cols();
  out.col(0) = v.col(0);
  Index edge = 0;
  double tau = 0.0;
  for (Index k = 1; k < n; ++k) {
    const PlanePoint q = out.col(k - 1);
    while (true) {
      if (edge >= m) return false;
      const PlanePoint a = v.col(edge);
      const PlanePoint d = v.col((edge + 1) % m) - a;
      const PlanePoint w = a - q;
      // |w + s d|^2 = c^2, exit root
      const double A = d.squaredNorm(), B = w.dot(d), C = w.squaredNorm() - c * c;
      const double disc = B * B - A * C;
      const double root = disc >= 0.0 ? (-B + std::sqrt(disc)) / A : -1.0;
      if (root >= tau && root <= 1.0) {
        tau = root;
        out.col(k) = a + root * d;
        break;
      }
      ++edge;
      tau = 0.0;
    }
  }
  return true;
}

}  // namespace

DiscreteCurve resample(const DiscreteCurve& curve, Index n) {
  if (n < DiscreteCurve::min_vertices) throw Error(Errc::domain, "resample needs n >= 16");
  const Points& v = curve.vertices();
  const double total = cumulative_length(v)(v.cols());
  Points out(2, n);
  // closing gap |q_{n-1} - q_0| - c: positive for short chords, negative (or overshoot) at c = L / n
  const auto gap = [&](double c) {
    if (!march_chords(v, c, out)) return -std::numeric_limits<double>::infinity();
    return (out.col(n - 1) - out.col(0)).norm() - c;
  };
  double hi = total / static_cast<double>(n);
  double lo = 0.5 * hi;
  for (int i = 0; i < 60 && !(gap(lo) > 0.0); ++i) lo *= 0.5;
  if (!(gap(lo) > 0.0)) throw Error(Errc::numerical, "resample: no equal-chord sampling found");
  for (int i = 0; i < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  // keep whichever end of the bracket closes better
  const double g_lo = gap(lo);
  const double g_hi = gap(hi);
  if (!(std::abs(g_hi) < std::abs(g_lo))) gap(lo);
  try {
    return DiscreteCurve(std::move(out));
  } catch (const Error& e) {
    throw Error(Errc::numerical, std::string("resampled curve is invalid: ") + e.what());
  }
}

DiscreteCurve resample_smooth(const DiscreteCurve& curve, Index n) {
  if (n < DiscreteCurve::min_vertices) throw Error(Errc::domain, "resample needs n >= 16");
  const PeriodicSpline spline(curve.vertices());
  const auto speed = [&spline](double u) { return spline.derivative(u).norm(); };
  const Eigen::VectorXd& knots = spline.knots();
  const ArclengthTable table(speed, std::span<const double>(knots.data(), static_cast<std::size_t>(knots.size())), 1);
  Points out(2, n);
  out.col(0) = curve.vertex(0);
  for (Index k = 1; k < n; ++k)
    out.col(k) = spline.position(table.parameter(table.total() * static_cast<double>(k) / static_cast<double>(n)));
  try {
    return DiscreteCurve(std::move(out));
  } catch (const Error& e) {
    throw Error(Errc::numerical, std::string("resampled curve is invalid: ") + e.what());
  }
}

ArcChord intrinsic_extrinsic(const DiscreteCurve& curve, Index i, Index j) {
  const Index n = curve.size();
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error(Errc::domain, "vertex index out of range");
  if (i == j) throw Error(Errc::domain, "intrinsic/extrinsic distance needs two distinct vertices");
  const Eigen::VectorXd c = cumulative_length(curve.vertices());
  const double arc = std::abs(c(j) - c(i));
  const double d = (curve.vertex(i) - curve.vertex(j)).norm();
  if (d == 0.0) throw Error(Errc::degenerate, "distinct vertices coincide; curve is not embedded");
  return {std::min(arc, c(n) - arc), d};
}

double distance_to_polygon(const PlanePoint& p, const Points& polygon) {
  const Index n = polygon.cols();
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) best = std::min(best, point_segment_distance(p, polygon.col(i), polygon.col((i + 1) % n)));
  return best;
}

double hausdorff_distance(const DiscreteCurve& a, const DiscreteCurve& b) {
  double worst = 0.0;
  for (Index i = 0; i < a.size(); ++i) worst = std::max(worst, distance_to_polygon(a.vertex(i), b.vertices()));
  for (Index i = 0; i < b.size(); ++i) worst = std::max(worst, distance_to_polygon(b.vertex(i), a.vertices()));
  return worst;
}

double min_separation(const DiscreteCurve& a, const DiscreteCurve& b) {
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < a.size(); ++i) best = std::min(best, distance_to_polygon(a.vertex(i), b.vertices()));
  for (Index i = 0; i < b.size(); ++i) best = std::min(best, distance_to_polygon(b.vertex(i), a.vertices()));
  return best;
}

DiscreteCurve translated(const DiscreteCurve& curve, const PlanePoint& shift) {
  Points v = curve.vertices().colwise() + shift;
  return DiscreteCurve::assume_embedded(std::move(v));
}

DiscreteCurve rotated(const DiscreteCurve& curve, double angle, const PlanePoint& pivot) {
  const Eigen::Matrix2d r = Eigen::Rotation2Dd(angle).toRotationMatrix();
  Points v = (r * (curve.vertices().colwise() - pivot)).colwise() + pivot;
  return DiscreteCurve::assume_embedded(std::move(v));
}

DiscreteCurve scaled(const DiscreteCurve& curve, double factor, const PlanePoint& pivot) {
  if (!(factor > 0.0)) throw Error(Errc::domain, "scale factor must be positive");
  Points v = ((curve.vertices().colwise() - pivot) * factor).colwise() + pivot;
  return DiscreteCurve::assume_embedded(std::move(v));
}

}  // namespace csf
