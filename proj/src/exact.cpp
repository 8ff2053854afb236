#include "csf/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "csf/arclength.hpp"
#include "csf/singularity.hpp"

namespace csf {

namespace {

constexpr double kPi = std::numbers::pi;

void check_time(const ExactSolutionSpec& spec, double t) {
  if (!std::isfinite(t)) throw Error(Errc::domain, "time must be finite");
  switch (spec.kind) {
    case ExactKind::circle:
      if (!(spec.radius > 0.0)) throw Error(Errc::domain, "circle radius must be positive");
      if (!(t < 0.5 * spec.radius * spec.radius))
        throw Error(Errc::domain, "circle exists only for t < R^2/2, got t = " + std::to_string(t));
      break;
    case ExactKind::paperclip:
      if (!(t < 0.0)) throw Error(Errc::domain, "paperclip exists only for t < 0 (extinct at t = 0)");
      break;
    case ExactKind::grim_reaper:
      if (!(spec.clip > 0.0 && spec.clip < 0.5 * kPi)) throw Error(Errc::domain, "grim reaper clip must lie in (0, pi/2)");
      break;
    case ExactKind::hairclip:
      break;
  }
  if (spec.sample_count < DiscreteCurve::min_vertices) throw Error(Errc::domain, "sample count must be at least 16");
}

// Paperclip boundary on the ray at polar angle phi in [0, pi/2].
struct PaperclipRay {
  double c;       // e^{-t}
  double x_tip;   // arccos(1/c)
  double y_top;   // arccosh(c)

  double value(double x, double y) const { return std::cosh(y) - c * std::cos(x); }
  PlanePoint gradient(double x, double y) const { return {c * std::sin(x), std::sinh(y)}; }

  double radius(double phi) const {
    const double cs = std::cos(phi);
    const double sn = std::sin(phi);
    if (sn <= 0.0) return x_tip;
    if (cs <= 0.0) return y_top;
    double hi = std::min(0.5 * kPi / cs, y_top / sn);
    double lo = 0.0;
    double r = std::min(x_tip / cs, hi);
    for (int iter = 0; iter < 200; ++iter) {
      const double f = value(r * cs, r * sn);
      if (f > 0.0) hi = r; else lo = r;
      const double df = sn * std::sinh(r * sn) + c * cs * std::sin(r * cs);
      double next = df > 0.0 ? r - f / df : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - r) <= 4e-16 * r || hi - lo <= 4e-16 * hi) { r = next; break; }
      r = next;
    }
    return r;
  }

  double radius_derivative(double phi, double r) const {
    const PlanePoint u(std::cos(phi), std::sin(phi));
    const PlanePoint g = gradient(r * u.x(), r * u.y());
    const double radial = g.dot(u);
    const double angular = g.x() * -u.y() + g.y() * u.x();
    return -r * angular / radial;
  }
};

Points sample_paperclip(double t, Index n) {
  if (n % 2 != 0) throw Error(Errc::domain, "paperclip sampling needs an even sample count");
  const double c = std::exp(-t);
  const PaperclipRay ray{c, std::acos(1.0 / c), std::acosh(c)};
  const auto speed = [&ray](double phi) {
    const double r = ray.radius(phi);
    return std::hypot(r, ray.radius_derivative(phi, r));
  };
  const auto breaks = uniform_breaks(0.0, 0.5 * kPi, 512);
  const ArclengthTable table(speed, std::span<const double>(breaks), 1);
  const double total = 4.0 * table.total();
  Points v(2, n);
  for (Index k = 0; k < n; ++k) {
    // Reduce to the first quadrant in integer arithmetic so mirror images are bit-identical.
    Index m = k;
    double sy = 1.0;
    double sx = 1.0;
    if (2 * m > n) { m = n - m; sy = -1.0; }
    if (4 * m > n) { m = n / 2 - m; sx = -1.0; }
    const double s = total * static_cast<double>(m) / static_cast<double>(n);
    double phi;
    if (m == 0) phi = 0.0;
    else if (4 * m == n) phi = 0.5 * kPi;
    else phi = table.parameter(s);
    const double r = ray.radius(phi);
    double x = r * std::cos(phi);
    double y = r * std::sin(phi);
    if (m == 0) { x = ray.x_tip; y = 0.0; }
    if (4 * m == n) { x = 0.0; y = ray.y_top; }
    v.col(k) = PlanePoint(sx * x, sy * y);
  }
  return v;
}

Points sample_grim_reaper(double clip, double t, Index n) {
  const double s_clip = std::asinh(std::tan(clip));
  Points v(2, n);
  for (Index k = 0; k < n; ++k) {
    const double s = -s_clip + 2.0 * s_clip * static_cast<double>(k) / static_cast<double>(n - 1);
    // x = gd(s) makes s the arclength of y = -log cos x.
    v.col(k) = PlanePoint(std::atan(std::sinh(s)), std::log(std::cosh(s)) + t);
  }
  return v;
}

Points sample_hairclip(double t, Index n) {
  const double c = std::exp(-t);
  const auto height = [c](double x) { return std::asinh(c * std::cos(x)); };
  const auto slope = [c](double x) {
    const double w = c * std::cos(x);
    return -c * std::sin(x) / std::sqrt(1.0 + w * w);
  };
  const auto speed = [&slope](double x) { return std::hypot(1.0, slope(x)); };
  const auto breaks = uniform_breaks(-kPi, kPi, 512);
  const ArclengthTable table(speed, std::span<const double>(breaks), 1);
  Points v(2, n);
  for (Index k = 0; k < n; ++k) {
    const double x = k == 0 ? -kPi : (k == n - 1 ? kPi : table.parameter(table.total() * k / static_cast<double>(n - 1)));
    v.col(k) = PlanePoint(x, height(x));
  }
  return v;
}

}  // namespace

Polyline sample(const ExactSolutionSpec& spec, double t) {
  check_time(spec, t);
  const Index n = spec.sample_count;
  switch (spec.kind) {
    case ExactKind::circle: {
      const double r = std::sqrt(spec.radius * spec.radius - 2.0 * t);
      Points v(2, n);
      for (Index i = 0; i < n; ++i) {
        const double th = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        v.col(i) = spec.center + r * PlanePoint(std::cos(th), std::sin(th));
      }
      return {std::move(v), Topology::closed};
    }
    case ExactKind::grim_reaper: return {sample_grim_reaper(spec.clip, t, n), Topology::open};
    case ExactKind::paperclip: return {sample_paperclip(t, n), Topology::closed};
    case ExactKind::hairclip: return {sample_hairclip(t, n), Topology::open};
  }
  throw Error(Errc::domain, "unknown exact solution kind");
}

DiscreteCurve sample_closed(const ExactSolutionSpec& spec, double t) {
  Polyline p = sample(spec, t);
  if (p.is_open()) throw Error(Errc::domain, "grim reaper and hairclip are open curves");
  return DiscreteCurve(std::move(p.points));
}

double implicit_residual(const ExactSolutionSpec& spec, double t, const Points& points) {
  double worst = 0.0;
  const double c = std::exp(-t);
  for (Index i = 0; i < points.cols(); ++i) {
    const double x = points(0, i);
    const double y = points(1, i);
    double r = 0.0;
    switch (spec.kind) {
      case ExactKind::circle:
        r = (points.col(i) - spec.center).norm() - std::sqrt(spec.radius * spec.radius - 2.0 * t);
        break;
      case ExactKind::grim_reaper: r = y + std::log(std::cos(x)) - t; break;
      case ExactKind::paperclip: r = std::cosh(y) - c * std::cos(x); break;
      case ExactKind::hairclip: r = std::sinh(y) - c * std::cos(x); break;
    }
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double normal_velocity_residual(const ExactSolutionSpec& spec, double t, double h, Index end_margin) {
  if (!(h > 0.0)) throw Error(Errc::domain, "time step h must be positive");
  const Polyline now = sample(spec, t);
  const Polyline before = sample(spec, t - h);
  const Polyline after = sample(spec, t + h);
  const GeometryFields g = polyline_fields(now.points, now.topology);
  const Index n = now.points.cols();
  const Index skip = now.is_open() ? end_margin : 0;
  double worst = 0.0;
  for (Index i = skip; i < n - skip; ++i) {
    const PlanePoint velocity = (after.points.col(i) - before.points.col(i)) / (2.0 * h);
    worst = std::max(worst, std::abs(velocity.dot(g.normal.col(i)) - g.kappa(i)));
  }
  return worst;
}

double paperclip_extinction_roundness(double t, Index n) {
  ExactSolutionSpec spec;
  spec.kind = ExactKind::paperclip;
  spec.sample_count = n;
  return roundness(sample_closed(spec, t)).deviation_ratio;
}

double paperclip_half_height(double t) {
  if (!(t < 0.0)) throw Error(Errc::domain, "paperclip exists only for t < 0");
  return std::acosh(std::exp(-t));
}

PlanePoint grim_reaper_point(double x, double t) {
  if (!(std::abs(x) < 0.5 * kPi)) throw Error(Errc::domain, "grim reaper is defined for |x| < pi/2");
  return {x, -std::log(std::cos(x)) + t};
}

}  // namespace csf
