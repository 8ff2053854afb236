#include "csf/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace csf {

namespace {

constexpr double kPi = std::numbers::pi;

int sign_changes(const Eigen::VectorXd& kappa) {
  const Index n = kappa.size();
  int last = 0;
  Index first_nonzero = -1;
  for (Index i = 0; i < n; ++i)
    if (kappa(i) != 0.0) {
      first_nonzero = i;
      break;
    }
  if (first_nonzero < 0) return 0;
  int changes = 0;
  last = kappa(first_nonzero) > 0.0 ? 1 : -1;
  for (Index k = 1; k <= n; ++k) {
    const double v = kappa((first_nonzero + k) % n);
    if (v == 0.0) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (s != last) ++changes;
    last = s;
  }
  return changes;
}

double tau_of(const SpacetimePoint& center, double t) {
  const double tau = center.t0 - t;
  if (!(tau > 0.0)) throw Error(Errc::domain, "the backwards heat kernel needs t < t0");
  return tau;
}

}  // namespace

DiagnosticRecord make_record(const DiscreteCurve& curve, const GeometryFields& g, double t, const RecordOptions& options) {
  DiagnosticRecord r;
  r.t = t;
  r.L = length(curve);
  r.A = enclosed_area(curve);
  r.int_kappa_sq = (g.kappa.array().square() * g.ds.array()).sum();
  r.kappa_max = g.kappa.maxCoeff();
  r.kappa_min = g.kappa.minCoeff();
  r.total_abs_curv = (g.kappa.array().abs() * g.ds.array()).sum();
  r.inflections = sign_changes(g.kappa);

  const double top = g.kappa.cwiseAbs().maxCoeff();
  for (Index i = 0; i < g.size(); ++i)
    if (std::abs(g.kappa(i)) >= top * (1.0 - 1e-9)) {
      r.abs_kappa_argmax = i;
      break;
    }
  r.abs_kappa_argmax_point = curve.vertex(r.abs_kappa_argmax);

  if (options.distance_ratio) r.R_ratio = distance_ratio(curve).value;
  if (options.huisken_center && t < options.huisken_center->t0)
    r.huisken_value = huisken_functional(curve, *options.huisken_center, t);
  if (options.harnack_time && r.kappa_min > 0.0) r.harnack_F_max = harnack_quantity(g, *options.harnack_time).max;
  if (options.shrinker) r.shrinker_residual = shrinker_residual(curve);
  return r;
}

DiagnosticRecord make_record(const DiscreteCurve& curve, double t, const RecordOptions& options) {
  return make_record(curve, geometry_fields(curve), t, options);
}

double heat_kernel(const PlanePoint& x, const SpacetimePoint& center, double t) {
  const double tau = tau_of(center, t);
  return std::exp(-(x - center.x0).squaredNorm() / (4.0 * tau)) / std::sqrt(4.0 * kPi * tau);
}

double huisken_functional(const Points& vertices, Topology topology, const SpacetimePoint& center, double t) {
  const double tau = tau_of(center, t);
  const double cutoff = 144.0 * tau;
  const double norm = 1.0 / std::sqrt(4.0 * kPi * tau);
  const Index n = vertices.cols();
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double r2 = (vertices.col(i) - center.x0).squaredNorm();
    if (r2 > cutoff) continue;
    double ds;
    if (topology == Topology::closed) {
      ds = 0.5 * ((vertices.col((i + 1) % n) - vertices.col(i)).norm() + (vertices.col(i) - vertices.col((i + n - 1) % n)).norm());
    } else {
      ds = 0.0;
      if (i > 0) ds += 0.5 * (vertices.col(i) - vertices.col(i - 1)).norm();
      if (i + 1 < n) ds += 0.5 * (vertices.col(i + 1) - vertices.col(i)).norm();
    }
    sum += norm * std::exp(-r2 / (4.0 * tau)) * ds;
  }
  return sum;
}

double huisken_functional(const DiscreteCurve& curve, const SpacetimePoint& center, double t) {
  return huisken_functional(curve.vertices(), Topology::closed, center, t);
}

double huisken_rate(const DiscreteCurve& curve, const SpacetimePoint& center, double t) {
  const double tau = tau_of(center, t);
  const GeometryFields g = geometry_fields(curve);
  double sum = 0.0;
  for (Index i = 0; i < curve.size(); ++i) {
    const PlanePoint rel = curve.vertex(i) - center.x0;
    if (rel.squaredNorm() > 144.0 * tau) continue;
    const double w = g.kappa(i) + rel.dot(g.normal.col(i)) / (2.0 * tau);
    sum += w * w * heat_kernel(curve.vertex(i), center, t) * g.ds(i);
  }
  return -sum;
}

DistanceRatio distance_ratio(const DiscreteCurve& curve) {
  const Points& v = curve.vertices();
  const Index n = v.cols();
  Eigen::VectorXd c(n + 1);
  c(0) = 0.0;
  for (Index i = 0; i < n; ++i) c(i + 1) = c(i) + (v.col((i + 1) % n) - v.col(i)).norm();
  const double L = c(n);
  DistanceRatio best;
  best.value = 1.0;
  double best_pair = -1.0;
  for (Index i = 0; i < n; ++i) {
    const double xi = v(0, i);
    const double yi = v(1, i);
    for (Index j = i + 1; j < n; ++j) {
      const double dx = v(0, j) - xi;
      const double dy = v(1, j) - yi;
      const double d = std::sqrt(dx * dx + dy * dy);
      const double arc = c(j) - c(i);
      const double ell = std::min(arc, L - arc);
      const double ratio = L * std::sin(kPi * ell / L) / (kPi * d);
      if (ratio > best_pair) {
        best_pair = ratio;
        best.i = i;
        best.j = j;
      }
    }
  }
  best.value = std::max(1.0, best_pair);
  return best;
}

HarnackField harnack_quantity(const GeometryFields& g, double t) {
  HarnackField out;
  out.F.resize(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    const double k = g.kappa(i);
    if (!(k > 0.0)) throw Error(Errc::domain, "the Harnack quantity needs a strictly convex curve");
    const double fs = g.kappa_s(i) / k;
    const double ft = (g.kappa_ss(i) + k * k * k) / k;
    out.F(i) = t * (fs * fs - ft);
  }
  out.max = out.F.maxCoeff();
  return out;
}

HarnackField harnack_quantity(const DiscreteCurve& curve, double t) { return harnack_quantity(geometry_fields(curve), t); }

Eigen::VectorXd harnack_z(const GeometryFields& g) {
  Eigen::VectorXd z(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    const double k = g.kappa(i);
    const double kt = g.kappa_ss(i) + k * k * k;
    z(i) = kt / k - (g.kappa_s(i) * g.kappa_s(i)) / (k * k);
  }
  return z;
}

AbsCurvature total_abs_curvature(const GeometryFields& g) {
  return {(g.kappa.array().abs() * g.ds.array()).sum(), sign_changes(g.kappa)};
}

AbsCurvature total_abs_curvature(const DiscreteCurve& curve) { return total_abs_curvature(geometry_fields(curve)); }

double shrinker_residual(const DiscreteCurve& curve) {
  const GeometryFields g = geometry_fields(curve);
  double worst = 0.0;
  for (Index i = 0; i < curve.size(); ++i)
    worst = std::max(worst, std::abs(g.kappa(i) + 0.5 * curve.vertex(i).dot(g.normal.col(i))));
  return worst;
}

InterpolatedCurve curve_at_time(const Trajectory& traj, double t) {
  const auto& snaps = traj.snapshots;
  if (snaps.empty()) throw Error(Errc::domain, "trajectory has no snapshots");
  const double span_tol = 1e-12 * std::max(1.0, std::abs(traj.t_end()));
  if (t < traj.t_begin() - span_tol || t > traj.t_end() + span_tol)
    throw Error(Errc::domain, "time " + std::to_string(t) + " outside the trajectory span");
  const auto it = std::lower_bound(snaps.begin(), snaps.end(), t,
                                   [](const Snapshot& s, double value) { return s.state.t < value; });
  if (it == snaps.end()) return {snaps.back().state.curve, false, false};
  if (it == snaps.begin() || it->state.t == t) return {it->state.curve, false, false};
  const Snapshot& hi = *it;
  const Snapshot& lo = *(it - 1);
  const double w = (t - lo.state.t) / (hi.state.t - lo.state.t);
  if (lo.state.curve.size() != hi.state.curve.size() || traj.remesh_between(lo.state.t, hi.state.t))
    return {w < 0.5 ? lo.state.curve : hi.state.curve, false, true};
  Points v = (1.0 - w) * lo.state.curve.vertices() + w * hi.state.curve.vertices();
  return {DiscreteCurve::assume_embedded(std::move(v)), true, false};
}

std::vector<DiagnosticRecord> snapshot_records(const Trajectory& traj, const RecordOptions& options) {
  std::vector<DiagnosticRecord> out;
  out.reserve(traj.snapshots.size());
  const bool convex_start = !traj.snapshots.empty() && geometry_fields(traj.snapshots.front().state.curve).kappa.minCoeff() > 0.0;
  for (const Snapshot& s : traj.snapshots) {
    RecordOptions o = options;
    if (convex_start && !o.harnack_time) o.harnack_time = s.state.t - traj.time_origin;
    if (o.huisken_center && !(s.state.t < o.huisken_center->t0)) o.huisken_center.reset();
    DiagnosticRecord r = make_record(s.state.curve, s.state.t, o);
    r.step = s.step;
    out.push_back(r);
  }
  for (std::size_t k = 1; k < out.size(); ++k) out[k].after_remesh = traj.remesh_between(out[k - 1].t, out[k].t);
  return out;
}

// ---------------------------------------------------------------------------------------------

namespace {

/// Visit consecutive record pairs. Time-derivative checks skip pairs that straddle a remesh;
/// monotonicity checks keep them and rely on their slack.
template <typename Fn>
void for_each_pair(const Trajectory& traj, CheckReport& report, bool skip_remesh, Fn&& fn) {
  const auto& r = traj.records;
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    if (skip_remesh && traj.remesh_between(r[k].t, r[k + 1].t)) {
      ++report.skipped;
      continue;
    }
    fn(r[k], r[k + 1]);
  }
}

}  // namespace

CheckReport area_law_check(const Trajectory& traj, double tolerance) {
  CheckReport report{"area_law"};
  if (traj.records.empty()) return report;
  const DiagnosticRecord& first = traj.records.front();
  for (const DiagnosticRecord& r : traj.records) {
    const double err = std::abs(r.A - first.A + 2.0 * kPi * (r.t - first.t)) / first.A;
    report.observe(r.t, err, tolerance);
  }
  return report;
}

CheckReport area_rate_check(const Trajectory& traj, double tolerance) {
  CheckReport report{"area_rate"};
  for_each_pair(traj, report, true, [&](const DiagnosticRecord& a, const DiagnosticRecord& b) {
    const double rate = (b.A - a.A) / (b.t - a.t);
    report.observe(a.t, std::abs(rate + 2.0 * kPi) / (2.0 * kPi), tolerance);
  });
  return report;
}

CheckReport length_dissipation_check(const Trajectory& traj, double tolerance, double min_rate) {
  CheckReport report{"length_dissipation"};
  const auto& r = traj.records;
  for (std::size_t k = 1; k + 1 < r.size(); ++k) {
    if (traj.remesh_between(r[k - 1].t, r[k + 1].t)) {
      ++report.skipped;
      continue;
    }
    const double rate = (r[k + 1].L - r[k - 1].L) / (r[k + 1].t - r[k - 1].t);
    if (!(std::abs(rate) > min_rate)) continue;
    report.observe(r[k].t, std::abs(rate + r[k].int_kappa_sq) / r[k].int_kappa_sq, tolerance);
  }
  return report;
}

CheckReport length_monotone_check(const Trajectory& traj) {
  CheckReport report{"length_monotone"};
  for_each_pair(traj, report, true, [&](const DiagnosticRecord& a, const DiagnosticRecord& b) {
    // strict: the increment must be at most minus the smallest denormal
    report.observe(b.t, b.L - a.L, -std::numeric_limits<double>::denorm_min());
  });
  return report;
}

CheckReport total_abs_curvature_check(const Trajectory& traj, double slack, double convex_tolerance) {
  CheckReport report{"total_abs_curvature"};
  for_each_pair(traj, report, false, [&](const DiagnosticRecord& a, const DiagnosticRecord& b) {
    report.observe(b.t, b.total_abs_curv - a.total_abs_curv, slack);
  });
  for (const DiagnosticRecord& r : traj.records)
    if (r.kappa_min > 0.0) report.observe(r.t, std::abs(r.total_abs_curv - 2.0 * kPi), convex_tolerance);
  return report;
}

CheckReport distance_ratio_monotonicity_check(const Trajectory& traj, double slack) {
  CheckReport report{"distance_ratio_monotone"};
  std::vector<const DiagnosticRecord*> rows;
  for (const DiagnosticRecord& r : traj.records)
    if (r.R_ratio) rows.push_back(&r);
  std::vector<DiagnosticRecord> computed;
  if (rows.empty()) {
    RecordOptions o;
    o.distance_ratio = true;
    computed = snapshot_records(traj, o);
    for (const DiagnosticRecord& r : computed) rows.push_back(&r);
  }
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    report.observe(rows[k + 1]->t, *rows[k + 1]->R_ratio - *rows[k]->R_ratio, slack);
  }
  for (const DiagnosticRecord* r : rows) report.observe(r->t, 1.0 - 1e-9 - *r->R_ratio, 0.0);
  return report;
}

CheckReport harnack_check(const Trajectory& traj, double bound) {
  CheckReport report{"harnack"};
  for (const DiagnosticRecord& r : traj.records)
    if (r.harnack_F_max) report.observe(r.t, *r.harnack_F_max, bound);
  return report;
}

HuiskenReport huisken_monotonicity_check(const Trajectory& traj, const SpacetimePoint& center, double slack,
                                         double rate_tolerance, double min_rate) {
  if (traj.snapshots.empty()) throw Error(Errc::domain, "trajectory has no snapshots");
  if (!(center.t0 > traj.t_end()))
    throw Error(Errc::domain, "Huisken centre time must lie after the end of the trajectory");
  HuiskenReport out;
  out.monotone.name = "huisken_monotone";
  out.rate.name = "huisken_rate";
  const auto& snaps = traj.snapshots;
  for (const Snapshot& s : snaps) {
    out.times.push_back(s.state.t);
    out.values.push_back(huisken_functional(s.state.curve, center, s.state.t));
  }
  for (std::size_t k = 0; k + 1 < snaps.size(); ++k) {
    out.monotone.observe(out.times[k + 1], out.values[k + 1] - out.values[k], slack);
  }
  const bool same_center = traj.huisken_center && traj.huisken_center->t0 == center.t0 &&
                           traj.huisken_center->x0 == center.x0;
  if (same_center) {
    for_each_pair(traj, out.monotone, false, [&](const DiagnosticRecord& a, const DiagnosticRecord& b) {
      if (a.huisken_value && b.huisken_value) out.monotone.observe(b.t, *b.huisken_value - *a.huisken_value, slack);
    });
  }
  for (std::size_t k = 1; k + 1 < snaps.size(); ++k) {
    if (traj.remesh_between(snaps[k - 1].state.t, snaps[k + 1].state.t)) {
      ++out.rate.skipped;
      continue;
    }
    const double fd = (out.values[k + 1] - out.values[k - 1]) / (out.times[k + 1] - out.times[k - 1]);
    const double rate = huisken_rate(snaps[k].state.curve, center, snaps[k].state.t);
    if (!(std::abs(rate) > min_rate)) continue;
    out.rate.observe(out.times[k], std::abs(fd - rate) / std::abs(rate), rate_tolerance);
  }
  return out;
}

double gaussian_density(const Trajectory& traj, const SpacetimePoint& center, double r) {
  if (!(r > 0.0)) throw Error(Errc::domain, "density scale r must be positive");
  const double t = center.t0 - r * r;
  const InterpolatedCurve c = curve_at_time(traj, t);
  return huisken_functional(c.curve, center, t);
}

}  // namespace csf
