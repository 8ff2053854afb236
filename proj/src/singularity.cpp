#include "csf/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csf/diagnostics.hpp"

namespace csf {

RoundnessReport roundness(const Points& p) {
  const Index n = p.cols();
  if (n < 3) throw Error(Errc::degenerate, "circle fit needs at least three points");
  // |p|^2 = 2 c . p + (r^2 - |c|^2)
  Eigen::MatrixX3d A(n, 3);
  A.col(0) = 2.0 * p.row(0).transpose();
  A.col(1) = 2.0 * p.row(1).transpose();
  A.col(2).setOnes();
  const Eigen::VectorXd b = p.colwise().squaredNorm().transpose();
  const Eigen::ColPivHouseholderQR<Eigen::MatrixX3d> qr(A);
  if (qr.rank() < 3) throw Error(Errc::degenerate, "circle fit is degenerate (collinear points)");
  const Eigen::Vector3d sol = qr.solve(b);
  RoundnessReport out;
  out.fit_center = sol.head<2>();
  const double r2 = sol(2) + out.fit_center.squaredNorm();
  if (!(r2 > 0.0)) throw Error(Errc::degenerate, "circle fit has no positive radius");
  out.fit_radius = std::sqrt(r2);
  out.max_radial_deviation = ((p.colwise() - out.fit_center).colwise().norm().array() - out.fit_radius).abs().maxCoeff();
  out.deviation_ratio = out.max_radial_deviation / out.fit_radius;
  return out;
}

RoundnessReport roundness(const DiscreteCurve& curve) { return roundness(curve.vertices()); }

Type1Rate type1_rate(const Trajectory& trajectory, double T) {
  Type1Rate out;
  for (const DiagnosticRecord& r : trajectory.records) {
    if (!(r.t < T)) throw Error(Errc::domain, "type-I rate needs every record time below T");
    const double k = r.kappa_max;
    out.times.push_back(r.t);
    out.series.push_back((T - r.t) * k * k);
    out.sup = std::max(out.sup, out.series.back());
  }
  return out;
}

PlanePoint detect_blowup_point(const Trajectory& trajectory) {
  const auto reason = trajectory.stop_reason();
  if (reason == EventKind::stop_tmax) throw Error(Errc::domain, "run stopped at t_max; no singularity approached");
  const auto& r = trajectory.records;
  if (r.empty()) throw Error(Errc::domain, "trajectory has no records");
  const std::size_t first = r.size() > 5 ? r.size() - 5 : 0;
  PlanePoint sum = PlanePoint::Zero();
  double weight = 0.0;
  for (std::size_t k = first; k < r.size(); ++k) {
    const double w = r[k].abs_kappa_max();
    sum += w * r[k].abs_kappa_argmax_point;
    weight += w;
  }
  return sum / weight;
}

DiscreteCurve rescale_curve(const DiscreteCurve& curve, const PlanePoint& x0, double lambda) {
  if (!(lambda > 0.0)) throw Error(Errc::domain, "rescaling factor must be positive");
  Points v = lambda * (curve.vertices().colwise() - x0);
  return DiscreteCurve::assume_embedded(std::move(v));
}

RescaledSlice parabolic_rescale(const Trajectory& trajectory, const RescaleFrame& frame, double t_rescaled) {
  if (!(t_rescaled < 0.0)) throw Error(Errc::domain, "rescaled time must be negative");
  if (!(frame.lambda > 0.0)) throw Error(Errc::domain, "rescaling factor must be positive");
  const double t = frame.T + t_rescaled / (frame.lambda * frame.lambda);
  const InterpolatedCurve c = curve_at_time(trajectory, t);
  return {rescale_curve(c.curve, frame.x0, frame.lambda), t, c.remesh_boundary};
}

Type2Selection type2_point_selection(const Trajectory& trajectory, double T, int k) {
  if (k <= 0) throw Error(Errc::domain, "k must be positive");
  const double cap = T - 1.0 / k;
  Type2Selection best;
  double best_value = -1.0;
  const auto& r = trajectory.records;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].t > cap) continue;
    const double kk = r[i].abs_kappa_max();
    const double value = kk * kk * (cap - r[i].t);
    if (value > best_value) {
      best_value = value;
      best = {r[i].t, i, r[i].abs_kappa_argmax, kk, value};
    }
  }
  if (best_value < 0.0) throw Error(Errc::domain, "no record with t <= T - 1/k = " + std::to_string(cap));
  return best;
}

}  // namespace csf
