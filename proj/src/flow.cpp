#include "csf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace csf {

void StepControl::validate() const {
  if (!(cfl > 0.0 && cfl <= 0.5)) throw Error(Errc::config, "cfl must lie in (0, 0.5]");
  if (!(dt_max > 0.0)) throw Error(Errc::config, "dt_max must be positive");
  if (!(remesh_ratio > 1.0)) throw Error(Errc::config, "remesh_ratio must exceed 1");
  if (target_vertex_spacing && !(*target_vertex_spacing > 0.0))
    throw Error(Errc::config, "target vertex spacing must be positive");
  if (!(kappa_stop > 0.0)) throw Error(Errc::config, "kappa_stop must be positive");
  if (!(area_stop > 0.0)) throw Error(Errc::config, "area_stop must be positive");
  if (!(t_max > 0.0)) throw Error(Errc::config, "t_max must be positive");
}

double stable_dt(const DiscreteCurve& curve, double t, const StepControl& control) {
  const double h = edge_lengths(curve.vertices()).minCoeff();
  return std::min({control.dt_max, control.cfl * h * h, control.t_max - t});
}

namespace {

FlowState advance(const FlowState& state, const Eigen::VectorXd& kappa, const Points& normal, double dt) {
  Points v = state.curve.vertices() + dt * (normal.array().rowwise() * kappa.transpose().array()).matrix();
  return {DiscreteCurve::assume_embedded(std::move(v)), state.t + dt};
}

}  // namespace

FlowState step_by(const FlowState& state, const GeometryFields& fields, double dt) {
  return advance(state, fields.kappa, fields.normal, dt);
}

FlowState step(const FlowState& state, const StepControl& control) {
  const double dt = stable_dt(state.curve, state.t, control);
  if (!(dt > 0.0)) throw Error(Errc::domain, "no time left before t_max");
  FlowState next = step_by(state, geometry_fields(state.curve), dt);
  if (dt == control.t_max - state.t) next.t = control.t_max;
  if (!is_embedded(next.curve)) throw Error(Errc::numerical, "curve self-intersects after step at t = " + std::to_string(state.t));
  return next;
}

Trajectory evolve(const DiscreteCurve& initial, const StepControl& control, const RecordPolicy& policy, double t0) {
  control.validate();
  if (policy.snapshot_stride == 0 || policy.record_stride == 0) throw Error(Errc::config, "strides must be positive");

  Trajectory traj;
  traj.time_origin = t0;
  traj.huisken_center = policy.huisken_center;

  FlowState state{initial, t0};
  if (control.target_vertex_spacing) {
    const auto n = static_cast<Index>(std::llround(length(initial) / *control.target_vertex_spacing));
    state.curve = resample_smooth(initial, std::max(n, DiscreteCurve::min_vertices));
  }
  const Index n = state.curve.size();

  std::size_t step_count = 0;
  bool remeshed = false;
  Eigen::VectorXd edges = edge_lengths(state.curve.vertices());
  while (true) {
    const CurvatureVector cv = curvature_vector(state.curve);
    std::optional<EventKind> stop;
    if (cv.max_abs_kappa >= control.kappa_stop) stop = EventKind::stop_curvature;
    else if (enclosed_area(state.curve) <= control.area_stop) stop = EventKind::stop_area;
    else if (state.t >= control.t_max) stop = EventKind::stop_tmax;

    const bool snapshot = stop || step_count % policy.snapshot_stride == 0;
    if (snapshot && step_count > 0 && policy.check_embedded_at_snapshots && !is_embedded(state.curve))
      stop = EventKind::stop_embeddedness;

    if (snapshot || step_count % policy.record_stride == 0) {
      RecordOptions opts;
      opts.distance_ratio = snapshot && policy.distance_ratio_at_snapshots && stop != EventKind::stop_embeddedness;
      if (policy.huisken_center && state.t < policy.huisken_center->t0) opts.huisken_center = policy.huisken_center;
      if (policy.harnack) opts.harnack_time = state.t - t0;
      DiagnosticRecord r = make_record(state.curve, geometry_fields(state.curve), state.t, opts);
      r.step = step_count;
      r.after_remesh = remeshed;
      traj.records.push_back(std::move(r));
    }
    if (snapshot) traj.snapshots.push_back({step_count, state});
    if (stop) {
      traj.events.push_back({state.t, *stop, step_count});
      break;
    }

    const double h = edges.minCoeff();
    const double remaining = control.t_max - state.t;
    const double dt = std::min({control.dt_max, control.cfl * h * h, remaining});
    FlowState next = advance(state, cv.kappa, cv.normal, dt);
    if (dt == remaining) next.t = control.t_max;
    ++step_count;

    edges = edge_lengths(next.curve.vertices());
    remeshed = edges.maxCoeff() > control.remesh_ratio * edges.minCoeff();
    if (remeshed) {
      try {
        next.curve = resample_smooth(next.curve, n);
      } catch (const Error&) {
        traj.snapshots.push_back({step_count, next});
        traj.events.push_back({next.t, EventKind::stop_embeddedness, step_count});
        break;
      }
      traj.events.push_back({next.t, EventKind::remesh, step_count});
      edges = edge_lengths(next.curve.vertices());
    }
    state = std::move(next);
  }
  return traj;
}

double extinction_time_estimate(const DiscreteCurve& curve) {
  return enclosed_area(curve) / (2.0 * std::numbers::pi);
}

double extinction_time_from_stop(const Trajectory& trajectory) {
  if (trajectory.records.empty()) throw Error(Errc::domain, "trajectory has no records");
  const DiagnosticRecord& last = trajectory.records.back();
  const double k = last.abs_kappa_max();
  return last.t + 0.5 / (k * k);
}

double kappa_min_bound(double kappa_min0, double t, KappaMinBound form) {
  const double denom = 1.0 - 2.0 * t * kappa_min0 * kappa_min0;
  if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
  return form == KappaMinBound::displayed ? kappa_min0 / denom : kappa_min0 / std::sqrt(denom);
}

CheckReport kappa_min_bound_check(const Trajectory& trajectory, KappaMinBound form, double slack,
                                  double monotone_slack) {
  const auto& r = trajectory.records;
  if (r.empty()) throw Error(Errc::domain, "trajectory has no records");
  const double k0 = r.front().kappa_min;
  if (!(k0 > 0.0)) throw Error(Errc::domain, "kappa_min bound needs a convex initial curve");
  CheckReport report{form == KappaMinBound::displayed ? "kappa_min_bound" : "kappa_min_bound_ode"};
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double bound = kappa_min_bound(k0, r[k].t - r.front().t, form);
    if (std::isfinite(bound)) report.observe(r[k].t, (1.0 - slack) * bound, r[k].kappa_min);
    if (k > 0) report.observe(r[k].t, r[k - 1].kappa_min - r[k].kappa_min, monotone_slack);
  }
  return report;
}

}  // namespace csf
