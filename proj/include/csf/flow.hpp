#pragma once

#include <cstddef>
#include <limits>
#include <optional>

#include "csf/diagnostics.hpp"
#include "csf/geometry.hpp"
#include "csf/trajectory.hpp"

namespace csf {

struct StepControl {
  double cfl = 0.25;
  double dt_max = 1e-3;
  double remesh_ratio = 3.0;  // remesh when max/min edge length exceeds this
  // When set, the initial curve is resampled to round(L / spacing) vertices before the run;
  // otherwise ("auto") the input vertex count is kept. The count never changes during a run.
  std::optional<double> target_vertex_spacing;
  double kappa_stop = 1e4;
  double area_stop = 1e-10;
  double t_max = std::numeric_limits<double>::max();

  void validate() const;
};

struct RecordPolicy {
  std::size_t snapshot_stride = 100;
  std::size_t record_stride = 1;
  bool distance_ratio_at_snapshots = false;
  bool harnack = false;  // harnack_F_max on records while the curve is convex
  std::optional<SpacetimePoint> huisken_center;
  bool check_embedded_at_snapshots = true;
};

/// dt = min(dt_max, cfl h_min^2, t_max - t).
double stable_dt(const DiscreteCurve& curve, double t, const StepControl& control);

/// One explicit step p_i += dt kappa_i N_i. Throws Errc::numerical if the result self-intersects.
FlowState step(const FlowState& state, const StepControl& control);

/// Same update with a caller-chosen dt and no embeddedness test.
FlowState step_by(const FlowState& state, const GeometryFields& fields, double dt);

/// Run until a stop condition. Stops are tested before every step in the order curvature,
/// area, time. A self-intersection found at a snapshot ends the run with stop_embeddedness.
Trajectory evolve(const DiscreteCurve& initial, const StepControl& control, const RecordPolicy& policy = {},
                  double t0 = 0.0);

/// A(0) / 2 pi.
double extinction_time_estimate(const DiscreteCurve& curve);

/// Extinction time from the last record: t + 1 / (2 kappa_max^2), the round-circle law.
double extinction_time_from_stop(const Trajectory& trajectory);

enum class KappaMinBound {
  displayed,  // kappa0 / (1 - 2 t kappa0^2)
  ode,        // kappa0 / sqrt(1 - 2 t kappa0^2), the comparison ODE kappa' = kappa^3
};

double kappa_min_bound(double kappa_min0, double t, KappaMinBound form);

/// Every record has kappa_min >= (1 - slack) * bound while the bound is finite, and kappa_min is
/// nondecreasing within `monotone_slack`. Throws Errc::domain if the first record is not convex.
CheckReport kappa_min_bound_check(const Trajectory& trajectory, KappaMinBound form = KappaMinBound::displayed,
                                  double slack = 1e-2, double monotone_slack = 1e-6);

}  // namespace csf
