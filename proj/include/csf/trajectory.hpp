#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "csf/curve.hpp"

namespace csf {

/// A point (x0, t0) in space-time: centre of kernels, densities and rescalings.
struct SpacetimePoint {
  PlanePoint x0 = PlanePoint::Zero();
  double t0 = 0.0;
};

/// One row of monitored scalars at time t.
struct DiagnosticRecord {
  double t = 0.0;
  double L = 0.0;
  double A = 0.0;
  double int_kappa_sq = 0.0;
  double kappa_max = 0.0;
  double kappa_min = 0.0;
  double total_abs_curv = 0.0;
  int inflections = 0;
  std::optional<double> R_ratio;
  std::optional<double> harnack_F_max;
  std::optional<double> huisken_value;
  std::optional<double> shrinker_residual;

  // Bookkeeping kept in memory only (not part of records.csv).
  std::size_t step = 0;
  bool after_remesh = false;            // the step that produced this record ended in a remesh
  Index abs_kappa_argmax = 0;           // vertex of largest |kappa| (lowest index among near-ties)
  PlanePoint abs_kappa_argmax_point = PlanePoint::Zero();

  double abs_kappa_max() const { return std::max(std::abs(kappa_max), std::abs(kappa_min)); }
};

struct FlowState {
  DiscreteCurve curve;
  double t = 0.0;
};

struct Snapshot {
  std::size_t step = 0;
  FlowState state;
};

enum class EventKind { remesh, stop_curvature, stop_area, stop_tmax, stop_embeddedness, stop_validity };

constexpr std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::remesh: return "remesh";
    case EventKind::stop_curvature: return "stop_curvature";
    case EventKind::stop_area: return "stop_area";
    case EventKind::stop_tmax: return "stop_tmax";
    case EventKind::stop_embeddedness: return "stop_embeddedness";
    case EventKind::stop_validity: return "stop_validity";
  }
  return "unknown";
}

constexpr bool is_stop(EventKind k) { return k != EventKind::remesh; }

struct Event {
  double t = 0.0;
  EventKind kind = EventKind::remesh;
  std::size_t step = 0;
};

/// Time-stamped curves, the event log and per-step diagnostics of one run.
struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<Event> events;
  std::vector<DiagnosticRecord> records;
  std::optional<SpacetimePoint> huisken_center;  // centre used for records' huisken_value
  double time_origin = 0.0;                      // start time of the run (Harnack clock)

  std::optional<EventKind> stop_reason() const {
    for (auto it = events.rbegin(); it != events.rend(); ++it)
      if (is_stop(it->kind)) return it->kind;
    return std::nullopt;
  }
  double t_begin() const { return snapshots.front().state.t; }
  double t_end() const { return snapshots.back().state.t; }
  /// True when a remesh happened in (t_a, t_b]. A remesh is stamped with the time of the state
  /// it produced, so this also works on trajectories read back from disk.
  bool remesh_between(double t_a, double t_b) const {
    for (const Event& e : events)
      if (e.kind == EventKind::remesh && e.t > t_a && e.t <= t_b) return true;
    return false;
  }
};

}  // namespace csf
