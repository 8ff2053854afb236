#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csf/geometry.hpp"
#include "csf/trajectory.hpp"

namespace csf {

// ---------------------------------------------------------------------------------------------
// Check reports

struct Violation {
  double t = 0.0;
  double value = 0.0;
  double limit = 0.0;
};

/// Outcome of one diagnostic check. `worst_margin` is the smallest (limit - value) seen, so a
/// negative margin means the check failed.
struct CheckReport {
  CheckReport() = default;
  explicit CheckReport(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  bool passed = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::vector<Violation> violations;

  /// Record one comparison of `value` against an upper `limit`.
  void observe(double t, double value, double limit) {
    ++checked;
    const double margin = limit - value;
    if (margin < worst_margin) worst_margin = margin;
    if (!(margin >= 0.0)) {
      passed = false;
      if (violations.size() < 64) violations.push_back({t, value, limit});
    }
  }
};

// ---------------------------------------------------------------------------------------------
// Per-curve quantities

struct RecordOptions {
  bool distance_ratio = false;
  std::optional<SpacetimePoint> huisken_center;
  std::optional<double> harnack_time;  // elapsed flow time; Harnack is only evaluated on convex curves
  bool shrinker = false;
};

DiagnosticRecord make_record(const DiscreteCurve& curve, const GeometryFields& fields, double t,
                             const RecordOptions& options = {});
DiagnosticRecord make_record(const DiscreteCurve& curve, double t, const RecordOptions& options = {});

/// Backwards heat kernel (4 pi (t0 - t))^{-1/2} exp(-|x - x0|^2 / (4 (t0 - t))).
double heat_kernel(const PlanePoint& x, const SpacetimePoint& center, double t);

/// Quadrature sum_i rho(p_i, t) ds_i; the kernel is cut off beyond 12 sqrt(t0 - t).
double huisken_functional(const DiscreteCurve& curve, const SpacetimePoint& center, double t);
double huisken_functional(const Points& vertices, Topology topology, const SpacetimePoint& center, double t);

/// Right-hand side of the monotonicity identity:
/// -sum_i |kappa_i + <p_i - x0, N_i> / (2 (t0 - t))|^2 rho ds_i.
double huisken_rate(const DiscreteCurve& curve, const SpacetimePoint& center, double t);

struct DistanceRatio {
  double value = 1.0;
  Index i = 0;
  Index j = 1;
};

/// sup over vertex pairs of (L / (pi d)) sin(pi l / L), never below 1: pairs of points closing in
/// on each other along one edge have ratio tending to 1, so 1 is part of the supremum.
DistanceRatio distance_ratio(const DiscreteCurve& curve);

struct HarnackField {
  Eigen::VectorXd F;
  double max = 0.0;
};

/// F = t (f_s^2 - f_t) with f = log kappa and f_t = (kappa_ss + kappa^3) / kappa.
HarnackField harnack_quantity(const DiscreteCurve& curve, double t);
HarnackField harnack_quantity(const GeometryFields& fields, double t);

/// Z = kappa_t / kappa - kappa_s^2 / kappa^2 with kappa_t from the evolution equation.
Eigen::VectorXd harnack_z(const GeometryFields& fields);

struct AbsCurvature {
  double value = 0.0;
  int inflections = 0;
};

AbsCurvature total_abs_curvature(const DiscreteCurve& curve);
AbsCurvature total_abs_curvature(const GeometryFields& fields);

/// max_i |kappa_i + <p_i, N_i> / 2|; zero on the circle of radius sqrt 2 about the origin.
double shrinker_residual(const DiscreteCurve& curve);

// ---------------------------------------------------------------------------------------------
// Trajectory access

struct InterpolatedCurve {
  DiscreteCurve curve;
  bool interpolated = false;    // blended from two snapshots
  bool remesh_boundary = false; // bracketing snapshots straddle a remesh; nearest one used
};

/// Curve at time t: linear in vertex positions between bracketing snapshots of equal vertex
/// count with no remesh in between, otherwise the nearer snapshot.
InterpolatedCurve curve_at_time(const Trajectory& trajectory, double t);

/// Recompute records for every snapshot (used for trajectories loaded from disk).
std::vector<DiagnosticRecord> snapshot_records(const Trajectory& trajectory, const RecordOptions& options);

// ---------------------------------------------------------------------------------------------
// Trajectory checks. Checks on time derivatives (rates, dissipation, strict length decrease)
// skip record pairs that straddle a remesh event and count them in `skipped`; monotonicity
// checks with a slack keep them.

/// |A(t) - A(0) + 2 pi t| / A(0) <= tolerance for every record.
CheckReport area_law_check(const Trajectory& trajectory, double tolerance = 1e-2);
/// dA/dt = -2 pi within a relative tolerance between consecutive records.
CheckReport area_rate_check(const Trajectory& trajectory, double tolerance = 1e-2);
/// Centred difference of L against -int kappa^2 ds where |dL/dt| > min_rate.
CheckReport length_dissipation_check(const Trajectory& trajectory, double tolerance = 0.05, double min_rate = 1e-3);
/// L strictly decreasing between consecutive records.
CheckReport length_monotone_check(const Trajectory& trajectory);
/// int |kappa| ds nonincreasing within `slack`; on convex records also 2 pi within `convex_tolerance`.
CheckReport total_abs_curvature_check(const Trajectory& trajectory, double slack = 1e-4,
                                      double convex_tolerance = 1e-3);
/// R(t) nonincreasing within `slack` per record.
CheckReport distance_ratio_monotonicity_check(const Trajectory& trajectory, double slack = 1e-4);
/// max F <= bound on every record where the Harnack quantity is defined.
CheckReport harnack_check(const Trajectory& trajectory, double bound = 0.5 + 1e-2);

struct HuiskenReport {
  CheckReport monotone;
  CheckReport rate;
  std::vector<double> times;
  std::vector<double> values;
};

/// Monotonicity of the Huisken functional across snapshots (and dense records when they were
/// recorded with the same centre), plus the rate identity at snapshots away from remeshes.
HuiskenReport huisken_monotonicity_check(const Trajectory& trajectory, const SpacetimePoint& center,
                                         double slack = 1e-5, double rate_tolerance = 0.1, double min_rate = 1e-3);

/// Huisken functional at time t0 - r^2 (Gaussian density ratio at scale r).
double gaussian_density(const Trajectory& trajectory, const SpacetimePoint& center, double r);

}  // namespace csf
