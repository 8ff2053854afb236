#pragma once

#include <cstddef>
#include <vector>

#include "csf/curve.hpp"
#include "csf/trajectory.hpp"

namespace csf {

/// Frame of the parabolic rescaling x -> lambda (x - x0), t -> lambda^2 (t - T).
struct RescaleFrame {
  PlanePoint x0 = PlanePoint::Zero();
  double T = 0.0;
  double lambda = 1.0;
};

struct RoundnessReport {
  PlanePoint fit_center = PlanePoint::Zero();
  double fit_radius = 0.0;
  double max_radial_deviation = 0.0;
  double deviation_ratio = 0.0;  // max_radial_deviation / fit_radius
};

/// Kasa circle fit: least squares on |p - c|^2 - r^2 written as a linear problem in
/// (c, r^2 - |c|^2). Throws Errc::degenerate for collinear input.
RoundnessReport roundness(const Points& points);
RoundnessReport roundness(const DiscreteCurve& curve);

struct Type1Rate {
  double sup = 0.0;
  std::vector<double> times;
  std::vector<double> series;  // (T - t) kappa_max^2
};

/// Series over records using the signed kappa_max of each record (concave points never blow up
/// on embedded curves). Throws if a record has t >= T.
Type1Rate type1_rate(const Trajectory& trajectory, double T);

/// Max-|kappa| vertex positions of the last five records averaged with weights kappa_max.
/// Throws Errc::domain if the run stopped at t_max.
PlanePoint detect_blowup_point(const Trajectory& trajectory);

/// lambda (Gamma_{T + t_rescaled / lambda^2} - x0), using the trajectory curve at that time.
struct RescaledSlice {
  DiscreteCurve curve;
  double t_original = 0.0;
  bool remesh_boundary = false;  // nearest snapshot used because the bracket straddles a remesh
};
RescaledSlice parabolic_rescale(const Trajectory& trajectory, const RescaleFrame& frame, double t_rescaled);

/// Rescale a single curve in space only.
DiscreteCurve rescale_curve(const DiscreteCurve& curve, const PlanePoint& x0, double lambda);

struct Type2Selection {
  double t_k = 0.0;
  std::size_t record = 0;      // index into trajectory.records
  Index vertex = 0;            // vertex of largest |kappa| at that record
  double lambda_k = 0.0;       // |kappa| at the selected point
  double t_k1 = 0.0;           // lambda_k^2 (T - 1/k - t_k)
};

/// Discrete argmax of kappa^2 (T - 1/k - t) over records with t <= T - 1/k.
Type2Selection type2_point_selection(const Trajectory& trajectory, double T, int k);

}  // namespace csf
