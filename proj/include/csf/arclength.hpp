#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace csf {

// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066524612452, 0.3626837833783620,
    0.3626837833783620, 0.3137066524612452, 0.2223810344533745, 0.1012285362903763};

template <typename Fn>
double gauss_legendre(Fn&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t q = 0; q < kGaussNodes.size(); ++q) sum += kGaussWeights[q] * f(mid + half * kGaussNodes[q]);
  return half * sum;
}

/// Cumulative arclength of a parametrized curve u -> gamma(u), given its speed |gamma'(u)|.
///
/// The parameter range is split at `breaks` (which must include both end points) and each piece
/// is further divided into `subdivisions` panels. Breaks should sit on any place where the speed
/// is not smooth (spline knots, for example).
template <typename Speed>
class ArclengthTable {
 public:
  ArclengthTable(Speed speed, std::span<const double> breaks, int subdivisions = 1) : speed_(std::move(speed)) {
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
      const double a = breaks[b];
      const double h = (breaks[b + 1] - a) / subdivisions;
      for (int k = 0; k < subdivisions; ++k) knots_.push_back(a + k * h);
    }
    knots_.push_back(breaks.back());
    cumulative_.assign(knots_.size(), 0.0);
    for (std::size_t j = 0; j + 1 < knots_.size(); ++j)
      cumulative_[j + 1] = cumulative_[j] + gauss_legendre(speed_, knots_[j], knots_[j + 1]);
  }

  double total() const { return cumulative_.back(); }
  double parameter_begin() const { return knots_.front(); }
  double parameter_end() const { return knots_.back(); }

  /// Arclength from the start of the range to parameter u.
  double arclength(double u) const {
    const std::size_t j = panel_of_parameter(u);
    return cumulative_[j] + gauss_legendre(speed_, knots_[j], u);
  }

  /// Parameter at which the arclength equals s (clamped into the range).
  double parameter(double s) const {
    if (s <= 0.0) return knots_.front();
    if (s >= total()) return knots_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    const std::size_t j = static_cast<std::size_t>(std::distance(cumulative_.begin(), it)) - 1;
    double lo = knots_[j];
    double hi = knots_[j + 1];
    const double target = s - cumulative_[j];
    double u = lo + (hi - lo) * target / (cumulative_[j + 1] - cumulative_[j]);
    for (int iter = 0; iter < 60; ++iter) {
      const double residual = gauss_legendre(speed_, knots_[j], u) - target;
      if (residual > 0.0) hi = u; else lo = u;
      if (std::abs(residual) < 1e-15 * std::max(1.0, total())) break;
      const double v = speed_(u);
      double next = v > 0.0 ? u - residual / v : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - u) <= 1e-16 * std::max(1.0, std::abs(u))) { u = next; break; }
      u = next;
    }
    return u;
  }

 private:
  std::size_t panel_of_parameter(double u) const {
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
    if (it == knots_.begin()) return 0;
    return std::min(static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1, knots_.size() - 2);
  }

  Speed speed_;
  std::vector<double> knots_;
  std::vector<double> cumulative_;
};

template <typename Speed>
ArclengthTable(Speed, std::span<const double>, int) -> ArclengthTable<Speed>;

/// Evenly spaced breaks on [a, b].
inline std::vector<double> uniform_breaks(double a, double b, int panels) {
  std::vector<double> out(static_cast<std::size_t>(panels) + 1);
  for (int k = 0; k <= panels; ++k) out[static_cast<std::size_t>(k)] = a + (b - a) * k / panels;
  out.back() = b;
  return out;
}

}  // namespace csf
