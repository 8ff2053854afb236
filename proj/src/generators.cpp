#include "csf/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "csf/arclength.hpp"
#include "csf/text.hpp"

namespace csf {

namespace {
constexpr double kPi = std::numbers::pi;
}

DiscreteCurve regular_polygon(Index n, double radius, const PlanePoint& center, double phase) {
  if (!(radius > 0.0)) throw Error(Errc::domain, "radius must be positive");
  Points v(2, n);
  for (Index i = 0; i < n; ++i) {
    const double theta = phase + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    v.col(i) = center + radius * PlanePoint(std::cos(theta), std::sin(theta));
  }
  return DiscreteCurve(std::move(v));
}

DiscreteCurve ellipse_uniform_parameter(double a, double b, Index n, const PlanePoint& center) {
  if (!(a > 0.0 && b > 0.0)) throw Error(Errc::domain, "ellipse semi-axes must be positive");
  Points v(2, n);
  for (Index i = 0; i < n; ++i) {
    const double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    v.col(i) = center + PlanePoint(a * std::cos(theta), b * std::sin(theta));
  }
  return DiscreteCurve(std::move(v));
}

DiscreteCurve ellipse_uniform_arclength(double a, double b, Index n, const PlanePoint& center) {
  if (!(a > 0.0 && b > 0.0)) throw Error(Errc::domain, "ellipse semi-axes must be positive");
  const auto speed = [a, b](double th) { return std::hypot(a * std::sin(th), b * std::cos(th)); };
  const auto breaks = uniform_breaks(0.0, 2.0 * kPi, 256);
  const ArclengthTable table(speed, std::span<const double>(breaks), 1);
  Points v(2, n);
  for (Index i = 0; i < n; ++i) {
    const double th = i == 0 ? 0.0 : table.parameter(table.total() * static_cast<double>(i) / static_cast<double>(n));
    v.col(i) = center + PlanePoint(a * std::cos(th), b * std::sin(th));
  }
  return DiscreteCurve(std::move(v));
}

DiscreteCurve unit_square(Index n) {
  if (n % 4 != 0) throw Error(Errc::domain, "unit square needs a vertex count divisible by 4");
  const Index per_side = n / 4;
  const std::array<PlanePoint, 4> corner = {PlanePoint(0, 0), PlanePoint(1, 0), PlanePoint(1, 1), PlanePoint(0, 1)};
  Points v(2, n);
  for (Index side = 0; side < 4; ++side)
    for (Index k = 0; k < per_side; ++k) {
      const double tau = static_cast<double>(k) / static_cast<double>(per_side);
      const auto s = static_cast<std::size_t>(side);
      v.col(side * per_side + k) = (1.0 - tau) * corner[s] + tau * corner[(s + 1) % 4];
    }
  return DiscreteCurve(std::move(v));
}

DiscreteCurve rounded_square(Index n, double side, double corner_radius) {
  if (!(side > 0.0 && corner_radius > 0.0 && 2.0 * corner_radius < side))
    throw Error(Errc::domain, "rounded square needs 0 < 2 r < side");
  const double flat = side - 2.0 * corner_radius;
  const double arc = 0.5 * kPi * corner_radius;
  const double quarter = flat + arc;
  const double h = 0.5 * side;
  Points v(2, n);
  for (Index i = 0; i < n; ++i) {
    // Start at the middle of the right side, walk counterclockwise.
    double s = std::fmod(4.0 * quarter * static_cast<double>(i) / static_cast<double>(n) + 0.5 * flat, 4.0 * quarter);
    const int q = std::min(3, static_cast<int>(s / quarter));
    s -= q * quarter;
    PlanePoint local;
    if (s < flat) {
      local = PlanePoint(h, -0.5 * flat + s);
    } else {
      const double phi = (s - flat) / corner_radius;
      local = PlanePoint(h - corner_radius, 0.5 * flat) + corner_radius * PlanePoint(std::cos(phi), std::sin(phi));
    }
    const Eigen::Matrix2d r = Eigen::Rotation2Dd(0.5 * kPi * q).toRotationMatrix();
    v.col(i) = r * local;
  }
  return DiscreteCurve(std::move(v));
}

DiscreteCurve polar_curve(const std::function<double(double)>& radius, const std::function<double(double)>& radius_prime,
                          Index n) {
  const auto speed = [&](double th) { return std::hypot(radius(th), radius_prime(th)); };
  const auto breaks = uniform_breaks(0.0, 2.0 * kPi, 512);
  const ArclengthTable table(speed, std::span<const double>(breaks), 1);
  Points v(2, n);
  for (Index i = 0; i < n; ++i) {
    const double th = i == 0 ? 0.0 : table.parameter(table.total() * static_cast<double>(i) / static_cast<double>(n));
    v.col(i) = radius(th) * PlanePoint(std::cos(th), std::sin(th));
  }
  return DiscreteCurve(std::move(v));
}

DiscreteCurve flower(int petals, double eps, Index n) {
  if (petals < 1 || !(eps >= 0.0 && eps < 1.0)) throw Error(Errc::domain, "flower needs k >= 1 and 0 <= eps < 1");
  const double k = petals;
  return polar_curve([=](double th) { return 1.0 + eps * std::cos(k * th); },
                     [=](double th) { return -eps * k * std::sin(k * th); }, n);
}

DiscreteCurve random_blob(std::uint64_t seed, Index n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-0.06, 0.06);
  std::vector<std::pair<double, double>> modes;
  for (int m = 2; m <= 6; ++m) modes.emplace_back(amp(rng), amp(rng));
  const auto r = [modes](double th) {
    double out = 1.0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const double m = static_cast<double>(j + 2);
      out += modes[j].first * std::cos(m * th) + modes[j].second * std::sin(m * th);
    }
    return out;
  };
  const auto dr = [modes](double th) {
    double out = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const double m = static_cast<double>(j + 2);
      out += m * (-modes[j].first * std::sin(m * th) + modes[j].second * std::cos(m * th));
    }
    return out;
  };
  return polar_curve(r, dr, n);
}

DiscreteCurve named_curve(std::string_view spec, Index n) {
  const auto [name, args] = split_name(spec);
  const std::vector<double> p = parse_numbers(args);
  const auto want = [&](std::size_t lo, std::size_t hi) {
    if (p.size() < lo || p.size() > hi)
      throw Error(Errc::config, "generator '" + std::string(name) + "' got " + std::to_string(p.size()) + " parameters");
  };
  if (name == "circle") {
    want(1, 3);
    const PlanePoint c = p.size() == 3 ? PlanePoint(p[1], p[2]) : PlanePoint::Zero();
    return regular_polygon(n, p[0], c);
  }
  if (name == "ellipse") {
    want(2, 2);
    return ellipse_uniform_arclength(p[0], p[1], n);
  }
  if (name == "square") {
    want(0, 0);
    return unit_square(n);
  }
  if (name == "rounded-square") {
    want(0, 2);
    return rounded_square(n, p.size() > 0 ? p[0] : 1.0, p.size() > 1 ? p[1] : 0.1);
  }
  if (name == "flower") {
    want(2, 2);
    return flower(static_cast<int>(p[0]), p[1], n);
  }
  if (name == "blob") {
    want(1, 1);
    return random_blob(static_cast<std::uint64_t>(p[0]), n);
  }
  throw Error(Errc::config, "unknown curve generator '" + std::string(name) + "'");
}

}  // namespace csf
