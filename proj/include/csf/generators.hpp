#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

#include "csf/curve.hpp"

namespace csf {

/// Regular n-gon inscribed in the circle of the given radius; vertex 0 at angle `phase`.
DiscreteCurve regular_polygon(Index n, double radius = 1.0, const PlanePoint& center = PlanePoint::Zero(),
                              double phase = 0.0);

/// Ellipse x = a cos(theta), y = b sin(theta) at uniform parameter spacing.
DiscreteCurve ellipse_uniform_parameter(double a, double b, Index n, const PlanePoint& center = PlanePoint::Zero());

/// Ellipse at uniform arclength spacing, vertex 0 at (a, 0).
DiscreteCurve ellipse_uniform_arclength(double a, double b, Index n, const PlanePoint& center = PlanePoint::Zero());

/// Unit square [0,1]^2 with n/4 equally spaced vertices per side, vertex 0 at the origin.
DiscreteCurve unit_square(Index n);

/// Square of the given side centred at the origin with quarter-circle corners, uniform arclength.
DiscreteCurve rounded_square(Index n, double side = 1.0, double corner_radius = 0.1);

/// Star-shaped curve r(theta) sampled at uniform arclength, vertex 0 at theta = 0.
DiscreteCurve polar_curve(const std::function<double(double)>& radius, const std::function<double(double)>& radius_prime,
                          Index n);

/// Flower r = 1 + eps cos(k theta). Nonconvex once eps exceeds 1/(k^2 + 1).
DiscreteCurve flower(int petals, double eps, Index n);

/// Random star-shaped blob: unit circle plus Fourier modes 2..6 of amplitude at most 0.06.
DiscreteCurve random_blob(std::uint64_t seed, Index n);

/// Named generators: `circle:R[,cx,cy]`, `ellipse:a,b`, `square`, `rounded-square[:side,r]`,
/// `flower:k,eps`, `blob:seed`.
DiscreteCurve named_curve(std::string_view spec, Index n);

}  // namespace csf
