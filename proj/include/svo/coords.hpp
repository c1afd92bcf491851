#pragma once

#include <optional>
#include <string_view>

#include "svo/equilibria.hpp"

namespace svo {

/// The four curve families through the SVO angle box.
///   E1: (atan(t cos phi), atan(t sin phi))     Nash expansion
///   E2: (atan(t cos psi), acot(t sin psi))     player-optimum expansion
///   E3: (theta1, atan t)                      theta1 held fixed
///   E4: (atan t, theta2)                      theta2 held fixed
enum class Family { E1, E2, E3, E4 };

std::string_view to_string(Family family);
// Accepts "e1".."e4" in either case.
std::optional<Family> parse_family(std::string_view text);

struct CurveCoord {
  Family family = Family::E1;
  double param = 0.0;  // phi, psi, theta1 or theta2
  double t = 1.0;
};

/// Throws Error{InvalidCoordinate} unless param is in (0, pi/2) and t in
/// (0, inf).
void validate(const CurveCoord& c);

SvoAngles to_theta(const CurveCoord& c);

/// Inverse transform. Throws Error{BoundaryTheta} when either angle is on
/// (or outside) the boundary of the open box (0, pi/2)^2.
CurveCoord from_theta(Family family, const SvoAngles& theta);

// acot on (0, inf) with values in (0, pi/2); acot(0) = pi/2.
double acot(double x);

}  // namespace svo
