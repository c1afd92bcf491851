#include "svo/coords.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "svo/errors.hpp"

namespace svo {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::E1: return "e1";
    case Family::E2: return "e2";
    case Family::E3: return "e3";
    case Family::E4: return "e4";
  }
  return "e1";
}

std::optional<Family> parse_family(std::string_view text) {
  if (text.size() != 2 || std::tolower(static_cast<unsigned char>(text[0])) != 'e') {
    return std::nullopt;
  }
  switch (text[1]) {
    case '1': return Family::E1;
    case '2': return Family::E2;
    case '3': return Family::E3;
    case '4': return Family::E4;
    default: return std::nullopt;
  }
}

double acot(double x) { return std::atan2(1.0, x); }

void validate(const CurveCoord& c) {
  if (!(c.param > 0.0 && c.param < kHalfPi)) {
    throw Error(ErrorKind::InvalidCoordinate,
                "curve parameter " + std::to_string(c.param) + " outside (0, pi/2)");
  }
  if (!(c.t > 0.0) || !std::isfinite(c.t)) {
    throw Error(ErrorKind::InvalidCoordinate, "curve coordinate t must be positive and finite");
  }
}

SvoAngles to_theta(const CurveCoord& c) {
  validate(c);
  switch (c.family) {
    case Family::E1:
      return {std::atan(c.t * std::cos(c.param)), std::atan(c.t * std::sin(c.param))};
    case Family::E2:
      return {std::atan(c.t * std::cos(c.param)), acot(c.t * std::sin(c.param))};
    case Family::E3:
      return {c.param, std::atan(c.t)};
    case Family::E4:
      return {std::atan(c.t), c.param};
  }
  return {};
}

CurveCoord from_theta(Family family, const SvoAngles& theta) {
  for (double th : {theta.theta1, theta.theta2}) {
    if (!(th > 0.0 && th < kHalfPi)) {
      throw Error(ErrorKind::BoundaryTheta,
                  "angle " + std::to_string(th) + " is not in the open interval (0, pi/2)");
    }
  }
  const double tan1 = std::tan(theta.theta1);
  const double tan2 = std::tan(theta.theta2);
  CurveCoord c;
  c.family = family;
  switch (family) {
    case Family::E1:
      c.param = std::atan2(tan2, tan1);
      c.t = std::hypot(tan1, tan2);
      break;
    case Family::E2:
      c.param = std::atan2(1.0 / tan2, tan1);
      c.t = tan1 / std::cos(c.param);
      break;
    case Family::E3:
      c.param = theta.theta1;
      c.t = tan2;
      break;
    case Family::E4:
      c.param = theta.theta2;
      c.t = tan1;
      break;
  }
  return c;
}

}  // namespace svo
