#pragma once

#include <numbers>

namespace turretsim {

// NATO mil: 1/6400 of a full circle (0.05625 deg).
inline constexpr double kMilsPerRevolution = 6400.0;
inline constexpr double kDegPerMil = 360.0 / kMilsPerRevolution;

constexpr double mils_from_radians(double rad) {
  return rad * kMilsPerRevolution / (2.0 * std::numbers::pi);
}

constexpr double radians_from_mils(double mils) {
  return mils * (2.0 * std::numbers::pi) / kMilsPerRevolution;
}

constexpr double mils_from_degrees(double deg) { return deg / kDegPerMil; }

constexpr double degrees_from_mils(double mils) { return mils * kDegPerMil; }

constexpr double radians_from_degrees(double deg) {
  return deg * std::numbers::pi / 180.0;
}

constexpr double degrees_from_radians(double rad) {
  return rad * 180.0 / std::numbers::pi;
}

}  // namespace turretsim
