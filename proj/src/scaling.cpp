#include "limitlbm/scaling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "limitlbm/errors.hpp"

namespace limitlbm {

namespace {

void RequirePositive(double value, const char *name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

}  // namespace

ScalingParams make_scaling(double nu, double h) {
  RequirePositive(nu, "nu");
  RequirePositive(h, "h");
  ScalingParams s;
  s.h_ = h;
  s.nu_ = nu;
  s.tau_ = 3.0 * nu * h * h;
  s.omega_ = 1.0 / (3.0 * nu + 0.5);
  s.sound_speed_ = 1.0 / h;
  s.rt_ = 1.0 / (3.0 * h * h);
  return s;
}

FlowCharacteristics nondimensional_numbers(double velocity, double length,
                                           double nu, double h) {
  RequirePositive(velocity, "U");
  RequirePositive(length, "L");
  RequirePositive(nu, "nu");
  RequirePositive(h, "h");
  FlowCharacteristics fc;
  fc.velocity = velocity;
  fc.length = length;
  fc.mean_free_path = std::sqrt(24.0 / std::numbers::pi) * nu * h;
  fc.mean_thermal_speed = std::sqrt(8.0 / (3.0 * std::numbers::pi)) / h;
  fc.knudsen = fc.mean_free_path / length;
  fc.mach = velocity * h;
  fc.reynolds = velocity * length / nu;
  return fc;
}

}  // namespace limitlbm
