#include "c3msv/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "c3msv/errors.hpp"

namespace c3msv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) {
    throw validation_error(std::string(field) + " must be finite");
  }
}

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;  // fmod rounding can land exactly on 2*pi
  return t;
}

}  // namespace

SqueezeParams make_params(double r1, double r2, double theta1, double theta2) {
  require_finite(r1, "r1");
  require_finite(r2, "r2");
  require_finite(theta1, "theta1");
  require_finite(theta2, "theta2");
  if (r1 < 0.0) throw validation_error("r1 must be >= 0 (got " + std::to_string(r1) + ")");
  if (r2 < 0.0) throw validation_error("r2 must be >= 0 (got " + std::to_string(r2) + ")");
  SqueezeParams p;
  p.r1 = r1;
  p.r2 = r2;
  p.theta1 = normalize_angle(theta1);
  p.theta2 = normalize_angle(theta2);
  p.r = std::sqrt(r1 * r1 + r2 * r2);
  return p;
}

Reduction classify(const SqueezeParams& params) noexcept {
  const bool z1 = params.r1 == 0.0;
  const bool z2 = params.r2 == 0.0;
  if (z1 && z2) return Reduction::Vacuum;
  if (z2) return Reduction::TmsvAB;
  if (z1) return Reduction::TmsvBC;
  return Reduction::Coupled;
}

const char* to_string(Reduction tag) noexcept {
  switch (tag) {
    case Reduction::Vacuum: return "vacuum";
    case Reduction::TmsvAB: return "tmsv_ab";
    case Reduction::TmsvBC: return "tmsv_bc";
    case Reduction::Coupled: return "coupled";
  }
  return "unknown";
}

}  // namespace c3msv
