#ifndef C3MSV_PARAMS_HPP
#define C3MSV_PARAMS_HPP

namespace c3msv {

/// Squeezing parameters of the two pair-creation interactions: magnitudes
/// r1, r2 >= 0 and phases theta1, theta2 (stored normalized to [0, 2*pi)),
/// plus the cached combined magnitude r = sqrt(r1^2 + r2^2).
///
/// Immutable value type; construct through make_params.
struct SqueezeParams {
  double r1;
  double r2;
  double theta1;
  double theta2;
  double r;
};

/// Degenerate reductions of the coupled state, decided by exact-zero tests
/// on the magnitudes.
enum class Reduction {
  Vacuum,   // r1 == 0 and r2 == 0
  TmsvAB,   // r1 > 0, r2 == 0: two-mode squeezed vacuum in (a, b), vacuum in c
  TmsvBC,   // r1 == 0, r2 > 0: two-mode squeezed vacuum in (b, c), vacuum in a
  Coupled,  // both magnitudes positive
};

/// Validates magnitudes (finite, nonnegative), reduces phases mod 2*pi and
/// caches r. Throws validation_error naming the offending field.
SqueezeParams make_params(double r1, double r2, double theta1 = 0.0,
                          double theta2 = 0.0);

Reduction classify(const SqueezeParams& params) noexcept;

const char* to_string(Reduction tag) noexcept;

}  // namespace c3msv

#endif  // C3MSV_PARAMS_HPP
