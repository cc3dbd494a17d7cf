#ifndef C3MSV_FOCK_HPP
#define C3MSV_FOCK_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "c3msv/params.hpp"

namespace c3msv {

inline constexpr double kDefaultTol = 1e-12;
inline constexpr std::int64_t kDefaultMaxPairs = 5000;

/// Truncated Fock expansion of the coupled three-mode squeezed vacuum.
///
/// The state is supported on kets |n, n+l, l> only. Amplitudes A(n, l) are
/// stored densely on the triangle n + l <= max_pairs, addressed by the pair
/// count m = n + l and the mode-a count n. tail_bound is a certified upper
/// bound on the discarded probability mass: the pair distribution is
/// geometric in m, so the tail beyond M is exactly tanh(r)^(2(M+1)).
struct TruncatedFockState {
  SqueezeParams params;
  std::int64_t max_pairs = 0;
  std::vector<std::complex<double>> amplitudes;
  double tail_bound = 0.0;
  double captured = 1.0;  // sum of |A|^2 over the stored triangle

  static std::int64_t offset(std::int64_t m) noexcept { return m * (m + 1) / 2; }

  /// Stored amplitude at pair count m and mode-a count n (so l = m - n).
  const std::complex<double>& at(std::int64_t m, std::int64_t n) const {
    return amplitudes[static_cast<std::size_t>(offset(m) + n)];
  }

  /// A(n, l); zero outside the stored triangle.
  std::complex<double> amp(std::int64_t n, std::int64_t l) const {
    if (n < 0 || l < 0 || n + l > max_pairs) return {0.0, 0.0};
    return at(n + l, n);
  }
};

/// Closed-form amplitude A(n, l), evaluated with log-gamma magnitudes so the
/// pair factorial never overflows. Negative indices are a usage error.
std::complex<double> amplitude(const SqueezeParams& params, std::int64_t n,
                               std::int64_t l);

/// Smallest cutoff M >= 0 with tanh(r)^(2(M+1)) <= tol; 0 when r = 0.
/// tol must lie in (0, 1).
std::int64_t pair_cutoff(const SqueezeParams& params, double tol);

/// Builds the truncated state row by row via the stable amplitude recurrence
/// and spot-checks it against the closed form. Throws infeasible_error when
/// the cutoff would exceed max_pairs_limit.
TruncatedFockState build_state(const SqueezeParams& params, double tol = kDefaultTol,
                               std::int64_t max_pairs_limit = kDefaultMaxPairs);

/// P(m) = sum_{n+l=m} |A(n, l)|^2 for m = 0..M. Not renormalized.
std::vector<double> pair_distribution(const TruncatedFockState& state);

}  // namespace c3msv

#endif  // C3MSV_FOCK_HPP
