#include "c3msv/fock.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "c3msv/errors.hpp"
#include "c3msv/kahan.hpp"

namespace c3msv {

namespace {

void require_tol(double tol) {
  if (!(tol > 0.0) || !(tol < 1.0)) {
    throw validation_error("tol must lie in (0, 1), got " + std::to_string(tol));
  }
}

// Verifies a sample of recurrence-built amplitudes against the closed form.
// Catches index-bookkeeping bugs that a normalization check alone would miss.
void spot_check(const TruncatedFockState& state) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::int64_t> pick_m(0, state.max_pairs);
  const int samples = 128;
  for (int i = 0; i < samples; ++i) {
    const std::int64_t m = pick_m(rng);
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(0, m)(rng);
    const std::complex<double> ref = amplitude(state.params, n, m - n);
    const double err = std::abs(state.at(m, n) - ref);
    if (err > 1e-11 * std::abs(ref) + 1e-300) {
      throw internal_error("amplitude recurrence disagrees with closed form at (n=" +
                           std::to_string(n) + ", l=" + std::to_string(m - n) + ")");
    }
  }
}

}  // namespace

std::complex<double> amplitude(const SqueezeParams& params, std::int64_t n,
                               std::int64_t l) {
  if (n < 0 || l < 0) {
    throw validation_error("amplitude indices must be nonnegative");
  }
  if (params.r == 0.0) {
    return (n == 0 && l == 0) ? std::complex<double>(1.0, 0.0)
                              : std::complex<double>(0.0, 0.0);
  }
  const double t = std::tanh(params.r);
  const double p = params.r1 / params.r * t;
  const double q = params.r2 / params.r * t;
  if ((p == 0.0 && n > 0) || (q == 0.0 && l > 0)) return {0.0, 0.0};

  double log_mag = -std::log(std::cosh(params.r));
  if (n > 0) log_mag += static_cast<double>(n) * std::log(p);
  if (l > 0) log_mag += static_cast<double>(l) * std::log(q);
  log_mag += 0.5 * (std::lgamma(static_cast<double>(n + l) + 1.0) -
                    std::lgamma(static_cast<double>(n) + 1.0) -
                    std::lgamma(static_cast<double>(l) + 1.0));

  // Split the (-1)^(n+l) sign from the phase factor so theta = 0 stays
  // exactly real instead of picking up cos(pi*(n+l)) rounding.
  const double sign = ((n + l) % 2 == 0) ? 1.0 : -1.0;
  const double phase = static_cast<double>(n) * params.theta1 +
                       static_cast<double>(l) * params.theta2;
  return sign * std::exp(log_mag) *
         std::complex<double>(std::cos(phase), std::sin(phase));
}

std::int64_t pair_cutoff(const SqueezeParams& params, double tol) {
  require_tol(tol);
  if (params.r == 0.0) return 0;
  const double t = std::tanh(params.r);
  if (t >= 1.0) {
    // tanh saturated in double precision; no finite cutoff reaches tol.
    return std::numeric_limits<std::int64_t>::max() / 4;
  }
  const double log_t2 = 2.0 * std::log(t);
  const double need = std::log(tol) / log_t2;  // want M + 1 >= need
  if (need > 9e15) return std::numeric_limits<std::int64_t>::max() / 4;
  std::int64_t m = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(need)) - 2);
  while (std::exp(static_cast<double>(m + 1) * log_t2) > tol) ++m;
  return m;
}

TruncatedFockState build_state(const SqueezeParams& params, double tol,
                               std::int64_t max_pairs_limit) {
  require_tol(tol);
  if (max_pairs_limit < 0) {
    throw validation_error("max_pairs_limit must be >= 0");
  }
  const std::int64_t cutoff = pair_cutoff(params, tol);
  if (cutoff > max_pairs_limit) {
    throw infeasible_error(
        "Fock truncation needs M = " + std::to_string(cutoff) + " pairs (ceiling " +
        std::to_string(max_pairs_limit) +
        "); use the gaussian engine for this parameter regime");
  }

  TruncatedFockState state;
  state.params = params;
  state.max_pairs = cutoff;
  state.amplitudes.assign(static_cast<std::size_t>(TruncatedFockState::offset(cutoff + 1)),
                          {0.0, 0.0});

  if (params.r == 0.0) {
    state.amplitudes[0] = {1.0, 0.0};
    state.tail_bound = 0.0;
    state.captured = 1.0;
    return state;
  }

  const double t = std::tanh(params.r);
  const double p = params.r1 / params.r * t;
  const double q = params.r2 / params.r * t;
  const std::complex<double> step_a =
      -p * std::complex<double>(std::cos(params.theta1), std::sin(params.theta1));
  const std::complex<double> step_c =
      -q * std::complex<double>(std::cos(params.theta2), std::sin(params.theta2));

  auto* amps = state.amplitudes.data();
  amps[0] = {1.0 / std::cosh(params.r), 0.0};
  for (std::int64_t m = 1; m <= cutoff; ++m) {
    const auto* prev = amps + TruncatedFockState::offset(m - 1);
    auto* row = amps + TruncatedFockState::offset(m);
    const double md = static_cast<double>(m);
    // A(n, l) from A(n, l-1): one more conjugate photon in mode c.
    for (std::int64_t n = 0; n < m; ++n) {
      row[n] = prev[n] * step_c * std::sqrt(md / static_cast<double>(m - n));
    }
    // A(m, 0) from A(m-1, 0): one more conjugate photon in mode a.
    row[m] = prev[m - 1] * step_a;
  }

  state.tail_bound = std::exp(2.0 * static_cast<double>(cutoff + 1) * std::log(t));

  KahanSum norm;
  for (const auto& a : state.amplitudes) norm.add(std::norm(a));
  state.captured = norm.value();
  if (state.captured > 1.0 + 1e-9 || state.captured + state.tail_bound < 1.0 - 1e-9) {
    throw internal_error("truncated state norm " + std::to_string(state.captured) +
                         " inconsistent with tail bound " +
                         std::to_string(state.tail_bound));
  }

  spot_check(state);
  return state;
}

std::vector<double> pair_distribution(const TruncatedFockState& state) {
  std::vector<double> dist(static_cast<std::size_t>(state.max_pairs) + 1, 0.0);
  for (std::int64_t m = 0; m <= state.max_pairs; ++m) {
    KahanSum sum;
    for (std::int64_t n = 0; n <= m; ++n) sum.add(std::norm(state.at(m, n)));
    dist[static_cast<std::size_t>(m)] = sum.value();
  }
  return dist;
}

}  // namespace c3msv
