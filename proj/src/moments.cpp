#include "c3msv/moments.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "c3msv/errors.hpp"
#include "c3msv/kahan.hpp"

namespace c3msv {

namespace {

struct LadderOp {
  int mode;     // 0 = a, 1 = b, 2 = c
  bool dagger;
};

// <op1 op2> evaluated directly on the stored expansion. Each term applies
// op2 then op1 to |n, n+l, l> and keeps it only when the shifted occupation
// triple lands back on the support, so "structurally zero" entries are the
// result of failed integer matches, not assumptions.
std::complex<double> two_op_expectation(const TruncatedFockState& state, LadderOp op1,
                                        LadderOp op2) {
  KahanComplexSum acc;
  for (std::int64_t m = 0; m <= state.max_pairs; ++m) {
    for (std::int64_t n = 0; n <= m; ++n) {
      const std::complex<double>& a = state.at(m, n);
      if (a == std::complex<double>(0.0, 0.0)) continue;
      std::array<std::int64_t, 3> occ = {n, m, m - n};
      double weight = 1.0;
      bool dead = false;
      for (const LadderOp& op : {op2, op1}) {
        if (op.dagger) {
          weight *= std::sqrt(static_cast<double>(occ[op.mode] + 1));
          ++occ[op.mode];
        } else {
          if (occ[op.mode] == 0) {
            dead = true;
            break;
          }
          weight *= std::sqrt(static_cast<double>(occ[op.mode]));
          --occ[op.mode];
        }
      }
      if (dead) continue;
      // Target ket must be of the form |n', n'+l', l'> inside the triangle.
      if (occ[1] != occ[0] + occ[2] || occ[1] > state.max_pairs) continue;
      acc.add(std::conj(state.at(occ[1], occ[0])) * weight * a);
    }
  }
  return acc.value() / state.captured;
}

std::complex<double> one_op_expectation(const TruncatedFockState& state, LadderOp op) {
  KahanComplexSum acc;
  for (std::int64_t m = 0; m <= state.max_pairs; ++m) {
    for (std::int64_t n = 0; n <= m; ++n) {
      std::array<std::int64_t, 3> occ = {n, m, m - n};
      double weight = 1.0;
      if (op.dagger) {
        weight = std::sqrt(static_cast<double>(occ[op.mode] + 1));
        ++occ[op.mode];
      } else {
        if (occ[op.mode] == 0) continue;
        weight = std::sqrt(static_cast<double>(occ[op.mode]));
        --occ[op.mode];
      }
      if (occ[1] != occ[0] + occ[2] || occ[1] > state.max_pairs) continue;
      acc.add(std::conj(state.at(occ[1], occ[0])) * weight * state.at(m, n));
    }
  }
  return acc.value() / state.captured;
}

void check_structural_zero(const std::complex<double>& value, const char* name) {
  if (std::abs(value) > 1e-10) {
    throw internal_error(std::string("structurally-zero moment ") + name +
                         " came out as " + std::to_string(std::abs(value)));
  }
}

constexpr LadderOp A{0, false}, B{1, false}, C{2, false};
constexpr LadderOp Ad{0, true}, Bd{1, true}, Cd{2, true};

}  // namespace

IntensityMoments intensity_moments(const TruncatedFockState& state) {
  // Two passes: means first, then central second moments, so the variances
  // do not suffer the <n^2> - <n>^2 cancellation.
  KahanSum sa, sb, sc;
  for (std::int64_t m = 0; m <= state.max_pairs; ++m) {
    for (std::int64_t n = 0; n <= m; ++n) {
      const double p = std::norm(state.at(m, n));
      sa.add(static_cast<double>(n) * p);
      sb.add(static_cast<double>(m) * p);
      sc.add(static_cast<double>(m - n) * p);
    }
  }
  IntensityMoments im;
  im.mean_a = sa.value() / state.captured;
  im.mean_b = sb.value() / state.captured;
  im.mean_c = sc.value() / state.captured;

  KahanSum vaa, vbb, vcc, vab, vbc, vac;
  for (std::int64_t m = 0; m <= state.max_pairs; ++m) {
    for (std::int64_t n = 0; n <= m; ++n) {
      const double p = std::norm(state.at(m, n));
      const double da = static_cast<double>(n) - im.mean_a;
      const double db = static_cast<double>(m) - im.mean_b;
      const double dc = static_cast<double>(m - n) - im.mean_c;
      vaa.add(da * da * p);
      vbb.add(db * db * p);
      vcc.add(dc * dc * p);
      vab.add(da * db * p);
      vbc.add(db * dc * p);
      vac.add(da * dc * p);
    }
  }
  im.var_a = vaa.value() / state.captured;
  im.var_b = vbb.value() / state.captured;
  im.var_c = vcc.value() / state.captured;
  im.cov_ab = vab.value() / state.captured;
  im.cov_bc = vbc.value() / state.captured;
  im.cov_ac = vac.value() / state.captured;
  return im;
}

MomentTable second_moment_table(const TruncatedFockState& state) {
  for (const LadderOp& op : {A, B, C}) {
    const auto first = one_op_expectation(state, op);
    check_structural_zero(first, "first moment");
  }

  MomentTable t;
  t.n_a = two_op_expectation(state, Ad, A).real();
  t.n_b = two_op_expectation(state, Bd, B).real();
  t.n_c = two_op_expectation(state, Cd, C).real();
  t.m_ab = two_op_expectation(state, A, B);
  t.m_bc = two_op_expectation(state, B, C);
  t.m_ac = two_op_expectation(state, A, C);
  t.x_ac = two_op_expectation(state, Ad, C);
  t.sq_a = two_op_expectation(state, A, A);
  t.sq_b = two_op_expectation(state, B, B);
  t.sq_c = two_op_expectation(state, C, C);
  t.cross_ab = two_op_expectation(state, Ad, B);
  t.cross_bc = two_op_expectation(state, Bd, C);

  check_structural_zero(t.m_ac, "<ac>");
  check_structural_zero(t.sq_a, "<a^2>");
  check_structural_zero(t.sq_b, "<b^2>");
  check_structural_zero(t.sq_c, "<c^2>");
  check_structural_zero(t.cross_ab, "<a^ b>");
  check_structural_zero(t.cross_bc, "<b^ c>");
  return t;
}

double number_combo_variance(const IntensityMoments& im, double c_a, double c_b,
                             double c_c) noexcept {
  return c_a * c_a * im.var_a + c_b * c_b * im.var_b + c_c * c_c * im.var_c +
         2.0 * (c_a * c_b * im.cov_ab + c_b * c_c * im.cov_bc + c_a * c_c * im.cov_ac);
}

double number_combo_snl(const IntensityMoments& im, double c_a, double c_b,
                        double c_c) noexcept {
  return c_a * c_a * im.mean_a + c_b * c_b * im.mean_b + c_c * c_c * im.mean_c;
}

double quad_variance(const MomentTable& t, const QuadratureForm& form) noexcept {
  // W = sum_j (g_j j + conj(g_j) j^) with g_j = (u_j - i v_j) / 2, so
  // <W^2> = 2 Re(g^T M g) + 2 g* N g + sum |g_j|^2 where M[j][k] = <jk>
  // (symmetric) and N[j][k] = <j^ k> (Hermitian).
  using cd = std::complex<double>;
  const std::array<cd, 3> g = {cd(form.u_a, -form.v_a) * 0.5,
                               cd(form.u_b, -form.v_b) * 0.5,
                               cd(form.u_c, -form.v_c) * 0.5};
  const cd pair_part = g[0] * g[0] * t.sq_a + g[1] * g[1] * t.sq_b +
                       g[2] * g[2] * t.sq_c +
                       2.0 * (g[0] * g[1] * t.m_ab + g[1] * g[2] * t.m_bc +
                              g[0] * g[2] * t.m_ac);
  const double occ_part =
      std::norm(g[0]) * t.n_a + std::norm(g[1]) * t.n_b + std::norm(g[2]) * t.n_c +
      2.0 * (std::conj(g[0]) * g[1] * t.cross_ab + std::conj(g[1]) * g[2] * t.cross_bc +
             std::conj(g[0]) * g[2] * t.x_ac)
                .real();
  const double vac_part = std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]);
  return 2.0 * pair_part.real() + 2.0 * occ_part + vac_part;
}

double quad_snl(const QuadratureForm& form) noexcept {
  return 0.25 * (form.u_a * form.u_a + form.u_b * form.u_b + form.u_c * form.u_c +
                 form.v_a * form.v_a + form.v_b * form.v_b + form.v_c * form.v_c);
}

SqueezingReport squeezing_db(double variance, double snl) {
  if (!(snl > 0.0) || !std::isfinite(snl)) {
    throw validation_error("shot-noise limit must be positive (degenerate observable), got " +
                           std::to_string(snl));
  }
  if (!std::isfinite(variance) || variance < -1e-12 * snl) {
    throw validation_error("variance must be >= 0, got " + std::to_string(variance));
  }
  SqueezingReport report;
  // Assembled variances of exact eigenstate combinations can round to a tiny
  // negative; treat anything below the rounding floor as exactly zero.
  report.variance = variance > 0.0 ? variance : 0.0;
  report.snl = snl;
  report.db = report.variance == 0.0
                  ? -std::numeric_limits<double>::infinity()
                  : 10.0 * std::log10(report.variance / snl);
  return report;
}

}  // namespace c3msv
