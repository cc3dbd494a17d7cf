#ifndef C3MSV_MOMENTS_HPP
#define C3MSV_MOMENTS_HPP

#include <complex>

#include "c3msv/fock.hpp"

namespace c3msv {

/// First and second moments of the photon-number operators, renormalized by
/// the captured probability mass.
struct IntensityMoments {
  double mean_a = 0.0, mean_b = 0.0, mean_c = 0.0;
  double var_a = 0.0, var_b = 0.0, var_c = 0.0;
  double cov_ab = 0.0, cov_bc = 0.0, cov_ac = 0.0;
};

/// Sufficient statistics for every quadratic observable on a zero-mean state:
/// occupations <j^ j>, pair moments <jk>, and beam-splitter moments <j^ k>.
/// Entries that vanish on the |n, n+l, l> support (sq_*, m_ac, cross_*) are
/// computed from the state like everything else and asserted small, which
/// doubles as a check on the index bookkeeping.
struct MomentTable {
  double n_a = 0.0, n_b = 0.0, n_c = 0.0;
  std::complex<double> m_ab{0.0, 0.0};     // <ab>
  std::complex<double> m_bc{0.0, 0.0};     // <bc>
  std::complex<double> m_ac{0.0, 0.0};     // <ac>, structurally zero
  std::complex<double> x_ac{0.0, 0.0};     // <a^ c>
  std::complex<double> sq_a{0.0, 0.0};     // <a^2>, structurally zero
  std::complex<double> sq_b{0.0, 0.0};     // <b^2>, structurally zero
  std::complex<double> sq_c{0.0, 0.0};     // <c^2>, structurally zero
  std::complex<double> cross_ab{0.0, 0.0}; // <a^ b>, structurally zero
  std::complex<double> cross_bc{0.0, 0.0}; // <b^ c>, structurally zero
};

/// Real weights of the joint quadrature W = sum_j u_j X_j + v_j P_j, with
/// X_j = (j + j^)/2 and P_j = (j - j^)/(2i).
struct QuadratureForm {
  double u_a = 0.0, u_b = 0.0, u_c = 0.0;
  double v_a = 0.0, v_b = 0.0, v_c = 0.0;
};

/// Variance, shot-noise limit, and their ratio in decibels. A variance of
/// exactly zero reports db = -infinity.
struct SqueezingReport {
  double variance = 0.0;
  double snl = 0.0;
  double db = 0.0;
};

IntensityMoments intensity_moments(const TruncatedFockState& state);

MomentTable second_moment_table(const TruncatedFockState& state);

/// Var(c_a n_a + c_b n_b + c_c n_c) assembled from variances and covariances.
double number_combo_variance(const IntensityMoments& im, double c_a, double c_b,
                             double c_c) noexcept;

/// Shot-noise limit of the same combination: independent coherent modes with
/// matched means contribute sum_j c_j^2 <n_j>.
double number_combo_snl(const IntensityMoments& im, double c_a, double c_b,
                        double c_c) noexcept;

/// <W^2> - <W>^2 for the given weights; the table's first moments vanish on
/// this state family so only second moments enter.
double quad_variance(const MomentTable& table, const QuadratureForm& form) noexcept;

/// Coherent-state variance of the form: (1/4) sum_j (u_j^2 + v_j^2).
double quad_snl(const QuadratureForm& form) noexcept;

/// db = 10 log10(variance / snl); -infinity sentinel at variance == 0.
/// snl <= 0 is a usage error (degenerate observable).
SqueezingReport squeezing_db(double variance, double snl);

}  // namespace c3msv

#endif  // C3MSV_MOMENTS_HPP
