#include "c3msv/gaussian.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "c3msv/errors.hpp"

namespace c3msv {

namespace {

using cd = std::complex<double>;

void check_structural_zero_g(const cd& value, const char* name, double scale) {
  if (std::abs(value) > 1e-10 * std::max(1.0, scale)) {
    throw internal_error(std::string("structurally-zero moment ") + name +
                         " came out as " + std::to_string(std::abs(value)) +
                         " in the gaussian engine");
  }
}

}  // namespace

double bogoliubov_residual(const ModeTransform& mt) {
  // Normalized by the transform scale: the raw entries grow like cosh(r)^2,
  // so an absolute residual would reject perfectly healthy large-r transforms.
  const Eigen::Matrix3cd gram = mt.alpha * mt.alpha.adjoint();
  const Eigen::Matrix3cd commutator =
      gram - mt.beta * mt.beta.adjoint() - Eigen::Matrix3cd::Identity();
  const Eigen::Matrix3cd pairing = mt.alpha * mt.beta.transpose();
  const Eigen::Matrix3cd asym = pairing - pairing.transpose();
  const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  return std::max(commutator.cwiseAbs().maxCoeff(), asym.cwiseAbs().maxCoeff()) / scale;
}

ModeTransform mode_transform(const SqueezeParams& params) {
  ModeTransform mt;
  if (params.r == 0.0) {
    mt.alpha = Eigen::Matrix3cd::Identity();
    mt.beta = Eigen::Matrix3cd::Zero();
    return mt;
  }

  const cd xi1 = std::polar(params.r1, params.theta1);
  const cd xi2 = std::polar(params.r2, params.theta2);

  // Heisenberg equations for V = (a, b, c, a^, b^, c^) close linearly:
  // dV/dt = G V with the annihilators driven by the paired creators.
  Eigen::Matrix<cd, 6, 6> gen = Eigen::Matrix<cd, 6, 6>::Zero();
  gen(0, 4) = -xi1;
  gen(1, 3) = -xi1;
  gen(1, 5) = -xi2;
  gen(2, 4) = -xi2;
  gen(3, 1) = -std::conj(xi1);
  gen(4, 0) = -std::conj(xi1);
  gen(4, 2) = -std::conj(xi2);
  gen(5, 1) = -std::conj(xi2);

  const Eigen::Matrix<cd, 6, 6> propagator = gen.exp();
  mt.alpha = propagator.topLeftCorner<3, 3>();
  mt.beta = propagator.topRightCorner<3, 3>();

  const double residual = bogoliubov_residual(mt);
  if (residual > 1e-10) {
    throw internal_error("Bogoliubov conditions violated by " + std::to_string(residual));
  }
  return mt;
}

Eigen::Matrix<double, 6, 6> symplectic_image(const ModeTransform& mt) {
  // X_j -> sum_k Re(alpha+beta)_jk X_k - Im(alpha-beta)_jk P_k and
  // P_j -> sum_k Im(alpha+beta)_jk X_k + Re(alpha-beta)_jk P_k.
  Eigen::Matrix<double, 6, 6> s;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const cd plus = mt.alpha(j, k) + mt.beta(j, k);
      const cd minus = mt.alpha(j, k) - mt.beta(j, k);
      s(2 * j, 2 * k) = plus.real();
      s(2 * j, 2 * k + 1) = -minus.imag();
      s(2 * j + 1, 2 * k) = plus.imag();
      s(2 * j + 1, 2 * k + 1) = minus.real();
    }
  }
  return s;
}

CovarianceMatrix covariance_matrix(const ModeTransform& mt) {
  const Eigen::Matrix<double, 6, 6> s = symplectic_image(mt);
  CovarianceMatrix cov;
  cov.sigma = 0.25 * (s * s.transpose());
  cov.sigma = 0.5 * (cov.sigma + cov.sigma.transpose()).eval();
  return cov;
}

CovarianceMatrix covariance_matrix(const SqueezeParams& params) {
  return covariance_matrix(mode_transform(params));
}

double quad_variance_g(const CovarianceMatrix& cov, const QuadratureForm& form) noexcept {
  Eigen::Matrix<double, 6, 1> w;
  w << form.u_a, form.v_a, form.u_b, form.v_b, form.u_c, form.v_c;
  return w.dot(cov.sigma * w);
}

double quad_variance_g(const SqueezeParams& params, const QuadratureForm& form) {
  return quad_variance_g(covariance_matrix(params), form);
}

MomentTable moment_table_g(const ModeTransform& mt) {
  // Vacuum expectations of the transformed operators:
  // <j^ k> = (conj(beta) beta^T)_jk and <jk> = (alpha beta^T)_jk.
  const Eigen::Matrix3cd occ = mt.beta.conjugate() * mt.beta.transpose();
  const Eigen::Matrix3cd pair = mt.alpha * mt.beta.transpose();

  MomentTable t;
  t.n_a = occ(0, 0).real();
  t.n_b = occ(1, 1).real();
  t.n_c = occ(2, 2).real();
  t.m_ab = pair(0, 1);
  t.m_bc = pair(1, 2);
  t.m_ac = pair(0, 2);
  t.x_ac = occ(0, 2);
  t.sq_a = pair(0, 0);
  t.sq_b = pair(1, 1);
  t.sq_c = pair(2, 2);
  t.cross_ab = occ(0, 1);
  t.cross_bc = occ(1, 2);

  const double scale = (1.0 + t.n_b) * (1.0 + t.n_b);  // pair moments grow like sinh cosh
  check_structural_zero_g(t.m_ac, "<ac>", scale);
  check_structural_zero_g(t.sq_a, "<a^2>", scale);
  check_structural_zero_g(t.sq_b, "<b^2>", scale);
  check_structural_zero_g(t.sq_c, "<c^2>", scale);
  check_structural_zero_g(t.cross_ab, "<a^ b>", scale);
  check_structural_zero_g(t.cross_bc, "<b^ c>", scale);
  return t;
}

MomentTable moment_table_g(const SqueezeParams& params) {
  return moment_table_g(mode_transform(params));
}

IntensityMoments intensity_moments_g(const ModeTransform& mt) {
  const MomentTable t = moment_table_g(mt);
  IntensityMoments im;
  im.mean_a = t.n_a;
  im.mean_b = t.n_b;
  im.mean_c = t.n_c;
  im.var_a = t.n_a * t.n_a + t.n_a + std::norm(t.sq_a);
  im.var_b = t.n_b * t.n_b + t.n_b + std::norm(t.sq_b);
  im.var_c = t.n_c * t.n_c + t.n_c + std::norm(t.sq_c);
  im.cov_ab = std::norm(t.cross_ab) + std::norm(t.m_ab);
  im.cov_bc = std::norm(t.cross_bc) + std::norm(t.m_bc);
  im.cov_ac = std::norm(t.x_ac) + std::norm(t.m_ac);
  return im;
}

IntensityMoments intensity_moments_g(const SqueezeParams& params) {
  return intensity_moments_g(mode_transform(params));
}

double intensity_variance_g(const SqueezeParams& params, double c_a, double c_b,
                            double c_c) {
  // Wick assembly of Var(sum_j c_j n_j) in factored form. Expanding the
  // covariance quadratic form built from Var(n_j) = <n_j>^2 + <n_j> + |<j^2>|^2
  // and Cov(n_j, n_k) = |<j^ k>|^2 + |<jk>|^2 with this family's moments gives
  //   S^4 (c_a w + c_b + c_c v)^2 + S^2 (w (c_a + c_b)^2 + v (c_b + c_c)^2)
  // with S^2 = sinh(r)^2, w = r1^2/r^2, v = r2^2/r^2. The factored polynomial
  // is evaluated instead of the raw quadratic form because the latter cancels
  // S^4-sized terms to an O(1) result at large r.
  if (params.r == 0.0) return 0.0;
  const double w = (params.r1 / params.r) * (params.r1 / params.r);
  const double v = (params.r2 / params.r) * (params.r2 / params.r);
  const double s2 = std::sinh(params.r) * std::sinh(params.r);
  const double pair_weight = c_a * w + c_b + c_c * v;
  const double seed_weight = w * (c_a + c_b) * (c_a + c_b) + v * (c_b + c_c) * (c_b + c_c);
  return s2 * s2 * pair_weight * pair_weight + s2 * seed_weight;
}

}  // namespace c3msv
