#ifndef C3MSV_GAUSSIAN_HPP
#define C3MSV_GAUSSIAN_HPP

#include <Eigen/Dense>

#include "c3msv/moments.hpp"
#include "c3msv/params.hpp"

namespace c3msv {

/// Bogoliubov blocks of the Heisenberg-picture mode transformation: each
/// output annihilator is alpha * (a, b, c)^T + beta * (a^, b^, c^)^T.
/// Obtained by exponentiating the quadratic generator, independently of the
/// Fock recurrence, so agreement between the two engines is meaningful.
struct ModeTransform {
  Eigen::Matrix3cd alpha;
  Eigen::Matrix3cd beta;
};

/// 6x6 real covariance of the quadrature vector (X_a, P_a, X_b, P_b, X_c, P_c)
/// with vacuum normalization diag(1/4, ...).
struct CovarianceMatrix {
  Eigen::Matrix<double, 6, 6> sigma;
};

/// Largest entry-wise violation of the Bogoliubov conditions
/// alpha alpha^ - beta beta^ = I and alpha beta^T symmetric.
double bogoliubov_residual(const ModeTransform& mt);

/// Mode transformation generated by the coupled squeezing interaction.
/// Throws internal_error if the Bogoliubov residual exceeds 1e-10.
ModeTransform mode_transform(const SqueezeParams& params);

/// Real symplectic 6x6 image of the transform on quadrature coordinates.
Eigen::Matrix<double, 6, 6> symplectic_image(const ModeTransform& mt);

CovarianceMatrix covariance_matrix(const ModeTransform& mt);
CovarianceMatrix covariance_matrix(const SqueezeParams& params);

/// w^T sigma w for the weight vector w = (u_a, v_a, u_b, v_b, u_c, v_c).
double quad_variance_g(const CovarianceMatrix& cov, const QuadratureForm& form) noexcept;
double quad_variance_g(const SqueezeParams& params, const QuadratureForm& form);

/// Photon-number moments via Gaussian (Wick) factorization:
/// Var(n_j) = <n_j>^2 + <n_j> + |<j^2>|^2 and
/// Cov(n_j, n_k) = |<j^ k>|^2 + |<jk>|^2 for j != k.
IntensityMoments intensity_moments_g(const ModeTransform& mt);
IntensityMoments intensity_moments_g(const SqueezeParams& params);

double intensity_variance_g(const SqueezeParams& params, double c_a, double c_b,
                            double c_c);

/// Second-moment table from the transform; same contract as the Fock-side
/// second_moment_table, including the structural-zero assertions.
MomentTable moment_table_g(const ModeTransform& mt);
MomentTable moment_table_g(const SqueezeParams& params);

}  // namespace c3msv

#endif  // C3MSV_GAUSSIAN_HPP
