#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "c3msv/fock.hpp"
#include "c3msv/gaussian.hpp"
#include "c3msv/moments.hpp"
#include "c3msv/params.hpp"
#include "test_support.hpp"

using namespace c3msv;
using test_support::close;
using test_support::kPi;
using test_support::random_params;

namespace {

// Independent reference for the Bogoliubov blocks. The generator has the
// block structure [[0, B], [conj(B), 0]] with symmetric B, whose square is
// block diagonal with eigenvalues {r^2, r^2, 0}, so every analytic function
// of it is linear in the block itself.
ModeTransform closed_form_transform(const SqueezeParams& p) {
  using cd = std::complex<double>;
  ModeTransform mt;
  if (p.r == 0.0) {
    mt.alpha = Eigen::Matrix3cd::Identity();
    mt.beta = Eigen::Matrix3cd::Zero();
    return mt;
  }
  const cd xi1 = std::polar(p.r1, p.theta1);
  const cd xi2 = std::polar(p.r2, p.theta2);
  const double r2 = p.r * p.r;
  Eigen::Matrix3cd m;
  m << p.r1 * p.r1, 0.0, xi1 * std::conj(xi2),
       0.0, r2, 0.0,
       xi2 * std::conj(xi1), 0.0, p.r2 * p.r2;
  Eigen::Matrix3cd b;
  b << 0.0, -xi1, 0.0,
       -xi1, 0.0, -xi2,
       0.0, -xi2, 0.0;
  mt.alpha = Eigen::Matrix3cd::Identity() + (std::cosh(p.r) - 1.0) / r2 * m;
  mt.beta =
      (Eigen::Matrix3cd::Identity() + (std::sinh(p.r) / p.r - 1.0) / r2 * m) * b;
  return mt;
}

Eigen::Matrix<double, 6, 6> symplectic_form() {
  Eigen::Matrix<double, 6, 6> omega = Eigen::Matrix<double, 6, 6>::Zero();
  for (int j = 0; j < 3; ++j) {
    omega(2 * j, 2 * j + 1) = 1.0;
    omega(2 * j + 1, 2 * j) = -1.0;
  }
  return omega;
}

QuadratureForm x_form(double a, double b, double c) {
  QuadratureForm f;
  f.u_a = a;
  f.u_b = b;
  f.u_c = c;
  return f;
}

}  // namespace

TEST_CASE("mode transform limits") {
  const auto vac = mode_transform(make_params(0.0, 0.0));
  CHECK(vac.alpha.isApprox(Eigen::Matrix3cd::Identity(), 1e-15));
  CHECK(vac.beta.cwiseAbs().maxCoeff() == 0.0);

  // r2 = 0: standard two-mode squeezer on (a, b), identity on c.
  const double r = 0.5, theta = 0.9;
  const auto mt = mode_transform(make_params(r, 0.0, theta, 0.4));
  const std::complex<double> off = -std::polar(std::sinh(r), theta);
  CHECK(std::abs(mt.alpha(0, 0) - std::cosh(r)) < 1e-12);
  CHECK(std::abs(mt.alpha(1, 1) - std::cosh(r)) < 1e-12);
  CHECK(std::abs(mt.alpha(2, 2) - 1.0) < 1e-12);
  CHECK(std::abs(mt.alpha(0, 1)) < 1e-12);
  CHECK(std::abs(mt.beta(0, 1) - off) < 1e-12);
  CHECK(std::abs(mt.beta(1, 0) - off) < 1e-12);
  CHECK(std::abs(mt.beta(2, 2)) < 1e-12);
  CHECK(std::abs(mt.beta(0, 0)) < 1e-12);
}

TEST_CASE("matrix exponential agrees with the closed-form transform") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 40; ++rep) {
    const auto p = random_params(rng, 0.0, 2.0);
    const auto mt = mode_transform(p);
    const auto ref = closed_form_transform(p);
    CHECK((mt.alpha - ref.alpha).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((mt.beta - ref.beta).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(bogoliubov_residual(mt) < 1e-12);
  }
}

TEST_CASE("symplectic image preserves the symplectic form") {
  std::mt19937_64 rng(32);
  const auto omega = symplectic_form();
  for (int rep = 0; rep < 20; ++rep) {
    const auto s = symplectic_image(mode_transform(random_params(rng, 0.0, 1.8)));
    CHECK(((s * omega * s.transpose()) - omega).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("covariance matrix basics") {
  const auto vac = covariance_matrix(make_params(0.0, 0.0));
  CHECK((vac.sigma - 0.25 * Eigen::Matrix<double, 6, 6>::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  std::mt19937_64 rng(33);
  for (int rep = 0; rep < 20; ++rep) {
    const auto cov = covariance_matrix(random_params(rng, 0.0, 1.8));
    CHECK((cov.sigma - cov.sigma.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    // Uncertainty condition: sigma + (i/4) Omega >= 0.
    Eigen::Matrix<std::complex<double>, 6, 6> check =
        cov.sigma.cast<std::complex<double>>() +
        std::complex<double>(0.0, 0.25) * symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<std::complex<double>, 6, 6>> es(check);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
    // Single-mode purity bound: det of each 2x2 diagonal block >= 1/16.
    for (int j = 0; j < 3; ++j) {
      const double det = cov.sigma(2 * j, 2 * j) * cov.sigma(2 * j + 1, 2 * j + 1) -
                         cov.sigma(2 * j, 2 * j + 1) * cov.sigma(2 * j + 1, 2 * j);
      CHECK(det >= 1.0 / 16.0 - 1e-12);
    }
  }
}

TEST_CASE("TMSV covariance blocks match the textbook form") {
  const double r = 0.5;
  const auto cov = covariance_matrix(make_params(r, 0.0, 0.0, 0.0));
  const double c2 = std::cosh(2.0 * r) / 4.0;
  const double s2 = std::sinh(2.0 * r) / 4.0;
  CHECK(close(cov.sigma(0, 0), c2, 1e-12));  // X_a
  CHECK(close(cov.sigma(2, 2), c2, 1e-12));  // X_b
  CHECK(close(cov.sigma(0, 2), -s2, 1e-12));
  CHECK(close(cov.sigma(1, 3), s2, 1e-12));  // P_a P_b
  CHECK(close(cov.sigma(1, 1), c2, 1e-12));
  // Mode c stays vacuum.
  CHECK(close(cov.sigma(4, 4), 0.25, 1e-14));
  CHECK(close(cov.sigma(5, 5), 0.25, 1e-14));
  CHECK(std::abs(cov.sigma(4, 5)) < 1e-14);
  CHECK(std::abs(cov.sigma(0, 4)) < 1e-14);
}

TEST_CASE("quad_variance_g frozen values") {
  CHECK(quad_variance_g(make_params(0.0, 0.0), x_form(1.0, 1.0, 1.0)) ==
        doctest::Approx(0.75).epsilon(1e-14));
  const double rt2 = std::sqrt(2.0);
  CHECK(close(quad_variance_g(make_params(0.5, 0.5, kPi, kPi), x_form(-rt2, 2.0, -rt2)),
              0.4862334688684284, 1e-11));
  CHECK(close(quad_variance_g(make_params(0.5, 0.5, 0.0, 0.0), x_form(1.0, 1.0, 1.0)),
              0.2653387954478375, 1e-11));
}

TEST_CASE("gaussian mean photon numbers match the closed forms and Fock sums") {
  std::mt19937_64 rng(34);
  for (int rep = 0; rep < 15; ++rep) {
    const auto p = random_params(rng);
    const auto img = intensity_moments_g(p);
    const double s2 = std::sinh(p.r) * std::sinh(p.r);
    CHECK(close(img.mean_a, p.r1 * p.r1 / (p.r * p.r) * s2, 1e-10, 1e-14));
    CHECK(close(img.mean_b, s2, 1e-10, 1e-14));
    CHECK(close(img.mean_c, p.r2 * p.r2 / (p.r * p.r) * s2, 1e-10, 1e-14));
    const auto imf = intensity_moments(build_state(p, 1e-14));
    CHECK(close(img.mean_a, imf.mean_a, 1e-10, 1e-13));
    CHECK(close(img.mean_b, imf.mean_b, 1e-10, 1e-13));
    CHECK(close(img.mean_c, imf.mean_c, 1e-10, 1e-13));
  }
}

TEST_CASE("intensity_variance_g frozen values and large-r behaviour") {
  CHECK(std::abs(intensity_variance_g(make_params(0.5, 0.5), -1.0, 1.0, -1.0)) <= 1e-12);
  CHECK(close(intensity_variance_g(make_params(0.5, 0.5), -1.0, 1.0, 0.0),
              0.3813031699685691, 1e-10));
  // Far beyond the Fock-feasible regime: the intensity difference between
  // modes b and a is no longer squeezed.
  const auto p = make_params(8.0, 0.5);
  const auto img = intensity_moments_g(p);
  const double var = number_combo_variance(img, -1.0, 1.0, 0.0);
  const double snl = number_combo_snl(img, -1.0, 1.0, 0.0);
  CHECK(var / snl > 1.0);
  CHECK(squeezing_db(var, snl).db > 0.0);
}

TEST_CASE("dual-engine agreement on random parameter sets") {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> weight(-2.0, 2.0);
  for (int rep = 0; rep < 25; ++rep) {
    const auto p = random_params(rng, 0.02, 1.06);
    const auto state = build_state(p, 1e-14);
    const auto table = second_moment_table(state);
    const auto im = intensity_moments(state);
    const auto cov = covariance_matrix(p);
    const auto img = intensity_moments_g(p);

    for (int k = 0; k < 4; ++k) {
      QuadratureForm f;
      f.u_a = weight(rng);
      f.u_b = weight(rng);
      f.u_c = weight(rng);
      f.v_a = weight(rng);
      f.v_b = weight(rng);
      f.v_c = weight(rng);
      CHECK(close(quad_variance(table, f), quad_variance_g(cov, f), 1e-9, 1e-12));
      const double ca = weight(rng), cb = weight(rng), cc = weight(rng);
      CHECK(close(number_combo_variance(im, ca, cb, cc),
                  number_combo_variance(img, ca, cb, cc), 1e-9, 1e-12));
    }
    CHECK(close(im.mean_a, img.mean_a, 1e-9, 1e-12));
    CHECK(close(im.mean_b, img.mean_b, 1e-9, 1e-12));
    CHECK(close(im.mean_c, img.mean_c, 1e-9, 1e-12));

    const auto tg = moment_table_g(p);
    CHECK(std::abs(table.m_ab - tg.m_ab) < 1e-10);
    CHECK(std::abs(table.m_bc - tg.m_bc) < 1e-10);
    CHECK(std::abs(table.x_ac - tg.x_ac) < 1e-10);
  }
}

TEST_CASE("TMSV reduction of the covariance matches the two-mode textbook state") {
  // At r2 = 0 every quadrature variance reduces to the (a, b) two-mode case.
  const auto p = make_params(0.7, 0.0, 0.0, 0.0);
  const auto cov = covariance_matrix(p);
  const double em = std::exp(-2.0 * 0.7), ep = std::exp(2.0 * 0.7);
  // Squeezed and antisqueezed joint quadratures of a TMSV.
  QuadratureForm plus = x_form(1.0, 1.0, 0.0);
  QuadratureForm minus = x_form(1.0, -1.0, 0.0);
  CHECK(close(quad_variance_g(cov, plus), 0.5 * em, 1e-12));
  CHECK(close(quad_variance_g(cov, minus), 0.5 * ep, 1e-12));
}
