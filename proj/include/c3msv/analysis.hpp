#ifndef C3MSV_ANALYSIS_HPP
#define C3MSV_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "c3msv/fock.hpp"
#include "c3msv/gaussian.hpp"
#include "c3msv/moments.hpp"
#include "c3msv/params.hpp"

namespace c3msv {

enum class Engine { fock, gaussian, both };

/// Relative tolerance and absolute floor for cross-engine agreement.
inline constexpr double kEngineRelTol = 1e-9;
inline constexpr double kEngineAbsTol = 1e-12;

struct EngineOptions {
  Engine engine = Engine::both;
  double tol = kDefaultTol;                 // Fock truncation tolerance
  std::int64_t max_pairs = kDefaultMaxPairs;
};

/// Per-parameter-point evaluator that carries the state/table/covariance of
/// whichever engines the policy needs. With Engine::both it computes every
/// requested value on both engines, throws engine_mismatch_error when they
/// disagree beyond tolerance, and reports the Fock value; when the Fock
/// cutoff is infeasible it falls back to the Gaussian engine alone.
class EngineContext {
 public:
  EngineContext(const SqueezeParams& params, const EngineOptions& opts);

  double quad_var(const QuadratureForm& form) const;
  double number_var(double c_a, double c_b, double c_c) const;
  double number_snl(double c_a, double c_b, double c_c) const;
  const SqueezeParams& params() const noexcept { return params_; }
  bool fock_active() const noexcept { return state_.has_value(); }
  const IntensityMoments& intensity() const;
  const MomentTable& table() const;

 private:
  double pick(double fock_value, double gaussian_value, const char* what) const;
  double compare_tolerance(double reference) const;

  SqueezeParams params_;
  EngineOptions opts_;
  std::optional<TruncatedFockState> state_;
  std::optional<MomentTable> table_;
  std::optional<IntensityMoments> intensity_;
  std::optional<CovarianceMatrix> cov_;
  std::optional<MomentTable> table_g_;
  std::optional<IntensityMoments> intensity_g_;
  double gaussian_skew_ = 1.0;  // test hook, see C3MSV_TEST_GAUSSIAN_SKEW
};

/// Products p_j = Var(U_j) Var(V_j) of the three paired combinations
/// U_j = 2 X_j - sqrt(2) (X_k + X_l), V_j = 2 P_j + sqrt(2) (P_k + P_l).
/// Any product strictly below 1 certifies genuine tripartite entanglement;
/// margins (1 - p_j) are reported so consumers can apply their own
/// significance threshold on top of the strict comparison.
struct CriterionReport {
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
  bool violated1 = false, violated2 = false, violated3 = false;
  bool certified = false;
  double margin1 = 0.0, margin2 = 0.0, margin3 = 0.0;
};

CriterionReport criterion(const SqueezeParams& params, const EngineOptions& opts = {});

struct UncertaintyProduct {
  double lhs = 0.0;    // Var(U) Var(V) with X-weights (h1,h2,h3) and P-weights (h1,h2,h3)
  double bound = 0.0;  // (h1^2 + h2^2 + h3^2)^2 / 16
};

UncertaintyProduct uncertainty_product(const SqueezeParams& params, double h1, double h2,
                                       double h3, const EngineOptions& opts = {});

enum class AxisName { r1, r2, theta1, theta2 };

struct Axis {
  AxisName name = AxisName::r1;
  double start = 0.0;
  double stop = 0.0;
  std::int64_t count = 0;
};

struct NumberComboObs {
  double c_a = 0.0, c_b = 0.0, c_c = 0.0;  // evaluates to squeezing in dB
};
struct QuadFormObs {
  QuadratureForm form;  // evaluates to squeezing in dB
};
struct CriterionProductObs {
  int index = 2;  // 1..3, evaluates to the raw product p_index
};
struct UncertaintyObs {
  double h1 = 1.0, h2 = 1.0, h3 = 1.0;  // evaluates to the raw product Var(U) Var(V)
};
using Observable =
    std::variant<NumberComboObs, QuadFormObs, CriterionProductObs, UncertaintyObs>;

struct ScanSpec {
  SqueezeParams base;
  Axis axis1;
  Axis axis2;
  Observable observable = CriterionProductObs{};
  EngineOptions opts;
};

/// Row-major grid: values[i1 * axis2.count + i2]. Evaluation order is fixed
/// (axis1 outer, axis2 inner) so output is deterministic.
struct ScanResult {
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;
  std::vector<double> values;
};

ScanResult scan(const ScanSpec& spec);

struct MinResult {
  double r1_star = 0.0;
  double db_star = 0.0;
  std::int64_t evaluations = 0;
};

/// Minimizes the squeezing (dB) of n_b - n_a over r1 at fixed r2: a 64-point
/// log-spaced pre-scan over [1e-3, r1_max] brackets an interior minimum,
/// then golden-section refines it to |delta r1| <= tol. Errors out when the
/// pre-scan minimum sits on the boundary.
MinResult min_squeezing_over_r1(double r2, double r1_max, double tol,
                                const EngineOptions& opts = {});

/// For each theta1 grid node, the spread (max - min over theta2) of the
/// squeezing in dB of the X-quadrature sum with weights (1, 1, 1). Measures
/// how close the theta2-independence seen at some theta1 values is to exact.
std::vector<double> theta2_spread_profile(double r1, double r2, std::int64_t count1,
                                          std::int64_t count2,
                                          const EngineOptions& opts = {});

}  // namespace c3msv

#endif  // C3MSV_ANALYSIS_HPP
