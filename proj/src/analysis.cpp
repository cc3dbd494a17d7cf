#include "c3msv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "c3msv/errors.hpp"

namespace c3msv {

namespace {

double gaussian_skew_from_env() {
  // Test hook: multiplies every Gaussian-engine variance so cross-engine
  // disagreement handling can be exercised end to end.
  const char* env = std::getenv("C3MSV_TEST_GAUSSIAN_SKEW");
  if (env == nullptr || *env == '\0') return 1.0;
  char* end = nullptr;
  const double skew = std::strtod(env, &end);
  if (end == env || !std::isfinite(skew) || skew <= 0.0) {
    throw validation_error("C3MSV_TEST_GAUSSIAN_SKEW must be a positive number");
  }
  return skew;
}

QuadratureForm criterion_u(int index) {
  constexpr double rt2 = 1.4142135623730951;
  QuadratureForm f;
  f.u_a = index == 1 ? 2.0 : -rt2;
  f.u_b = index == 2 ? 2.0 : -rt2;
  f.u_c = index == 3 ? 2.0 : -rt2;
  return f;
}

QuadratureForm criterion_v(int index) {
  constexpr double rt2 = 1.4142135623730951;
  QuadratureForm f;
  f.v_a = index == 1 ? 2.0 : rt2;
  f.v_b = index == 2 ? 2.0 : rt2;
  f.v_c = index == 3 ? 2.0 : rt2;
  return f;
}

double axis_value(const Axis& axis, std::int64_t i) {
  // Fixed affine rule so grid nodes (and thus output files) are bitwise
  // reproducible; the last node hits stop exactly.
  if (i == axis.count - 1) return axis.stop;
  const double frac = static_cast<double>(i) / static_cast<double>(axis.count - 1);
  return axis.start + (axis.stop - axis.start) * frac;
}

SqueezeParams with_axis(const SqueezeParams& base, AxisName name, double value) {
  double r1 = base.r1, r2 = base.r2, t1 = base.theta1, t2 = base.theta2;
  switch (name) {
    case AxisName::r1: r1 = value; break;
    case AxisName::r2: r2 = value; break;
    case AxisName::theta1: t1 = value; break;
    case AxisName::theta2: t2 = value; break;
  }
  return make_params(r1, r2, t1, t2);
}

const char* axis_name_str(AxisName name) {
  switch (name) {
    case AxisName::r1: return "r1";
    case AxisName::r2: return "r2";
    case AxisName::theta1: return "theta1";
    case AxisName::theta2: return "theta2";
  }
  return "?";
}

double observable_value(const Observable& obs, const EngineContext& ctx) {
  if (const auto* combo = std::get_if<NumberComboObs>(&obs)) {
    const double var = ctx.number_var(combo->c_a, combo->c_b, combo->c_c);
    const double snl = ctx.number_snl(combo->c_a, combo->c_b, combo->c_c);
    return squeezing_db(var, snl).db;
  }
  if (const auto* quad = std::get_if<QuadFormObs>(&obs)) {
    const double var = ctx.quad_var(quad->form);
    return squeezing_db(var, quad_snl(quad->form)).db;
  }
  if (const auto* prod = std::get_if<CriterionProductObs>(&obs)) {
    return ctx.quad_var(criterion_u(prod->index)) * ctx.quad_var(criterion_v(prod->index));
  }
  const auto& unc = std::get<UncertaintyObs>(obs);
  QuadratureForm u, v;
  u.u_a = unc.h1; u.u_b = unc.h2; u.u_c = unc.h3;
  v.v_a = unc.h1; v.v_b = unc.h2; v.v_c = unc.h3;
  return ctx.quad_var(u) * ctx.quad_var(v);
}

void validate_observable(const Observable& obs) {
  if (const auto* combo = std::get_if<NumberComboObs>(&obs)) {
    if (combo->c_a == 0.0 && combo->c_b == 0.0 && combo->c_c == 0.0) {
      throw validation_error("number-combo coefficients must not be all zero");
    }
  } else if (const auto* quad = std::get_if<QuadFormObs>(&obs)) {
    if (quad_snl(quad->form) == 0.0) {
      throw validation_error("quadrature form weights must not be all zero");
    }
  } else if (const auto* prod = std::get_if<CriterionProductObs>(&obs)) {
    if (prod->index < 1 || prod->index > 3) {
      throw validation_error("criterion product index must be 1, 2 or 3");
    }
  } else {
    const auto& unc = std::get<UncertaintyObs>(obs);
    if (unc.h1 == 0.0 && unc.h2 == 0.0 && unc.h3 == 0.0) {
      throw validation_error("uncertainty weights must not be all zero");
    }
  }
}

}  // namespace

EngineContext::EngineContext(const SqueezeParams& params, const EngineOptions& opts)
    : params_(params), opts_(opts), gaussian_skew_(gaussian_skew_from_env()) {
  bool want_fock = opts.engine != Engine::gaussian;
  if (want_fock && opts.engine == Engine::both &&
      pair_cutoff(params, opts.tol) > opts.max_pairs) {
    want_fock = false;  // fall back to the Gaussian engine alone
  }
  if (want_fock) {
    state_ = build_state(params, opts.tol, opts.max_pairs);
    table_ = second_moment_table(*state_);
    intensity_ = intensity_moments(*state_);
  }
  if (opts.engine != Engine::fock) {
    const ModeTransform mt = mode_transform(params);
    cov_ = covariance_matrix(mt);
    table_g_ = moment_table_g(mt);
    intensity_g_ = intensity_moments_g(mt);
  }
}

double EngineContext::compare_tolerance(double reference) const {
  double tol = std::max(kEngineRelTol * std::abs(reference), kEngineAbsTol);
  if (state_) {
    // Allow for the certified truncation error of the Fock side: moments
    // weight the discarded geometric tail by at most ~(M+2)^2.
    const double pairs = static_cast<double>(state_->max_pairs) + 2.0;
    tol += 2.0 * state_->tail_bound * pairs * pairs;
  }
  return tol;
}

double EngineContext::pick(double fock_value, double gaussian_value,
                           const char* what) const {
  if (!state_) return gaussian_value;
  if (!cov_) return fock_value;
  if (std::abs(fock_value - gaussian_value) > compare_tolerance(fock_value)) {
    throw engine_mismatch_error(std::string("engines disagree on ") + what + ": fock " +
                                std::to_string(fock_value) + " vs gaussian " +
                                std::to_string(gaussian_value));
  }
  return fock_value;
}

double EngineContext::quad_var(const QuadratureForm& form) const {
  const double fock_value = table_ ? quad_variance(*table_, form) : 0.0;
  const double gaussian_value = cov_ ? gaussian_skew_ * quad_variance_g(*cov_, form) : 0.0;
  return pick(fock_value, gaussian_value, "quadrature variance");
}

double EngineContext::number_var(double c_a, double c_b, double c_c) const {
  const double fock_value =
      intensity_ ? number_combo_variance(*intensity_, c_a, c_b, c_c) : 0.0;
  const double gaussian_value =
      intensity_g_ ? gaussian_skew_ * intensity_variance_g(params_, c_a, c_b, c_c) : 0.0;
  return pick(fock_value, gaussian_value, "intensity variance");
}

double EngineContext::number_snl(double c_a, double c_b, double c_c) const {
  const double fock_value =
      intensity_ ? number_combo_snl(*intensity_, c_a, c_b, c_c) : 0.0;
  const double gaussian_value =
      intensity_g_ ? number_combo_snl(*intensity_g_, c_a, c_b, c_c) : 0.0;
  return pick(fock_value, gaussian_value, "intensity shot-noise limit");
}

const IntensityMoments& EngineContext::intensity() const {
  if (intensity_) return *intensity_;
  return *intensity_g_;
}

const MomentTable& EngineContext::table() const {
  if (table_) return *table_;
  return *table_g_;
}

CriterionReport criterion(const SqueezeParams& params, const EngineOptions& opts) {
  const EngineContext ctx(params, opts);
  CriterionReport report;
  double products[3];
  for (int j = 1; j <= 3; ++j) {
    products[j - 1] = ctx.quad_var(criterion_u(j)) * ctx.quad_var(criterion_v(j));
  }
  report.p1 = products[0];
  report.p2 = products[1];
  report.p3 = products[2];
  report.violated1 = report.p1 < 1.0;
  report.violated2 = report.p2 < 1.0;
  report.violated3 = report.p3 < 1.0;
  report.certified = report.violated1 || report.violated2 || report.violated3;
  report.margin1 = 1.0 - report.p1;
  report.margin2 = 1.0 - report.p2;
  report.margin3 = 1.0 - report.p3;
  return report;
}

UncertaintyProduct uncertainty_product(const SqueezeParams& params, double h1, double h2,
                                       double h3, const EngineOptions& opts) {
  if (!std::isfinite(h1) || !std::isfinite(h2) || !std::isfinite(h3)) {
    throw validation_error("uncertainty weights must be finite");
  }
  const EngineContext ctx(params, opts);
  QuadratureForm u, v;
  u.u_a = h1; u.u_b = h2; u.u_c = h3;
  v.v_a = h1; v.v_b = h2; v.v_c = h3;
  UncertaintyProduct result;
  result.lhs = ctx.quad_var(u) * ctx.quad_var(v);
  const double h2sum = h1 * h1 + h2 * h2 + h3 * h3;
  result.bound = h2sum * h2sum / 16.0;
  return result;
}

ScanResult scan(const ScanSpec& spec) {
  for (const Axis* axis : {&spec.axis1, &spec.axis2}) {
    if (axis->count < 2) {
      throw validation_error("scan axis count must be >= 2");
    }
    if (!(axis->start < axis->stop) || !std::isfinite(axis->start) ||
        !std::isfinite(axis->stop)) {
      throw validation_error("scan axis requires finite start < stop");
    }
    if ((axis->name == AxisName::r1 || axis->name == AxisName::r2) && axis->start < 0.0) {
      throw validation_error("magnitude axes must start at >= 0");
    }
  }
  if (spec.axis1.name == spec.axis2.name) {
    throw validation_error(std::string("scan axes must sweep distinct parameters, both are ") +
                           axis_name_str(spec.axis1.name));
  }
  validate_observable(spec.observable);

  if (spec.opts.engine == Engine::fock) {
    // Feasibility check at the largest magnitudes the grid reaches.
    double max_r1 = spec.base.r1, max_r2 = spec.base.r2;
    for (const Axis* axis : {&spec.axis1, &spec.axis2}) {
      if (axis->name == AxisName::r1) max_r1 = std::max(std::abs(axis->start), std::abs(axis->stop));
      if (axis->name == AxisName::r2) max_r2 = std::max(std::abs(axis->start), std::abs(axis->stop));
    }
    const SqueezeParams corner = make_params(max_r1, max_r2, 0.0, 0.0);
    const std::int64_t cutoff = pair_cutoff(corner, spec.opts.tol);
    if (cutoff > spec.opts.max_pairs) {
      throw infeasible_error("scan grid reaches r = " + std::to_string(corner.r) +
                             " needing M = " + std::to_string(cutoff) +
                             " pairs; rerun with the gaussian engine");
    }
  }

  ScanResult result;
  result.axis1_values.reserve(static_cast<std::size_t>(spec.axis1.count));
  result.axis2_values.reserve(static_cast<std::size_t>(spec.axis2.count));
  for (std::int64_t i = 0; i < spec.axis1.count; ++i) {
    result.axis1_values.push_back(axis_value(spec.axis1, i));
  }
  for (std::int64_t i = 0; i < spec.axis2.count; ++i) {
    result.axis2_values.push_back(axis_value(spec.axis2, i));
  }

  result.values.reserve(
      static_cast<std::size_t>(spec.axis1.count * spec.axis2.count));
  for (std::int64_t i1 = 0; i1 < spec.axis1.count; ++i1) {
    const SqueezeParams outer =
        with_axis(spec.base, spec.axis1.name, result.axis1_values[static_cast<std::size_t>(i1)]);
    for (std::int64_t i2 = 0; i2 < spec.axis2.count; ++i2) {
      const SqueezeParams point =
          with_axis(outer, spec.axis2.name, result.axis2_values[static_cast<std::size_t>(i2)]);
      const EngineContext ctx(point, spec.opts);
      result.values.push_back(observable_value(spec.observable, ctx));
    }
  }
  return result;
}

MinResult min_squeezing_over_r1(double r2, double r1_max, double tol,
                                const EngineOptions& opts) {
  if (!(r2 > 0.0) || !std::isfinite(r2)) {
    throw validation_error("r2 must be > 0: the r2 = 0 reduction has no finite interior optimum");
  }
  if (!(r1_max > 1e-3) || !std::isfinite(r1_max)) {
    throw validation_error("r1_max must exceed the pre-scan origin 1e-3");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw validation_error("search tol must be > 0");
  }

  MinResult result;
  auto objective = [&](double r1) {
    const EngineContext ctx(make_params(r1, r2, 0.0, 0.0), opts);
    ++result.evaluations;
    return squeezing_db(ctx.number_var(-1.0, 1.0, 0.0), ctx.number_snl(-1.0, 1.0, 0.0)).db;
  };

  constexpr int kPre = 64;
  const double lo = 1e-3;
  double xs[kPre];
  double fs[kPre];
  const double factor = std::log(r1_max / lo) / (kPre - 1);
  for (int i = 0; i < kPre; ++i) {
    xs[i] = i == kPre - 1 ? r1_max : lo * std::exp(factor * i);
    fs[i] = objective(xs[i]);
  }
  int best = 0;
  for (int i = 1; i < kPre; ++i) {
    if (fs[i] < fs[best]) best = i;
  }
  if (best == 0 || best == kPre - 1) {
    throw validation_error(
        "no interior minimum of dB(n_b - n_a) in r1 over [1e-3, " +
        std::to_string(r1_max) + "]: pre-scan minimum sits on the boundary");
  }

  double a = xs[best - 1];
  double b = xs[best + 1];
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d);
    }
  }
  const double mid = 0.5 * (a + b);
  result.r1_star = mid;
  result.db_star = objective(mid);
  // Keep the best probe so db_star never exceeds the bracket values.
  for (const auto& [x, f] : {std::pair{c, fc}, std::pair{d, fd}, std::pair{xs[best], fs[best]}}) {
    if (f < result.db_star) {
      result.r1_star = x;
      result.db_star = f;
    }
  }
  return result;
}

std::vector<double> theta2_spread_profile(double r1, double r2, std::int64_t count1,
                                          std::int64_t count2, const EngineOptions& opts) {
  if (count1 < 2 || count2 < 2) {
    throw validation_error("theta grids need at least 2 nodes per axis");
  }
  constexpr double kTwoPi = 6.283185307179586;
  QuadratureForm u;
  u.u_a = u.u_b = u.u_c = 1.0;
  const double snl = quad_snl(u);
  std::vector<double> spread;
  spread.reserve(static_cast<std::size_t>(count1));
  for (std::int64_t i = 0; i < count1; ++i) {
    const double t1 = kTwoPi * static_cast<double>(i) / static_cast<double>(count1 - 1);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::int64_t j = 0; j < count2; ++j) {
      const double t2 = kTwoPi * static_cast<double>(j) / static_cast<double>(count2 - 1);
      const EngineContext ctx(make_params(r1, r2, t1, t2), opts);
      const double db = squeezing_db(ctx.quad_var(u), snl).db;
      lo = std::min(lo, db);
      hi = std::max(hi, db);
    }
    spread.push_back(hi - lo);
  }
  return spread;
}

}  // namespace c3msv
