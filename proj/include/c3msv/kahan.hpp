#ifndef C3MSV_KAHAN_HPP
#define C3MSV_KAHAN_HPP

#include <complex>

namespace c3msv {

// Neumaier-compensated accumulator. The normalization and moment sums run
// over up to ~10^5 terms and are compared against 1e-12-level certificates,
// so plain accumulation would eat most of the error budget.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) noexcept {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const noexcept { return sum + comp; }
};

struct KahanComplexSum {
  KahanSum re;
  KahanSum im;

  void add(const std::complex<double>& z) noexcept {
    re.add(z.real());
    im.add(z.imag());
  }

  std::complex<double> value() const noexcept { return {re.value(), im.value()}; }
};

}  // namespace c3msv

#endif  // C3MSV_KAHAN_HPP
