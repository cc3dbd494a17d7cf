#ifndef C3MSV_ERRORS_HPP
#define C3MSV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace c3msv {

// Bad caller input: invalid parameters, out-of-range tolerances, degenerate
// observables. The CLI maps these to exit code 1.
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// Requested Fock truncation would exceed the pair-cutoff ceiling; such
// parameter regimes are served by the Gaussian engine instead.
class infeasible_error : public validation_error {
 public:
  explicit infeasible_error(const std::string& what) : validation_error(what) {}
};

// A numerical self-check failed (Bogoliubov residual, structurally-zero
// moment, recurrence spot-check). The CLI maps these to exit code 2.
class internal_error : public std::runtime_error {
 public:
  explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

// The two computation engines disagree beyond tolerance on the same point.
class engine_mismatch_error : public internal_error {
 public:
  explicit engine_mismatch_error(const std::string& what) : internal_error(what) {}
};

}  // namespace c3msv

#endif  // C3MSV_ERRORS_HPP
