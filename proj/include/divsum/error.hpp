#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace divsum {

enum class ErrorCode {
  invalid_input,
  dimension_mismatch,
  overflow,
  singular,
  not_converged,
  out_of_range,
  invalid_weights,
  not_summable,
  budget_exhausted,
  divergent_integral,
  degenerate_pade,
  pole,
  parse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by the triangular Sylvester solver; carries the offending diagonal pair.
class SingularSylvester : public Error {
 public:
  SingularSylvester(std::size_t i, std::size_t j, std::complex<double> a, std::complex<double> b);
  std::size_t row, col;
  std::complex<double> a_ii, b_jj;
};

// Wraps a failure raised while evaluating a limit schedule at one abscissa.
class LimitEvaluationError : public Error {
 public:
  LimitEvaluationError(double x, const Error& cause);
  double abscissa;
  ErrorCode cause;
};

}  // namespace divsum
