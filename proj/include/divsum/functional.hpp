#pragma once

#include <functional>
#include <string>
#include <vector>

#include "divsum/sequential.hpp"
#include "divsum/series.hpp"

namespace divsum {

// Damping matrices P_0, P_1, ... for Abelian means.
struct AbelianWeights {
  std::size_t dim = 0;
  std::function<CMatrix(std::size_t)> p_at;
  std::string tag;
};

// P_k = k I, the Abel case.
AbelianWeights abel_weights(std::size_t dim);
// P_0..P_{m-1} from a list; indices beyond the list are an error.
AbelianWeights abelian_from_list(std::vector<CMatrix> p);
// P_0 positive definite and P_k strictly below P_{k+1} for k < k_max.
bool check_abelian_weights(const AbelianWeights& w, std::size_t k_max);

struct LimitSchedule {
  std::vector<double> points;
  double stagnation_tol = 1e-4;

  // x_m = 1 - 2^{-m}, m = m0..m1
  static LimitSchedule toward_one(int m0 = 4, int m1 = 14);
  // x_m = 2^m, m = m0..m1
  static LimitSchedule toward_infinity(int m0 = 0, int m1 = 10);
  // x_m = 2^{-m}, m = m0..m1 (Abelian means)
  static LimitSchedule toward_zero(int m0 = 4, int m1 = 14);
  void validate() const;
};

struct QuadratureSpec {
  double upper = 40.0;        // T; doubled while the integrand still decays
  double max_upper = 2560.0;
  double tol = 1e-10;         // relative to 1 + ||integral||
  double tail_tol = 1e-10;    // ||f(T)|| relative to 1 + ||integral||
  double inner_tol = 1e-15;   // inner series truncation
  std::size_t initial_panels = 16;
  std::size_t max_panels = 20000;
  std::size_t term_budget = 100000;
};

// Truncation options for the damped sums.
struct DampedSumOptions {
  double tol = 1e-14;
  std::size_t term_budget = 2000000;
};

// sum_k A_k x^k for 0 < x < 1.
CMatrix abel_eval(const MatrixSeries& series, double x, const DampedSumOptions& opt = {});
// sum_k A_k exp(-P_k x) for x > 0.
CMatrix abelian_means_eval(const MatrixSeries& series, const AbelianWeights& w, double x,
                           const DampedSumOptions& opt = {});
// (1-x) sum_k k x^k / (1 - x^k) A_k. A series starting at index 0 is read as a_1 = A_0, a_2 = A_1, ...
CMatrix lambert_eval(const MatrixSeries& series, double x, const DampedSumOptions& opt = {});
// Same kernel over exactly the first n_terms terms.
CMatrix lambert_eval_truncated(const MatrixSeries& series, double x, std::size_t n_terms);
// (1-x) k x^k / (1 - x^k)
double lambert_kernel(std::size_t k, double x);
// e^{-x} sum_k S_k x^k / k!
CMatrix weak_borel_eval(const MatrixSeries& series, double x, const DampedSumOptions& opt = {});

// integral_0^inf e^{-t} sum_k A_k t^k / k! dt
SumReport strong_borel_sum(const MatrixSeries& series, const QuadratureSpec& q = {});
// integral_0^inf e^{-t} sum_k A_k t^{alpha k} / Gamma(1 + alpha k) dt
SumReport mittag_leffler_sum(const MatrixSeries& series, double alpha, const QuadratureSpec& q = {});
// The integrand of the two methods above at t.
CMatrix borel_integrand(const MatrixSeries& series, double alpha, double t, const QuadratureSpec& q = {});

// Evaluates along the schedule; converged when the last three values agree
// within stagnation_tol (1 + ||value||).
SumReport take_limit(const std::function<CMatrix(double)>& evaluator, const LimitSchedule& schedule);

SumReport abel_sum(const MatrixSeries& series, const LimitSchedule& s, const DampedSumOptions& opt = {});
SumReport abelian_means_sum(const MatrixSeries& series, const AbelianWeights& w, const LimitSchedule& s,
                            const DampedSumOptions& opt = {});
SumReport lambert_sum(const MatrixSeries& series, const LimitSchedule& s, const DampedSumOptions& opt = {});
SumReport weak_borel_sum(const MatrixSeries& series, const LimitSchedule& s, const DampedSumOptions& opt = {});

}  // namespace divsum
