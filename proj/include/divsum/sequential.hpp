#pragma once

#include <functional>
#include <string>
#include <vector>

#include "divsum/float_sum.hpp"
#include "divsum/series.hpp"

namespace divsum {

struct SumReport {
  CMatrix value;
  std::size_t terms_used = 0;
  bool converged = false;
  double last_increment_norm = 0.0;
  std::string method;
};

// Noerlund weights P_0, P_1, ... (positive definite).
struct NorlundWeights {
  std::size_t dim = 0;
  std::function<CMatrix(std::size_t)> weight_at;
  std::string tag;
};

// Matrix weights C_{n,k} of a sequential method R(A)_n = sum_k C_{n,k} S_k.
struct SeqWeights {
  std::size_t dim = 0;
  std::function<CMatrix(std::size_t, std::size_t)> weight_at;
  std::string tag;
};

// Scalar weights c_{n,k}, used as C_{n,k} = c_{n,k} I.
struct ScalarSeqWeights {
  std::function<Complex(std::size_t, std::size_t)> c_at;
  std::string tag;
};

ScalarSeqWeights conventional_weights();
// c_{n,k} = 1/n for k < n (row 0 is the conventional row).
ScalarSeqWeights cesaro_scalar_weights();
// c_{n,k} = binom(n+1, k+1) rho^{n-k} (1+rho)^{-n-1}
ScalarSeqWeights euler_scalar_weights(double rho);
SeqWeights as_matrix_weights(const ScalarSeqWeights& c, std::size_t dim);

// P_k = binom(k+j-1, j-1) I; j = 0 means conventional summation.
NorlundWeights cesaro_weights(std::size_t j, std::size_t dim);
// P_0..P_{m-1} from a list; indices beyond the list are an error.
NorlundWeights norlund_from_list(std::vector<CMatrix> weights);

CMatrix norlund_transform(const MatrixSeries& series, const NorlundWeights& w, std::size_t n);
// Transform at n, converged when it agrees with the values at n-1 and n/2.
SumReport norlund_sum(const MatrixSeries& series, const NorlundWeights& w, std::size_t n, double tol);

struct NorlundCondition {
  std::vector<double> ratios;  // r_k = ||(P_0+...+P_k)^{-1}|| ||P_k||
  bool warning = false;        // r_K has not decayed relative to r_{K/2}
};
NorlundCondition norlund_condition_check(const NorlundWeights& w, std::size_t k_max);

// Mean of S_0..S_{n-1}; converged when it agrees with the means at n-1 and n/2
// within tol (1 + ||mean||).
SumReport cesaro_sum(const MatrixSeries& series, std::size_t n, double tol,
                     const KernelSpec& kernel = KernelSpec::compensated());

// E_n = sum_k binom(n,k) (I+P)^{-n-1} P^{n-k} A_k for Hermitian positive definite P.
CMatrix euler_transform_term(const MatrixSeries& series, const CMatrix& p, std::size_t n);
// The series of Euler transformed terms E_0, E_1, ...
MatrixSeries euler_transformed(const MatrixSeries& series, const CMatrix& p);
// Closed form for the Neumann series when P and X commute:
// E_n = (I+P)^{-n-1} (P+X)^n by repeated solves with one factorization of I+P.
MatrixSeries neumann_euler_terms(const CMatrix& x, const CMatrix& p);

// Sums E_0..E_n with the given kernel; converged when ||E_n|| <= tol (1 + ||sum||).
SumReport euler_sum(const MatrixSeries& series, const CMatrix& p, std::size_t n, double tol,
                    const KernelSpec& kernel = KernelSpec::compensated());
SumReport sum_terms(const MatrixSeries& terms, std::size_t n, double tol, const KernelSpec& kernel,
                    const std::string& method);

struct RegularityReport {
  bool row_sums_bounded = false;
  double max_row_sum = 0.0;
  bool columns_vanish = false;
  double max_column_ratio = 0.0;
  bool row_sum_to_identity = false;
  double identity_deficit = 0.0;
};

// Numeric check of the three regularity conditions on rows n <= n_max and
// columns k <= k_max. Rows must be long enough for columns to decay: a
// column passes when its value at n_max is at most 1/10 of its peak.
RegularityReport check_regularity_conditions(const SeqWeights& w, std::size_t n_max, std::size_t k_max);

}  // namespace divsum
