#pragma once

#include <functional>
#include <vector>

#include "divsum/linalg.hpp"
#include "divsum/sequential.hpp"

namespace divsum {

// Taylor coefficient oracle k -> a_k.
using CoeffOracle = std::function<Complex(std::size_t)>;

CoeffOracle exp_coeffs();      // 1/k!
CoeffOracle neumann_coeffs();  // 1
CoeffOracle list_coeffs(std::vector<Complex> a);  // zero past the list

// b_{n,j} = sum_{k=j}^n c_{n,k}, j = 0..n
std::vector<Complex> weights_b(const ScalarSeqWeights& c, std::size_t n);

// h_j = a_j b_{n,j}, so that sum_j h_j x^j = sum_k c_{n,k} S_k(x).
std::vector<Complex> transformed_coeffs(const CoeffOracle& a, const ScalarSeqWeights& c, std::size_t n);

struct PadeApproximant {
  std::vector<Complex> beta;   // numerator, beta_0..beta_m
  std::vector<Complex> gamma;  // denominator, gamma_0 = 1 .. gamma_n
  std::size_t m = 0, n = 0;
};

// [m/n] approximant from h_0..h_{m+n}.
PadeApproximant pade_coefficients(const std::vector<Complex>& h, std::size_t m, std::size_t n);

// p(X) q(X)^{-1} for the [m/n] approximant of the transformed coefficients.
CMatrix pade_with_summation(const CMatrix& x, std::size_t m, std::size_t n, const CoeffOracle& a,
                            const ScalarSeqWeights& c);

struct BlockPattern {
  std::vector<std::size_t> sizes;
  std::vector<std::vector<Complex>> eigs;
  std::vector<int> cluster_of;  // per input eigenvalue
  double delta = 0.0;
};

// Connected components of the graph joining eigenvalues at distance <= delta.
// Cluster ids follow first appearance.
BlockPattern eigen_cluster(const std::vector<Complex>& eigs, double delta);

// 0.1 ||X|| / d
double default_cluster_delta(const CMatrix& x);

// Schur form, clustered reordering, transformed Taylor polynomial on the
// diagonal blocks and the block Parlett recurrence above them. delta <= 0 selects
// the default.
CMatrix schur_parlett_with_summation(const CMatrix& x, std::size_t n, const CoeffOracle& a,
                                     const ScalarSeqWeights& c, double delta = 0.0);

}  // namespace divsum
