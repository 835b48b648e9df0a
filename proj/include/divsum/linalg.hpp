#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "divsum/error.hpp"

namespace divsum {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

CMatrix identity(std::size_t d);
CMatrix zeros(std::size_t d);

bool all_finite(const CMatrix& a);
bool is_real(const CMatrix& a);

// Largest singular value.
double spectral_norm(const CMatrix& a);

// Default Hermitian / definiteness tolerance: 1e-10 * ||P||.
double default_tolerance(const CMatrix& p);

// Hermitian within tol and smallest eigenvalue of the Hermitian part > tol.
bool is_positive_definite(const CMatrix& p, double tol);
bool is_positive_definite(const CMatrix& p);

// A <= B in the Loewner order: B - A Hermitian PSD within tol.
bool loewner_less(const CMatrix& a, const CMatrix& b, double tol);
bool loewner_less(const CMatrix& a, const CMatrix& b);

// Pade [6/6] with scaling and squaring.
CMatrix mat_exp(const CMatrix& a);

// (exp(iA) - exp(-iA)) / 2i; imaginary part dropped for real A.
CMatrix mat_sin(const CMatrix& a);
CMatrix mat_cos(const CMatrix& a);

CMatrix mat_pow_nat(const CMatrix& a, std::size_t k);

// n^X = exp(log(n) X); exactly I for n = 1.
CMatrix dirichlet_pow(std::size_t n, const CMatrix& x);

CMatrix jordan_block(Complex lambda, std::size_t d);

// Upper Toeplitz matrix with entries f^(j)(lambda)/j!, derivs = (f, f', f'', ...).
CMatrix jordan_function_oracle(const std::vector<Complex>& derivs);

// (I - X^n)(I - X)^{-1}, the sum of X^0..X^{n-1}.
CMatrix neumann_closed_form(const CMatrix& x, std::size_t n);

// Entrywise (1 - x^n)/(1 - x), equal to n where x == 1.
CMatrix hadamard_closed_form(const CMatrix& x, std::size_t n);

// Solve A Y = B by partial-pivot LU, raising on a numerically singular A.
CMatrix solve(const CMatrix& a, const CMatrix& b, const char* what = "solve");

}  // namespace divsum
