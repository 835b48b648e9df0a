#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "divsum/linalg.hpp"

namespace divsum {

struct KernelSpec;

// Sequential access to A_0, A_1, ... that may reuse work between terms.
class TermCursor {
 public:
  virtual ~TermCursor() = default;
  virtual CMatrix next() = 0;
  // True when every term after the last one returned is exactly zero.
  virtual bool zero_tail() const { return false; }
};

struct MatrixSeries {
  std::size_t dim = 0;
  std::size_t start_index = 0;  // 0 or 1; terms below it are zero
  std::function<CMatrix(std::size_t)> term_at;
  std::string family_tag;
  // Optional faster sequential access; must agree with term_at to rounding.
  std::function<std::unique_ptr<TermCursor>()> make_cursor;
  // Optional closed form of e^{-t} * sum_k A_k t^k / k!.
  std::function<CMatrix(double)> damped_borel;

  CMatrix term(std::size_t k) const;
  std::unique_ptr<TermCursor> cursor() const;
};

struct PartialSums {
  std::vector<CMatrix> values;  // S_0 .. S_n
  std::string kernel_tag;
};

PartialSums partial_sums(const MatrixSeries& series, std::size_t n);
PartialSums partial_sums(const MatrixSeries& series, std::size_t n, const KernelSpec& kernel);

// Wraps a series so every computed term is cached.
MatrixSeries memoize(const MatrixSeries& series);

// Replaces a matrix whose entries are all below the smallest normal double by zero.
void flush_subnormal(CMatrix& a);

MatrixSeries neumann_terms(const CMatrix& x);
// (2/(pi k))(1 - (-1)^k) sin(kX), k >= 1.
MatrixSeries square_wave_fourier_terms(const CMatrix& x);
// mu(n) n^{-X}, n >= 1, sharing one Schur form of X.
MatrixSeries dirichlet_mobius_terms(const CMatrix& x, std::size_t bound = 1000000);
// Entrywise powers A^{o k}; A^{o 0} is the all-ones matrix.
MatrixSeries hadamard_power_terms(const CMatrix& a);
// a_k X^k with a_k = 0 beyond the given list.
MatrixSeries coeff_power_terms(const CMatrix& x, std::vector<Complex> coeffs);
MatrixSeries coeff_power_terms(const CMatrix& x, std::function<Complex(std::size_t)> coeff);
MatrixSeries zero_series(std::size_t d);

// Linear sieve for the Moebius function on [1, bound].
class MobiusTable {
 public:
  explicit MobiusTable(std::size_t bound = 1000000);
  int operator()(std::size_t n) const;
  std::size_t bound() const { return bound_; }

 private:
  std::size_t bound_;
  std::vector<std::int8_t> mu_;
};

int mobius(std::size_t n, std::size_t bound = 1000000);

}  // namespace divsum
