#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "divsum/linalg.hpp"

namespace divsum {

// Unit roundoff convention used by the error budgets.
inline constexpr double kUnitRoundoff = 0x1p-52;

enum class KernelKind { recursive, block, compensated, mixed };

struct KernelSpec {
  KernelKind kind = KernelKind::recursive;
  std::size_t block = 0;                      // block and mixed
  std::shared_ptr<const KernelSpec> fast;      // mixed only
  std::shared_ptr<const KernelSpec> accurate;  // mixed only

  static KernelSpec recursive();
  static KernelSpec compensated();
  static KernelSpec blocked(std::size_t b);
  static KernelSpec mixed(std::size_t b, const KernelSpec& fast, const KernelSpec& accurate);

  std::string tag() const;
};

// recursive | block:<b> | kahan | mixed:<b>:<fast>:<accurate>, with fast and
// accurate drawn from recursive | kahan.
KernelSpec parse_kernel(const std::string& tag);

// Streaming form of a kernel. value() is the kernel's result on the terms seen so far.
class Accumulator {
 public:
  virtual ~Accumulator() = default;
  virtual void add(const CMatrix& term) = 0;
  virtual CMatrix value() const = 0;
  virtual std::unique_ptr<Accumulator> clone() const = 0;
};

std::unique_ptr<Accumulator> make_accumulator(const KernelSpec& spec);

struct TermStream {
  std::size_t count = 0;  // n + 1
  std::function<CMatrix(std::size_t)> at;
};

TermStream stream_of(const std::vector<CMatrix>& terms);

CMatrix recursive_sum(const TermStream& t);
CMatrix block_sum(const TermStream& t, std::size_t b);
CMatrix compensated_sum(const TermStream& t);
CMatrix mixed_block_sum(const TermStream& t, std::size_t b, const KernelSpec& fast, const KernelSpec& accurate);
CMatrix kernel_sum(const TermStream& t, const KernelSpec& spec);

// Sum_k a_k X^k by the loop P <- P X, S <- S + a_k P.
CMatrix horner_matrix_poly(const std::vector<Complex>& coeffs, const CMatrix& x);

struct ErrorBudget {
  double coefficient = 0.0;
  double norm_sum = 0.0;
  double bound = 0.0;
};

// n is the last index (n + 1 terms).
ErrorBudget error_budget(const KernelSpec& spec, std::size_t n, double norm_sum);

}  // namespace divsum
