#include "divsum/float_sum.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#ifdef __FAST_MATH__
#error "compensated summation requires IEEE semantics; do not build with -ffast-math"
#endif

namespace divsum {

KernelSpec KernelSpec::recursive() { return KernelSpec{}; }

KernelSpec KernelSpec::compensated() {
  KernelSpec k;
  k.kind = KernelKind::compensated;
  return k;
}

KernelSpec KernelSpec::blocked(std::size_t b) {
  if (b == 0) throw Error(ErrorCode::invalid_input, "block size must be positive");
  KernelSpec k;
  k.kind = KernelKind::block;
  k.block = b;
  return k;
}

KernelSpec KernelSpec::mixed(std::size_t b, const KernelSpec& fast, const KernelSpec& accurate) {
  if (b == 0) throw Error(ErrorCode::invalid_input, "block size must be positive");
  KernelSpec k;
  k.kind = KernelKind::mixed;
  k.block = b;
  k.fast = std::make_shared<const KernelSpec>(fast);
  k.accurate = std::make_shared<const KernelSpec>(accurate);
  return k;
}

std::string KernelSpec::tag() const {
  switch (kind) {
    case KernelKind::recursive: return "recursive";
    case KernelKind::compensated: return "kahan";
    case KernelKind::block: return "block:" + std::to_string(block);
    case KernelKind::mixed: return "mixed:" + std::to_string(block) + ":" + fast->tag() + ":" + accurate->tag();
  }
  return "?";
}

namespace {

KernelSpec parse_simple(const std::string& s) {
  if (s == "recursive") return KernelSpec::recursive();
  if (s == "kahan" || s == "compensated") return KernelSpec::compensated();
  throw Error(ErrorCode::parse, "unknown kernel tag '" + s + "'");
}

std::size_t parse_size(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse, "bad integer '" + s + "'");
  }
  if (pos != s.size()) throw Error(ErrorCode::parse, "bad integer '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

class RecursiveAccumulator : public Accumulator {
 public:
  void add(const CMatrix& term) override {
    if (!started_) {
      s_ = term;
      started_ = true;
    } else {
      if (term.rows() != s_.rows() || term.cols() != s_.cols())
        throw Error(ErrorCode::dimension_mismatch, "summation: term shapes differ");
      s_ += term;
    }
  }
  CMatrix value() const override { return s_; }
  std::unique_ptr<Accumulator> clone() const override { return std::make_unique<RecursiveAccumulator>(*this); }

 private:
  bool started_ = false;
  CMatrix s_;
};

class CompensatedAccumulator : public Accumulator {
 public:
  void add(const CMatrix& term) override {
    if (!started_) {
      s_ = CMatrix::Zero(term.rows(), term.cols());
      c_ = CMatrix::Zero(term.rows(), term.cols());
      started_ = true;
    } else if (term.rows() != s_.rows() || term.cols() != s_.cols()) {
      throw Error(ErrorCode::dimension_mismatch, "summation: term shapes differ");
    }
    // real and imaginary parts are independent real Kahan loops
    const std::size_t len = 2 * static_cast<std::size_t>(term.size());
    const double* a = reinterpret_cast<const double*>(term.data());
    double* s = reinterpret_cast<double*>(s_.data());
    double* c = reinterpret_cast<double*>(c_.data());
    for (std::size_t i = 0; i < len; ++i) {
      const double y = a[i] - c[i];
      const double t = s[i] + y;
      c[i] = (t - s[i]) - y;
      s[i] = t;
    }
  }
  CMatrix value() const override { return s_; }
  std::unique_ptr<Accumulator> clone() const override { return std::make_unique<CompensatedAccumulator>(*this); }

 private:
  bool started_ = false;
  CMatrix s_, c_;
};

class BlockAccumulator : public Accumulator {
 public:
  BlockAccumulator(std::size_t b, KernelSpec fast, KernelSpec accurate)
      : b_(b), fast_(std::move(fast)), accurate_(std::move(accurate)) {
    current_ = make_accumulator(fast_);
    outer_ = make_accumulator(accurate_);
  }
  BlockAccumulator(const BlockAccumulator& o)
      : b_(o.b_), in_block_(o.in_block_), outer_started_(o.outer_started_), fast_(o.fast_), accurate_(o.accurate_),
        current_(o.current_->clone()), outer_(o.outer_->clone()) {}

  void add(const CMatrix& term) override {
    current_->add(term);
    if (++in_block_ == b_) {
      outer_->add(current_->value());
      outer_started_ = true;
      current_ = make_accumulator(fast_);
      in_block_ = 0;
    }
  }
  CMatrix value() const override {
    if (in_block_ == 0) return outer_started_ ? outer_->value() : CMatrix();
    auto tmp = outer_->clone();
    tmp->add(current_->value());
    return tmp->value();
  }
  std::unique_ptr<Accumulator> clone() const override { return std::make_unique<BlockAccumulator>(*this); }

 private:
  std::size_t b_;
  std::size_t in_block_ = 0;
  bool outer_started_ = false;
  KernelSpec fast_, accurate_;
  std::unique_ptr<Accumulator> current_, outer_;
};

double coefficient(const KernelSpec& spec, double n) {
  switch (spec.kind) {
    case KernelKind::recursive: return n;
    case KernelKind::compensated: return 2.0;
    case KernelKind::block: {
      const double b = static_cast<double>(spec.block);
      return b + (n + 1.0) / b - 2.0;
    }
    case KernelKind::mixed: {
      const double b = static_cast<double>(spec.block);
      const double blocks = std::ceil((n + 1.0) / b);
      const double ef = coefficient(*spec.fast, b - 1.0);
      const double ea = coefficient(*spec.accurate, blocks - 1.0);
      return ef + ea + ef * ea * kUnitRoundoff;
    }
  }
  return 0.0;
}

}  // namespace

KernelSpec parse_kernel(const std::string& tag) {
  const auto parts = split(tag, ':');
  if (parts.empty()) throw Error(ErrorCode::parse, "empty kernel tag");
  if (parts[0] == "block" && parts.size() == 2) return KernelSpec::blocked(parse_size(parts[1]));
  if (parts[0] == "mixed" && parts.size() == 4)
    return KernelSpec::mixed(parse_size(parts[1]), parse_simple(parts[2]), parse_simple(parts[3]));
  if (parts.size() == 1) return parse_simple(parts[0]);
  throw Error(ErrorCode::parse, "unknown kernel tag '" + tag + "'");
}

std::unique_ptr<Accumulator> make_accumulator(const KernelSpec& spec) {
  switch (spec.kind) {
    case KernelKind::recursive: return std::make_unique<RecursiveAccumulator>();
    case KernelKind::compensated: return std::make_unique<CompensatedAccumulator>();
    case KernelKind::block:
      return std::make_unique<BlockAccumulator>(spec.block, KernelSpec::recursive(), KernelSpec::recursive());
    case KernelKind::mixed: return std::make_unique<BlockAccumulator>(spec.block, *spec.fast, *spec.accurate);
  }
  throw Error(ErrorCode::invalid_input, "unknown kernel");
}

TermStream stream_of(const std::vector<CMatrix>& terms) {
  auto keep = std::make_shared<const std::vector<CMatrix>>(terms);
  return TermStream{terms.size(), [keep](std::size_t k) { return (*keep)[k]; }};
}

CMatrix kernel_sum(const TermStream& t, const KernelSpec& spec) {
  if (t.count == 0) throw Error(ErrorCode::invalid_input, "summation needs at least one term");
  auto acc = make_accumulator(spec);
  for (std::size_t k = 0; k < t.count; ++k) acc->add(t.at(k));
  return acc->value();
}

CMatrix recursive_sum(const TermStream& t) { return kernel_sum(t, KernelSpec::recursive()); }

CMatrix block_sum(const TermStream& t, std::size_t b) { return kernel_sum(t, KernelSpec::blocked(b)); }

CMatrix compensated_sum(const TermStream& t) { return kernel_sum(t, KernelSpec::compensated()); }

CMatrix mixed_block_sum(const TermStream& t, std::size_t b, const KernelSpec& fast, const KernelSpec& accurate) {
  return kernel_sum(t, KernelSpec::mixed(b, fast, accurate));
}

CMatrix horner_matrix_poly(const std::vector<Complex>& coeffs, const CMatrix& x) {
  if (coeffs.empty()) throw Error(ErrorCode::invalid_input, "horner_matrix_poly: no coefficients");
  const Eigen::Index d = x.rows();
  // trailing zeros (often underflowed weights) would only pair 0 with an overflowed power
  std::size_t n = coeffs.size();
  while (n > 1 && coeffs[n - 1] == Complex(0.0)) --n;
  CMatrix s = coeffs[0] * CMatrix::Identity(d, d);
  if (n == 1) return s;
  CMatrix p = x;
  s += coeffs[1] * p;
  for (std::size_t k = 2; k < n; ++k) {
    p = p * x;
    s += coeffs[k] * p;
  }
  return s;
}

ErrorBudget error_budget(const KernelSpec& spec, std::size_t n, double norm_sum) {
  ErrorBudget eb;
  eb.coefficient = coefficient(spec, static_cast<double>(n));
  eb.norm_sum = norm_sum;
  eb.bound = eb.coefficient * kUnitRoundoff * norm_sum;
  return eb;
}

}  // namespace divsum
