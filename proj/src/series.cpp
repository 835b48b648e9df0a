#include "divsum/series.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>

#include "divsum/float_sum.hpp"
#include "divsum/schur.hpp"

namespace divsum {

namespace {

class OracleCursor : public TermCursor {
 public:
  explicit OracleCursor(const MatrixSeries& s) : series_(s) {}
  CMatrix next() override { return series_.term(k_++); }

 private:
  MatrixSeries series_;
  std::size_t k_ = 0;
};

template <class Next, class Tail>
class LambdaCursor : public TermCursor {
 public:
  LambdaCursor(Next n, Tail t) : next_(std::move(n)), tail_(std::move(t)) {}
  CMatrix next() override { return next_(); }
  bool zero_tail() const override { return tail_(); }

 private:
  Next next_;
  Tail tail_;
};

template <class Next, class Tail>
std::unique_ptr<TermCursor> lambda_cursor(Next n, Tail t) {
  return std::make_unique<LambdaCursor<Next, Tail>>(std::move(n), std::move(t));
}

Complex cpow_nat(Complex z, std::size_t k) {
  Complex r(1.0, 0.0);
  for (; k > 0; k >>= 1u) {
    if (k & 1u) r *= z;
    z *= z;
  }
  return r;
}

}  // namespace

CMatrix MatrixSeries::term(std::size_t k) const {
  if (k < start_index) return CMatrix::Zero(dim, dim);
  return term_at(k);
}

std::unique_ptr<TermCursor> MatrixSeries::cursor() const {
  if (make_cursor) return make_cursor();
  return std::make_unique<OracleCursor>(*this);
}

void flush_subnormal(CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (std::abs(a(i, j).real()) >= DBL_MIN || std::abs(a(i, j).imag()) >= DBL_MIN) return;
  a.setZero();
}

PartialSums partial_sums(const MatrixSeries& series, std::size_t n, const KernelSpec& kernel) {
  if (n < series.start_index) throw Error(ErrorCode::invalid_input, "partial_sums: n below start index");
  PartialSums out;
  out.kernel_tag = kernel.tag();
  out.values.reserve(n + 1);
  auto acc = make_accumulator(kernel);
  auto cur = series.cursor();
  for (std::size_t k = 0; k <= n; ++k) {
    acc->add(cur->next());
    out.values.push_back(acc->value());
  }
  return out;
}

PartialSums partial_sums(const MatrixSeries& series, std::size_t n) {
  return partial_sums(series, n, KernelSpec::recursive());
}

MatrixSeries memoize(const MatrixSeries& series) {
  struct Cache {
    std::unique_ptr<TermCursor> cursor;
    std::vector<CMatrix> terms;
    std::size_t zero_from = SIZE_MAX;
  };
  auto cache = std::make_shared<Cache>();
  MatrixSeries base = series;
  auto fetch = [cache, base](std::size_t k) -> CMatrix {
    if (k >= cache->zero_from) return CMatrix::Zero(base.dim, base.dim);
    if (!cache->cursor) cache->cursor = base.cursor();
    while (cache->terms.size() <= k) {
      cache->terms.push_back(cache->cursor->next());
      if (cache->cursor->zero_tail()) {
        cache->zero_from = cache->terms.size();
        if (k >= cache->zero_from) return CMatrix::Zero(base.dim, base.dim);
      }
    }
    return cache->terms[k];
  };
  MatrixSeries m = series;
  m.family_tag = series.family_tag;
  m.term_at = fetch;
  m.make_cursor = [cache, fetch]() {
    auto k = std::make_shared<std::size_t>(0);
    return lambda_cursor([k, fetch]() { return fetch((*k)++); },
                         [k, cache]() { return *k >= cache->zero_from; });
  };
  return m;
}

MatrixSeries zero_series(std::size_t d) {
  MatrixSeries s;
  s.dim = d;
  s.family_tag = "zero";
  s.term_at = [d](std::size_t) { return CMatrix::Zero(d, d); };
  s.make_cursor = [d]() {
    return lambda_cursor([d]() { return CMatrix::Zero(d, d); }, []() { return true; });
  };
  s.damped_borel = [d](double) { return CMatrix::Zero(d, d); };
  return s;
}

MatrixSeries neumann_terms(const CMatrix& x) {
  MatrixSeries s;
  s.dim = static_cast<std::size_t>(x.rows());
  s.family_tag = "neumann";
  s.term_at = [x](std::size_t k) {
    CMatrix p = mat_pow_nat(x, k);
    flush_subnormal(p);
    return p;
  };
  s.make_cursor = [x]() {
    struct State {
      CMatrix p;
      bool started = false;
      bool zero = false;
    };
    auto st = std::make_shared<State>();
    return lambda_cursor(
        [st, x]() {
          if (!st->started) {
            st->p = CMatrix::Identity(x.rows(), x.cols());
            st->started = true;
          } else if (!st->zero) {
            st->p = st->p * x;
            flush_subnormal(st->p);
          }
          st->zero = st->p.isZero(0.0);
          return st->p;
        },
        [st]() { return st->zero; });
  };
  s.damped_borel = [x](double t) {
    return mat_exp(t * (x - CMatrix::Identity(x.rows(), x.cols())));
  };
  return s;
}

MatrixSeries square_wave_fourier_terms(const CMatrix& x) {
  const std::size_t d = static_cast<std::size_t>(x.rows());
  MatrixSeries s;
  s.dim = d;
  s.start_index = 1;
  s.family_tag = "fourier-square";
  s.term_at = [x, d](std::size_t k) -> CMatrix {
    if (k % 2 == 0) return CMatrix::Zero(d, d);
    const double c = 4.0 / (std::numbers::pi * static_cast<double>(k));
    return c * mat_sin(static_cast<double>(k) * x);
  };
  // sin(kX) from running powers of exp(iX) and exp(-iX)
  s.make_cursor = [x, d]() {
    struct State {
      std::size_t k = 0;
      bool real = false;
      CMatrix e_pos, e_neg, p_pos, p_neg;
    };
    auto st = std::make_shared<State>();
    const Complex i(0.0, 1.0);
    st->real = is_real(x);
    st->e_pos = mat_exp(i * x);
    st->p_pos = CMatrix::Identity(d, d);
    if (!st->real) {
      st->e_neg = mat_exp(-i * x);
      st->p_neg = CMatrix::Identity(d, d);
    }
    return lambda_cursor(
        [st, d, i]() -> CMatrix {
          const std::size_t k = st->k++;
          if (k == 0) return CMatrix::Zero(d, d);
          st->p_pos = st->p_pos * st->e_pos;
          if (!st->real) st->p_neg = st->p_neg * st->e_neg;
          if (k % 2 == 0) return CMatrix::Zero(d, d);
          const double c = 4.0 / (std::numbers::pi * static_cast<double>(k));
          if (st->real) {
            CMatrix out = CMatrix::Zero(d, d);
            out.real() = c * st->p_pos.imag();
            return out;
          }
          return c * (st->p_pos - st->p_neg) / (2.0 * i);
        },
        []() { return false; });
  };
  return s;
}

MatrixSeries dirichlet_mobius_terms(const CMatrix& x, std::size_t bound) {
  const std::size_t d = static_cast<std::size_t>(x.rows());
  auto mu = std::make_shared<const MobiusTable>(bound);
  auto sf = std::make_shared<const SchurForm>(schur(x));
  MatrixSeries s;
  s.dim = d;
  s.start_index = 1;
  s.family_tag = "dirichlet-mobius";
  s.term_at = [mu, sf, d](std::size_t n) -> CMatrix {
    if (n == 0) return CMatrix::Zero(d, d);
    const int m = (*mu)(n);
    if (m == 0) return CMatrix::Zero(d, d);
    if (n == 1) return CMatrix::Identity(d, d);
    CMatrix e = mat_exp(-std::log(static_cast<double>(n)) * sf->r);
    return static_cast<double>(m) * (sf->q * e * sf->q.adjoint());
  };
  return s;
}

MatrixSeries hadamard_power_terms(const CMatrix& a) {
  MatrixSeries s;
  s.dim = static_cast<std::size_t>(a.rows());
  s.family_tag = "hadamard";
  s.term_at = [a](std::size_t k) {
    CMatrix out(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) = cpow_nat(a(i, j), k);
    return out;
  };
  s.make_cursor = [a]() {
    auto p = std::make_shared<CMatrix>();
    return lambda_cursor(
        [p, a]() {
          if (p->size() == 0) {
            *p = CMatrix::Ones(a.rows(), a.cols());
          } else {
            *p = p->cwiseProduct(a);
          }
          return *p;
        },
        []() { return false; });
  };
  return s;
}

MatrixSeries coeff_power_terms(const CMatrix& x, std::function<Complex(std::size_t)> coeff) {
  MatrixSeries s;
  s.dim = static_cast<std::size_t>(x.rows());
  s.family_tag = "power-coeffs";
  s.term_at = [x, coeff](std::size_t k) -> CMatrix {
    const Complex a = coeff(k);
    if (a == Complex(0.0)) return CMatrix::Zero(x.rows(), x.cols());
    CMatrix p = mat_pow_nat(x, k);
    flush_subnormal(p);
    return a * p;
  };
  s.make_cursor = [x, coeff]() {
    struct State {
      std::size_t k = 0;
      CMatrix p;
      bool zero = false;
    };
    auto st = std::make_shared<State>();
    return lambda_cursor(
        [st, x, coeff]() -> CMatrix {
          const std::size_t k = st->k++;
          if (k == 0) {
            st->p = CMatrix::Identity(x.rows(), x.cols());
          } else if (!st->zero) {
            st->p = st->p * x;
            flush_subnormal(st->p);
            st->zero = st->p.isZero(0.0);
          }
          return coeff(k) * st->p;
        },
        [st]() { return st->zero; });
  };
  return s;
}

MatrixSeries coeff_power_terms(const CMatrix& x, std::vector<Complex> coeffs) {
  auto c = std::make_shared<const std::vector<Complex>>(std::move(coeffs));
  MatrixSeries s = coeff_power_terms(x, [c](std::size_t k) { return k < c->size() ? (*c)[k] : Complex(0.0); });
  auto base_cursor = s.make_cursor;
  s.make_cursor = [base_cursor, c]() {
    auto inner = std::shared_ptr<TermCursor>(base_cursor());
    auto k = std::make_shared<std::size_t>(0);
    return lambda_cursor([inner, k]() { ++*k; return inner->next(); },
                         [inner, k, c]() { return inner->zero_tail() || *k >= c->size(); });
  };
  return s;
}

MobiusTable::MobiusTable(std::size_t bound) : bound_(bound), mu_(bound + 1, 0) {
  if (bound == 0) return;
  std::vector<std::size_t> primes;
  std::vector<bool> composite(bound + 1, false);
  mu_[1] = 1;
  for (std::size_t i = 2; i <= bound; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu_[i] = -1;
    }
    for (std::size_t p : primes) {
      const std::size_t ip = i * p;
      if (ip > bound) break;
      composite[ip] = true;
      if (i % p == 0) {
        mu_[ip] = 0;
        break;
      }
      mu_[ip] = static_cast<std::int8_t>(-mu_[i]);
    }
  }
}

int MobiusTable::operator()(std::size_t n) const {
  if (n == 0 || n > bound_) throw Error(ErrorCode::out_of_range, "mobius: index outside sieve bound");
  return mu_[n];
}

int mobius(std::size_t n, std::size_t bound) {
  if (bound == 1000000) {
    static const MobiusTable table(1000000);
    return table(n);
  }
  return MobiusTable(bound)(n);
}

}  // namespace divsum
