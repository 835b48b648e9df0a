#include "divsum/sequential.hpp"

#include <cmath>
#include <limits>

#include "divsum/special.hpp"

namespace divsum {

namespace {

double inverse_norm(const CMatrix& a) {
  Eigen::BDCSVD<CMatrix> svd(a);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  return smin > 0.0 ? 1.0 / smin : std::numeric_limits<double>::infinity();
}

bool is_scalar_identity(const CMatrix& p) {
  const Complex c = p(0, 0);
  if (c.imag() != 0.0) return false;
  for (Eigen::Index j = 0; j < p.cols(); ++j)
    for (Eigen::Index i = 0; i < p.rows(); ++i)
      if (p(i, j) != (i == j ? c : Complex(0.0))) return false;
  return true;
}

void require_weight_pd(const CMatrix& p, std::size_t k) {
  if (!is_positive_definite(p))
    throw Error(ErrorCode::invalid_weights, "weight " + std::to_string(k) + " is not positive definite");
}

}  // namespace

ScalarSeqWeights conventional_weights() {
  return {[](std::size_t n, std::size_t k) { return Complex(n == k ? 1.0 : 0.0); }, "conventional"};
}

ScalarSeqWeights cesaro_scalar_weights() {
  return {[](std::size_t n, std::size_t k) -> Complex {
            if (n == 0) return k == 0 ? 1.0 : 0.0;
            return k < n ? 1.0 / static_cast<double>(n) : 0.0;
          },
          "cesaro"};
}

ScalarSeqWeights euler_scalar_weights(double rho) {
  if (!(rho > 0.0)) throw Error(ErrorCode::invalid_weights, "Euler parameter must be positive");
  const double q = rho / (1.0 + rho), r = 1.0 / (1.0 + rho);
  const double lq = std::log(rho) - std::log1p(rho);
  const double lr = -std::log1p(rho);
  return {[q, r, lq, lr](std::size_t n, std::size_t k) -> Complex {
            if (k > n) return 0.0;
            // direct products keep full precision for moderate n; logs beyond
            if (n < 1000) {
              const double w = binomial(n + 1, k + 1) * std::pow(q, static_cast<double>(n - k)) *
                               std::pow(r, static_cast<double>(k + 1));
              if (std::isfinite(w) && w > 1e-280) return w;
            }
            return std::exp(log_binomial(n + 1, k + 1) + static_cast<double>(n - k) * lq +
                            static_cast<double>(k + 1) * lr);
          },
          "euler:" + std::to_string(rho)};
}

SeqWeights as_matrix_weights(const ScalarSeqWeights& c, std::size_t dim) {
  auto fn = c.c_at;
  return {dim, [fn, dim](std::size_t n, std::size_t k) -> CMatrix { return fn(n, k) * CMatrix::Identity(dim, dim); },
          c.tag};
}

NorlundWeights cesaro_weights(std::size_t j, std::size_t dim) {
  NorlundWeights w;
  w.dim = dim;
  w.tag = "cesaro:" + std::to_string(j);
  if (j == 0) {
    // P_0 = I, P_k = 0: the transform is S_n itself
    w.weight_at = [dim](std::size_t k) -> CMatrix {
      return k == 0 ? CMatrix(CMatrix::Identity(dim, dim)) : CMatrix(CMatrix::Zero(dim, dim));
    };
    return w;
  }
  w.weight_at = [j, dim](std::size_t k) -> CMatrix {
    const double b = std::round(std::exp(log_binomial(k + j - 1, j - 1)));
    return b * CMatrix::Identity(dim, dim);
  };
  return w;
}

NorlundWeights norlund_from_list(std::vector<CMatrix> weights) {
  if (weights.empty()) throw Error(ErrorCode::invalid_weights, "empty weight list");
  auto list = std::make_shared<const std::vector<CMatrix>>(std::move(weights));
  NorlundWeights w;
  w.dim = static_cast<std::size_t>((*list)[0].rows());
  w.tag = "norlund:list";
  w.weight_at = [list](std::size_t k) -> CMatrix {
    if (k >= list->size()) throw Error(ErrorCode::out_of_range, "Noerlund weight list too short");
    return (*list)[k];
  };
  return w;
}

CMatrix norlund_transform(const MatrixSeries& series, const NorlundWeights& w, std::size_t n) {
  const std::size_t d = series.dim;
  if (w.dim != d) throw Error(ErrorCode::dimension_mismatch, "Noerlund weights and series differ in dimension");
  const bool conventional = w.tag == "cesaro:0";
  auto cur = series.cursor();
  CMatrix s = CMatrix::Zero(d, d);
  CMatrix num = CMatrix::Zero(d, d);
  CMatrix den = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k <= n; ++k) {
    s += cur->next();
    if (conventional) continue;
    const CMatrix pk = w.weight_at(k);
    require_weight_pd(pk, k);
    den += pk;
    num += w.weight_at(n - k) * s;
  }
  if (conventional) return s;
  return solve(den, num, "norlund_transform");
}

SumReport norlund_sum(const MatrixSeries& series, const NorlundWeights& w, std::size_t n, double tol) {
  SumReport r;
  r.method = w.tag;
  r.value = norlund_transform(series, w, n);
  r.terms_used = n + 1;
  if (n == 0) return r;
  const CMatrix prev = norlund_transform(series, w, n - 1);
  const CMatrix half = norlund_transform(series, w, n / 2);
  r.last_increment_norm = spectral_norm(r.value - prev);
  const double scale = tol * (1.0 + spectral_norm(r.value));
  r.converged = r.last_increment_norm <= scale && spectral_norm(r.value - half) <= scale;
  return r;
}

NorlundCondition norlund_condition_check(const NorlundWeights& w, std::size_t k_max) {
  NorlundCondition out;
  CMatrix total = CMatrix::Zero(w.dim, w.dim);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const CMatrix pk = w.weight_at(k);
    total += pk;
    out.ratios.push_back(inverse_norm(total) * spectral_norm(pk));
  }
  out.warning = out.ratios[k_max] > 0.9 * out.ratios[k_max / 2];
  return out;
}

SumReport cesaro_sum(const MatrixSeries& series, std::size_t n, double tol, const KernelSpec& kernel) {
  if (n == 0) throw Error(ErrorCode::invalid_input, "cesaro_sum needs n >= 1");
  const std::size_t d = series.dim;
  const std::size_t m_prev = n > 1 ? n - 1 : 1;
  const std::size_t m_half = std::max<std::size_t>(n / 2, 1);

  // T_m = S_0 + ... + S_{m-1}
  auto s_acc = make_accumulator(kernel);
  auto t_acc = make_accumulator(kernel);
  auto cur = series.cursor();
  CMatrix t_prev, t_half, t_n;
  auto capture = [&](std::size_t m, const CMatrix& tm) {
    if (m == m_prev) t_prev = tm;
    if (m == m_half) t_half = tm;
    if (m == n) t_n = tm;
  };
  for (std::size_t k = 0; k < n; ++k) {
    s_acc->add(cur->next());
    const CMatrix sk = s_acc->value();
    t_acc->add(sk);
    capture(k + 1, t_acc->value());
    if (cur->zero_tail() && k + 1 < n) {
      // S_j = S_k for all j > k, so T_m = T_{k+1} + (m - k - 1) S_k
      const CMatrix tk = t_acc->value();
      for (std::size_t m : {m_half, m_prev, n})
        if (m > k + 1) capture(m, tk + static_cast<double>(m - k - 1) * sk);
      break;
    }
  }
  SumReport r;
  r.method = "cesaro";
  r.terms_used = n;
  r.value = t_n / static_cast<double>(n);
  const CMatrix prev = t_prev / static_cast<double>(m_prev);
  const CMatrix half = t_half / static_cast<double>(m_half);
  r.last_increment_norm = spectral_norm(r.value - prev);
  const double scale = tol * (1.0 + spectral_norm(r.value));
  r.converged = r.last_increment_norm <= scale && spectral_norm(r.value - half) <= scale;
  (void)d;
  return r;
}

namespace {

// Hermitian positive definite P = U diag(p) U^H; U is skipped when P = pI.
struct EulerBasis {
  bool scalar = false;
  CMatrix u;
  Eigen::VectorXd p;
};

EulerBasis euler_basis(const CMatrix& p) {
  if (p.rows() != p.cols() || p.rows() == 0) throw Error(ErrorCode::dimension_mismatch, "Euler parameter not square");
  if (!is_positive_definite(p)) throw Error(ErrorCode::invalid_weights, "Euler parameter must be positive definite");
  EulerBasis b;
  if (is_scalar_identity(p)) {
    b.scalar = true;
    b.p = Eigen::VectorXd::Constant(p.rows(), p(0, 0).real());
    return b;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (p + p.adjoint()));
  b.u = es.eigenvectors();
  b.p = es.eigenvalues();
  return b;
}

// binom(n,k) (1+p)^{-n-1} p^{n-k}
double euler_weight(double p, std::size_t n, std::size_t k) {
  const double lq = std::log(p) - std::log1p(p);
  const double lr = -std::log1p(p);
  return std::exp(log_binomial(n, k) + static_cast<double>(n - k) * lq + static_cast<double>(k + 1) * lr);
}

struct EulerState {
  EulerBasis basis;
  MatrixSeries series;
  std::unique_ptr<TermCursor> cursor;
  std::vector<CMatrix> rotated;  // U^H A_k

  const CMatrix& rotated_term(std::size_t k) {
    if (!cursor) cursor = series.cursor();
    while (rotated.size() <= k) {
      CMatrix a = cursor->next();
      rotated.push_back(basis.scalar ? a : CMatrix(basis.u.adjoint() * a));
    }
    return rotated[k];
  }

  CMatrix term(std::size_t n) {
    const std::size_t d = series.dim;
    CMatrix acc = CMatrix::Zero(d, d);
    std::vector<double> w(static_cast<std::size_t>(basis.p.size()));
    for (std::size_t k = 0; k <= n; ++k) {
      const CMatrix& a = rotated_term(k);
      if (basis.scalar) {
        acc += euler_weight(basis.p(0), n, k) * a;
      } else {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = euler_weight(basis.p(i), n, k);
        for (std::size_t i = 0; i < w.size(); ++i) acc.row(i) += w[i] * a.row(i);
      }
    }
    return basis.scalar ? acc : CMatrix(basis.u * acc);
  }
};

}  // namespace

CMatrix euler_transform_term(const MatrixSeries& series, const CMatrix& p, std::size_t n) {
  EulerState st{euler_basis(p), series, nullptr, {}};
  return st.term(n);
}

MatrixSeries euler_transformed(const MatrixSeries& series, const CMatrix& p) {
  if (static_cast<std::size_t>(p.rows()) != series.dim)
    throw Error(ErrorCode::dimension_mismatch, "Euler parameter and series differ in dimension");
  auto st = std::make_shared<EulerState>(EulerState{euler_basis(p), series, nullptr, {}});
  MatrixSeries out;
  out.dim = series.dim;
  out.family_tag = "euler(" + series.family_tag + ")";
  out.term_at = [st](std::size_t n) { return st->term(n); };
  return out;
}

MatrixSeries neumann_euler_terms(const CMatrix& x, const CMatrix& p) {
  if (x.rows() != p.rows()) throw Error(ErrorCode::dimension_mismatch, "Euler parameter and X differ in dimension");
  if (!is_positive_definite(p)) throw Error(ErrorCode::invalid_weights, "Euler parameter must be positive definite");
  const Eigen::Index d = x.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  auto lu = std::make_shared<const Eigen::PartialPivLU<CMatrix>>(id + p);
  // the check in solve() also guards I + P
  (void)solve(id + p, id, "neumann_euler_terms: I + P");
  const CMatrix px = p + x;

  struct State {
    CMatrix e;
    bool started = false;
    bool zero = false;
  };
  auto step = [lu, px, id](State& st) {
    if (!st.started) {
      st.e = lu->solve(id);
      st.started = true;
    } else if (!st.zero) {
      st.e = lu->solve(px * st.e);
      flush_subnormal(st.e);
    }
    st.zero = st.e.isZero(0.0);
  };

  MatrixSeries out;
  out.dim = static_cast<std::size_t>(d);
  out.family_tag = "euler(neumann)";
  out.term_at = [step](std::size_t n) {
    State st;
    for (std::size_t k = 0; k <= n; ++k) step(st);
    return st.e;
  };
  out.make_cursor = [step]() {
    auto st = std::make_shared<State>();
    struct C : TermCursor {
      std::shared_ptr<State> st;
      decltype(step) fn;
      C(std::shared_ptr<State> s, decltype(step) f) : st(std::move(s)), fn(std::move(f)) {}
      CMatrix next() override {
        fn(*st);
        return st->e;
      }
      bool zero_tail() const override { return st->zero; }
    };
    return std::unique_ptr<TermCursor>(new C(st, step));
  };
  return out;
}

SumReport sum_terms(const MatrixSeries& terms, std::size_t n, double tol, const KernelSpec& kernel,
                    const std::string& method) {
  auto acc = make_accumulator(kernel);
  auto cur = terms.cursor();
  CMatrix last;
  SumReport r;
  r.method = method;
  for (std::size_t k = 0; k <= n; ++k) {
    last = cur->next();
    acc->add(last);
    r.terms_used = k + 1;
    if (cur->zero_tail()) break;
  }
  r.value = acc->value();
  const bool exhausted = cur->zero_tail();
  r.last_increment_norm = exhausted ? 0.0 : spectral_norm(last);
  r.converged = exhausted || r.last_increment_norm <= tol * (1.0 + spectral_norm(r.value));
  return r;
}

SumReport euler_sum(const MatrixSeries& series, const CMatrix& p, std::size_t n, double tol,
                    const KernelSpec& kernel) {
  SumReport r = sum_terms(euler_transformed(series, p), n, tol, kernel, "euler");
  return r;
}

RegularityReport check_regularity_conditions(const SeqWeights& w, std::size_t n_max, std::size_t k_max) {
  if (k_max > n_max) throw Error(ErrorCode::invalid_input, "check_regularity_conditions needs k_max <= n_max");
  RegularityReport rep;
  const std::size_t d = w.dim;

  // (i) sup_n sum_k ||C_{n,k}|| must not keep growing
  double first_half = 0.0, second_half = 0.0;
  std::vector<double> column_peak(k_max + 1, 0.0);
  for (std::size_t n = 0; n <= n_max; ++n) {
    double row = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double c = spectral_norm(w.weight_at(n, k));
      row += c;
      if (k <= k_max) column_peak[k] = std::max(column_peak[k], c);
    }
    if (2 * n <= n_max) first_half = std::max(first_half, row); else second_half = std::max(second_half, row);
  }
  rep.max_row_sum = std::max(first_half, second_half);
  rep.row_sums_bounded = std::isfinite(rep.max_row_sum) && second_half <= 1.1 * first_half + 1e-12;

  // (ii) each column C_{n,k} -> 0 as n grows
  double worst = 0.0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (column_peak[k] == 0.0) continue;
    worst = std::max(worst, spectral_norm(w.weight_at(n_max, k)) / column_peak[k]);
  }
  rep.max_column_ratio = worst;
  rep.columns_vanish = worst <= 0.1;

  // (iii) sum_k C_{n,k} -> I
  CMatrix total = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k <= n_max; ++k) total += w.weight_at(n_max, k);
  rep.identity_deficit = spectral_norm(total - CMatrix::Identity(d, d));
  rep.row_sum_to_identity = rep.identity_deficit <= 1e-6;
  return rep;
}

}  // namespace divsum
