#include "divsum/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace divsum {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::singular: return "singular";
    case ErrorCode::not_converged: return "not-converged";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::invalid_weights: return "invalid-weights";
    case ErrorCode::not_summable: return "not-summable-at-x";
    case ErrorCode::budget_exhausted: return "budget-exhausted";
    case ErrorCode::divergent_integral: return "divergent-integral";
    case ErrorCode::degenerate_pade: return "degenerate-pade";
    case ErrorCode::pole: return "pole";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

namespace {
std::string pair_message(std::size_t i, std::size_t j, Complex a, Complex b) {
  std::ostringstream os;
  os << "diagonal pair (" << i << "," << j << ") a=" << a << " b=" << b;
  return os.str();
}
}  // namespace

SingularSylvester::SingularSylvester(std::size_t i, std::size_t j, Complex a, Complex b)
    : Error(ErrorCode::singular, pair_message(i, j, a, b)), row(i), col(j), a_ii(a), b_jj(b) {}

LimitEvaluationError::LimitEvaluationError(double x, const Error& e)
    : Error(e.code(), std::string(e.what()) + " [at x=" + std::to_string(x) + "]"),
      abscissa(x),
      cause(e.code()) {}

CMatrix identity(std::size_t d) { return CMatrix::Identity(d, d); }
CMatrix zeros(std::size_t d) { return CMatrix::Zero(d, d); }

bool all_finite(const CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

bool is_real(const CMatrix& a) { return (a.imag().array() == 0.0).all(); }

double spectral_norm(const CMatrix& a) {
  if (!all_finite(a)) throw Error(ErrorCode::invalid_input, "spectral_norm of non-finite matrix");
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

double default_tolerance(const CMatrix& p) { return 1e-10 * spectral_norm(p); }

namespace {
void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::dimension_mismatch, std::string(what) + ": matrix not square");
}

double min_hermitian_eigenvalue(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}
}  // namespace

bool is_positive_definite(const CMatrix& p, double tol) {
  require_square(p, "is_positive_definite");
  if (!all_finite(p)) throw Error(ErrorCode::invalid_input, "is_positive_definite of non-finite matrix");
  if (p.rows() == 0) return true;
  if (spectral_norm(p - p.adjoint()) > tol) return false;
  CMatrix h = 0.5 * (p + p.adjoint());
  return min_hermitian_eigenvalue(h) > tol;
}

bool is_positive_definite(const CMatrix& p) { return is_positive_definite(p, default_tolerance(p)); }

bool loewner_less(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::dimension_mismatch, "loewner_less: operand shapes differ");
  require_square(a, "loewner_less");
  if (a.rows() == 0) return true;
  CMatrix diff = b - a;
  if (spectral_norm(diff - diff.adjoint()) > tol) return false;
  CMatrix h = 0.5 * (diff + diff.adjoint());
  return min_hermitian_eigenvalue(h) >= -tol;
}

bool loewner_less(const CMatrix& a, const CMatrix& b) {
  return loewner_less(a, b, 1e-10 * std::max(spectral_norm(a), spectral_norm(b)));
}

CMatrix solve(const CMatrix& a, const CMatrix& b, const char* what) {
  Eigen::PartialPivLU<CMatrix> lu(a);
  const auto& u = lu.matrixLU();
  double umax = 0.0;
  for (Eigen::Index i = 0; i < u.rows(); ++i) umax = std::max(umax, std::abs(u(i, i)));
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    if (!(std::abs(u(i, i)) > umax * std::numeric_limits<double>::epsilon() * double(u.rows())))
      throw Error(ErrorCode::singular, std::string(what) + ": matrix numerically singular");
  }
  return lu.solve(b);
}

namespace {
double norm1(const CMatrix& a) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) best = std::max(best, a.col(j).cwiseAbs().sum());
  return best;
}

// Pade [6/6] numerator coefficients c_k = (12-k)! 6! / (12! k! (6-k)!).
constexpr double kPade6[7] = {1.0,
                              1.0 / 2.0,
                              5.0 / 44.0,
                              1.0 / 66.0,
                              1.0 / 792.0,
                              1.0 / 15840.0,
                              1.0 / 665280.0};
}  // namespace

CMatrix mat_exp(const CMatrix& a) {
  require_square(a, "mat_exp");
  if (!all_finite(a)) throw Error(ErrorCode::invalid_input, "mat_exp of non-finite matrix");
  const Eigen::Index d = a.rows();
  if (d == 0) return a;
  const double nrm = norm1(a);
  int s = 0;
  if (nrm > 0.5) s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  if (s > 1100) throw Error(ErrorCode::overflow, "mat_exp: norm too large");
  CMatrix x = a * std::ldexp(1.0, -s);

  CMatrix x2 = x * x;
  CMatrix x4 = x2 * x2;
  CMatrix x6 = x4 * x2;
  CMatrix id = CMatrix::Identity(d, d);
  CMatrix even = kPade6[0] * id + kPade6[2] * x2 + kPade6[4] * x4 + kPade6[6] * x6;
  CMatrix odd = x * (kPade6[1] * id + kPade6[3] * x2 + kPade6[5] * x4);
  CMatrix r = (even - odd).partialPivLu().solve(even + odd);
  for (int i = 0; i < s; ++i) r = r * r;
  if (!all_finite(r)) throw Error(ErrorCode::overflow, "mat_exp: result overflowed");
  return r;
}

CMatrix mat_sin(const CMatrix& a) {
  const Complex i(0.0, 1.0);
  if (is_real(a)) {
    CMatrix e = mat_exp(i * a);
    CMatrix out = CMatrix::Zero(a.rows(), a.cols());
    out.real() = e.imag();
    return out;
  }
  return (mat_exp(i * a) - mat_exp(-i * a)) / (2.0 * i);
}

CMatrix mat_cos(const CMatrix& a) {
  const Complex i(0.0, 1.0);
  if (is_real(a)) {
    CMatrix e = mat_exp(i * a);
    CMatrix out = CMatrix::Zero(a.rows(), a.cols());
    out.real() = e.real();
    return out;
  }
  return 0.5 * (mat_exp(i * a) + mat_exp(-i * a));
}

CMatrix mat_pow_nat(const CMatrix& a, std::size_t k) {
  require_square(a, "mat_pow_nat");
  CMatrix result = CMatrix::Identity(a.rows(), a.cols());
  CMatrix base = a;
  bool first = true;
  while (k > 0) {
    if (k & 1u) {
      result = first ? base : CMatrix(result * base);
      first = false;
    }
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

CMatrix dirichlet_pow(std::size_t n, const CMatrix& x) {
  require_square(x, "dirichlet_pow");
  if (n == 0) throw Error(ErrorCode::invalid_input, "dirichlet_pow: n must be >= 1");
  if (n == 1) return CMatrix::Identity(x.rows(), x.cols());
  return mat_exp(std::log(static_cast<double>(n)) * x);
}

CMatrix jordan_block(Complex lambda, std::size_t d) {
  CMatrix j = lambda * CMatrix::Identity(d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) j(i, i + 1) = 1.0;
  return j;
}

CMatrix jordan_function_oracle(const std::vector<Complex>& derivs) {
  const std::size_t d = derivs.size();
  if (d == 0) throw Error(ErrorCode::invalid_input, "jordan_function_oracle: empty derivative list");
  CMatrix f = CMatrix::Zero(d, d);
  double fact = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    for (std::size_t i = 0; i + k < d; ++i) f(i, i + k) = derivs[k] / fact;
  }
  return f;
}

CMatrix neumann_closed_form(const CMatrix& x, std::size_t n) {
  require_square(x, "neumann_closed_form");
  CMatrix id = CMatrix::Identity(x.rows(), x.cols());
  return solve(id - x, id - mat_pow_nat(x, n), "neumann_closed_form: I - X");
}

CMatrix hadamard_closed_form(const CMatrix& x, std::size_t n) {
  CMatrix out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const Complex z = x(i, j);
      if (z == Complex(1.0, 0.0)) {
        out(i, j) = static_cast<double>(n);
      } else {
        Complex zn(1.0, 0.0), base = z;
        for (std::size_t k = n; k > 0; k >>= 1u) {
          if (k & 1u) zn *= base;
          base *= base;
        }
        out(i, j) = (1.0 - zn) / (1.0 - z);
      }
    }
  }
  return out;
}

}  // namespace divsum
