#include "divsum/functional.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "divsum/float_sum.hpp"
#include "divsum/matrix_io.hpp"
#include "divsum/special.hpp"

namespace divsum {

namespace {

bool scalar_identity(const CMatrix& p) {
  const Complex c = p(0, 0);
  if (c.imag() != 0.0) return false;
  for (Eigen::Index j = 0; j < p.cols(); ++j)
    for (Eigen::Index i = 0; i < p.rows(); ++i)
      if (p(i, j) != (i == j ? c : Complex(0.0))) return false;
  return true;
}

// Sums weigh(k, A_k) until three consecutive nonzero weighted terms are
// negligible or the remaining terms are exactly zero. Exact zero terms neither
// count toward nor reset the run.
template <class Weigh>
CMatrix damped_sum(const MatrixSeries& series, Weigh weigh, const DampedSumOptions& opt, const char* what) {
  auto acc = make_accumulator(KernelSpec::compensated());
  auto cur = series.cursor();
  int small = 0;
  acc->add(CMatrix::Zero(series.dim, series.dim));  // fixes the shape when every term is zero
  for (std::size_t k = 0; k < opt.term_budget; ++k) {
    const CMatrix a = cur->next();
    if (!a.isZero(0.0)) {
      const CMatrix wa = weigh(k, a);
      acc->add(wa);
      const double tn = wa.norm();
      if (!std::isfinite(tn)) throw Error(ErrorCode::not_summable, std::string(what) + ": non-finite term");
      small = tn <= opt.tol * (1.0 + acc->value().norm()) ? small + 1 : 0;
    }
    if (cur->zero_tail() || small >= 3) return acc->value();
  }
  throw Error(ErrorCode::not_summable, std::string(what) + ": no decay within the term budget");
}

void require_unit_interval(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0)) throw Error(ErrorCode::invalid_input, std::string(what) + " needs 0 < x < 1");
}

}  // namespace

AbelianWeights abel_weights(std::size_t dim) {
  return {dim, [dim](std::size_t k) -> CMatrix { return static_cast<double>(k) * CMatrix::Identity(dim, dim); },
          "abel"};
}

AbelianWeights abelian_from_list(std::vector<CMatrix> p) {
  if (p.empty()) throw Error(ErrorCode::invalid_weights, "empty Abelian weight list");
  auto list = std::make_shared<const std::vector<CMatrix>>(std::move(p));
  AbelianWeights w;
  w.dim = static_cast<std::size_t>((*list)[0].rows());
  w.tag = "abelian:list";
  w.p_at = [list](std::size_t k) -> CMatrix {
    if (k >= list->size()) throw Error(ErrorCode::out_of_range, "Abelian weight list too short");
    return (*list)[k];
  };
  return w;
}

bool check_abelian_weights(const AbelianWeights& w, std::size_t k_max) {
  CMatrix prev = w.p_at(0);
  if (!is_positive_definite(prev)) return false;
  for (std::size_t k = 1; k <= k_max; ++k) {
    CMatrix next = w.p_at(k);
    if (!is_positive_definite(next - prev)) return false;
    prev = std::move(next);
  }
  return true;
}

LimitSchedule LimitSchedule::toward_one(int m0, int m1) {
  LimitSchedule s;
  for (int m = m0; m <= m1; ++m) s.points.push_back(1.0 - std::ldexp(1.0, -m));
  return s;
}

LimitSchedule LimitSchedule::toward_infinity(int m0, int m1) {
  LimitSchedule s;
  for (int m = m0; m <= m1; ++m) s.points.push_back(std::ldexp(1.0, m));
  return s;
}

LimitSchedule LimitSchedule::toward_zero(int m0, int m1) {
  LimitSchedule s;
  for (int m = m0; m <= m1; ++m) s.points.push_back(std::ldexp(1.0, -m));
  return s;
}

void LimitSchedule::validate() const {
  if (points.size() < 3) throw Error(ErrorCode::invalid_input, "limit schedule needs at least 3 points");
  const bool up = points[1] > points[0];
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (up ? !(points[i] > points[i - 1]) : !(points[i] < points[i - 1]))
      throw Error(ErrorCode::invalid_input, "limit schedule must be strictly monotone");
  }
  if (!(stagnation_tol > 0.0)) throw Error(ErrorCode::invalid_input, "stagnation_tol must be positive");
}

CMatrix abel_eval(const MatrixSeries& series, double x, const DampedSumOptions& opt) {
  require_unit_interval(x, "abel_eval");
  return damped_sum(
      series, [x](std::size_t k, const CMatrix& a) -> CMatrix { return std::pow(x, static_cast<double>(k)) * a; },
      opt, "abel_eval");
}

CMatrix abelian_means_eval(const MatrixSeries& series, const AbelianWeights& w, double x,
                           const DampedSumOptions& opt) {
  if (!(x > 0.0)) throw Error(ErrorCode::invalid_input, "abelian_means_eval needs x > 0");
  if (w.dim != series.dim) throw Error(ErrorCode::dimension_mismatch, "Abelian weights and series differ in dimension");
  return damped_sum(
      series,
      [&w, x](std::size_t k, const CMatrix& a) -> CMatrix {
        const CMatrix p = w.p_at(k);
        if (scalar_identity(p)) return std::exp(-x * p(0, 0).real()) * a;
        return a * mat_exp(-x * p);
      },
      opt, "abelian_means_eval");
}

double lambert_kernel(std::size_t k, double x) {
  require_unit_interval(x, "lambert_kernel");
  if (k == 0) return 0.0;
  // x^k and 1 - x^k from k log x, so x near 1 keeps its digits
  const double kl = static_cast<double>(k) * std::log(x);
  return (1.0 - x) * static_cast<double>(k) * std::exp(kl) / -std::expm1(kl);
}

CMatrix lambert_eval(const MatrixSeries& series, double x, const DampedSumOptions& opt) {
  require_unit_interval(x, "lambert_eval");
  const std::size_t shift = series.start_index == 0 ? 1 : 0;
  return damped_sum(
      series, [x, shift](std::size_t k, const CMatrix& a) -> CMatrix { return lambert_kernel(k + shift, x) * a; },
      opt, "lambert_eval");
}

CMatrix lambert_eval_truncated(const MatrixSeries& series, double x, std::size_t n_terms) {
  require_unit_interval(x, "lambert_eval_truncated");
  const std::size_t shift = series.start_index == 0 ? 1 : 0;
  auto acc = make_accumulator(KernelSpec::compensated());
  auto cur = series.cursor();
  acc->add(CMatrix::Zero(series.dim, series.dim));
  const std::size_t last = series.start_index == 0 ? n_terms : n_terms + 1;
  for (std::size_t k = 0; k < last; ++k) {
    const CMatrix a = cur->next();
    if (!a.isZero(0.0)) acc->add(lambert_kernel(k + shift, x) * a);
    if (cur->zero_tail()) break;
  }
  return acc->value();
}

CMatrix weak_borel_eval(const MatrixSeries& series, double x, const DampedSumOptions& opt) {
  if (!(x > 0.0)) throw Error(ErrorCode::invalid_input, "weak_borel_eval needs x > 0");
  const double lx = std::log(x);
  auto s_acc = make_accumulator(KernelSpec::compensated());
  auto acc = make_accumulator(KernelSpec::compensated());
  auto cur = series.cursor();
  double lw = -x;  // log of the Poisson weight e^{-x} x^k / k!
  int small = 0;
  for (std::size_t k = 0; k < opt.term_budget; ++k) {
    if (k > 0) lw += lx - std::log(static_cast<double>(k));
    s_acc->add(cur->next());
    const CMatrix sk = s_acc->value();
    if (cur->zero_tail()) {
      // S_j = S_k from here on; the Poisson mass of {j >= k} is P(k, x)
      const double mass = k == 0 ? 1.0 : boost::math::gamma_p(static_cast<double>(k), x);
      acc->add(mass * sk);
      return acc->value();
    }
    const double w = std::exp(lw);
    const CMatrix term = w * sk;
    acc->add(term);
    const double tn = term.norm();
    if (!std::isfinite(tn)) throw Error(ErrorCode::not_summable, "weak_borel_eval: non-finite term");
    small = tn <= opt.tol * (1.0 + acc->value().norm()) ? small + 1 : 0;
    const double kk = static_cast<double>(k);
    if (kk >= x && small >= 3 && w * x / (kk + 1.0 - x) <= opt.tol) return acc->value();
  }
  throw Error(ErrorCode::budget_exhausted, "weak_borel_eval: Poisson tail not negligible within the term budget");
}

CMatrix borel_integrand(const MatrixSeries& series, double alpha, double t, const QuadratureSpec& q) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::invalid_input, "Borel integrand needs alpha > 0");
  if (!(t >= 0.0)) throw Error(ErrorCode::invalid_input, "Borel integrand needs t >= 0");
  if (alpha == 1.0 && series.damped_borel) return series.damped_borel(t);
  auto cur = series.cursor();
  if (t == 0.0) return cur->next();
  const double lt = std::log(t);
  auto acc = make_accumulator(KernelSpec::compensated());
  acc->add(CMatrix::Zero(series.dim, series.dim));
  int small = 0;
  for (std::size_t k = 0; k < q.term_budget; ++k) {
    const CMatrix a = cur->next();
    const double ak = alpha * static_cast<double>(k);
    if (!a.isZero(0.0)) {
      const double w = std::exp(ak * lt - log_gamma(1.0 + ak) - t);
      const CMatrix term = w * a;
      acc->add(term);
      const double tn = term.norm();
      if (!std::isfinite(tn)) throw Error(ErrorCode::divergent_integral, "Borel integrand is not finite");
      small = tn <= q.inner_tol * (1.0 + acc->value().norm()) ? small + 1 : 0;
    }
    if (cur->zero_tail()) return acc->value();
    // weights grow until alpha k passes t
    if (ak > t && small >= 3) return acc->value();
  }
  throw Error(ErrorCode::budget_exhausted, "Borel inner series did not settle within the term budget");
}

namespace {

class PanelIntegrator {
 public:
  PanelIntegrator(std::function<CMatrix(double)> f, const QuadratureSpec& q) : f_(std::move(f)), q_(q) {}

  // 15-point Gauss-Legendre on [a, b].
  CMatrix rule(double a, double b) {
    using G = boost::math::quadrature::gauss<double, 15>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    CMatrix s = w[0] * eval(c);
    for (std::size_t i = 1; i < x.size(); ++i) s += w[i] * (eval(c - h * x[i]) + eval(c + h * x[i]));
    return h * s;
  }

  // Bisects until each panel agrees with its halves to tol * scale * width / span.
  void adapt(double a, double b, const CMatrix& whole, double tol_per_width, Accumulator& acc, int depth) {
    const double m = 0.5 * (a + b);
    const CMatrix l = rule(a, m), r = rule(m, b);
    const double diff = (whole - l - r).norm();
    ++panels_;
    if (diff <= tol_per_width * (b - a) || depth >= 40 || panels_ >= q_.max_panels) {
      if (diff > tol_per_width * (b - a)) exhausted_ = true;
      error_ += diff;
      acc.add(l);
      acc.add(r);
      return;
    }
    adapt(a, m, l, tol_per_width, acc, depth + 1);
    adapt(m, b, r, tol_per_width, acc, depth + 1);
  }

  // Equal panels of [a, b] and their rule values.
  std::vector<std::pair<double, double>> panels(double a, double b) const {
    const std::size_t np = q_.initial_panels;
    const double width = (b - a) / static_cast<double>(np);
    std::vector<std::pair<double, double>> p;
    for (std::size_t i = 0; i < np; ++i) {
      const double pa = a + width * static_cast<double>(i);
      p.emplace_back(pa, i + 1 == np ? b : pa + width);
    }
    return p;
  }

  void integrate(double a, double b, double scale, Accumulator& acc, std::vector<CMatrix> wholes = {}) {
    const auto p = panels(a, b);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const CMatrix whole = i < wholes.size() ? wholes[i] : rule(p[i].first, p[i].second);
      adapt(p[i].first, p[i].second, whole, q_.tol * scale / (b - a), acc, 0);
    }
  }

  CMatrix eval(double t) {
    ++evals_;
    CMatrix v;
    try {
      v = f_(t);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::overflow) throw;
      throw Error(ErrorCode::divergent_integral, std::string("Borel integrand overflowed: ") + e.what());
    }
    if (!all_finite(v)) throw Error(ErrorCode::divergent_integral, "Borel integrand overflowed");
    return v;
  }

  double error() const { return error_; }
  bool exhausted() const { return exhausted_; }
  std::size_t evals() const { return evals_; }

 private:
  std::function<CMatrix(double)> f_;
  QuadratureSpec q_;
  double error_ = 0.0;
  bool exhausted_ = false;
  std::size_t panels_ = 0;
  std::size_t evals_ = 0;
};

void check_growth(double norm_at_t, double t) {
  if (norm_at_t > std::exp(0.5 * t))
    throw Error(ErrorCode::divergent_integral,
                "Borel integrand grows faster than e^{t/2} (norm " + std::to_string(norm_at_t) + " at t = " +
                    std::to_string(t) + ")");
}

SumReport borel_integral(const MatrixSeries& series, double alpha, const QuadratureSpec& q, std::string method) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::invalid_input, "Mittag-Leffler parameter must be positive");
  if (!(q.upper > 0.0) || !(q.tol > 0.0) || !(q.tail_tol > 0.0))
    throw Error(ErrorCode::invalid_input, "quadrature needs T, tol, tail_tol > 0");
  const bool closed = alpha == 1.0 && static_cast<bool>(series.damped_borel);
  const MatrixSeries s = closed ? series : memoize(series);
  auto f = [&s, alpha, &q](double t) { return borel_integrand(s, alpha, t, q); };
  PanelIntegrator pi(f, q);

  double lo = 0.0, hi = q.upper;
  double f_hi = spectral_norm(pi.eval(hi));
  check_growth(f_hi, hi);
  // scale for the relative tolerances from a coarse pass
  auto coarse = make_accumulator(KernelSpec::compensated());
  std::vector<CMatrix> wholes;
  for (const auto& [a, b] : pi.panels(lo, hi)) {
    wholes.push_back(pi.rule(a, b));
    coarse->add(wholes.back());
  }
  const double scale = 1.0 + spectral_norm(coarse->value());

  auto acc = make_accumulator(KernelSpec::compensated());
  pi.integrate(lo, hi, scale, *acc, std::move(wholes));
  // extend while the integrand is still decaying but not yet negligible
  while (f_hi > q.tail_tol * (1.0 + spectral_norm(acc->value())) && 2.0 * hi <= q.max_upper) {
    const double f_mid = spectral_norm(pi.eval(0.5 * hi));
    if (!(f_hi < f_mid)) break;
    lo = hi;
    hi *= 2.0;
    f_hi = spectral_norm(pi.eval(hi));
    check_growth(f_hi, hi);
    pi.integrate(lo, hi, scale, *acc);
  }

  SumReport r;
  r.method = std::move(method);
  r.value = acc->value();
  r.terms_used = pi.evals();
  r.last_increment_norm = f_hi;
  const double rel = 1.0 + spectral_norm(r.value);
  r.converged = !pi.exhausted() && pi.error() <= q.tol * rel && f_hi <= q.tail_tol * rel;
  return r;
}

}  // namespace

SumReport strong_borel_sum(const MatrixSeries& series, const QuadratureSpec& q) {
  return borel_integral(series, 1.0, q, "sborel");
}

SumReport mittag_leffler_sum(const MatrixSeries& series, double alpha, const QuadratureSpec& q) {
  SumReport r = borel_integral(series, alpha, q, "mittag");
  r.method = "mittag:" + format_double(alpha);
  return r;
}

SumReport take_limit(const std::function<CMatrix(double)>& evaluator, const LimitSchedule& schedule) {
  schedule.validate();
  std::vector<CMatrix> vals;
  vals.reserve(schedule.points.size());
  for (double x : schedule.points) {
    try {
      vals.push_back(evaluator(x));
    } catch (const LimitEvaluationError&) {
      throw;
    } catch (const Error& e) {
      throw LimitEvaluationError(x, e);
    }
  }
  const std::size_t n = vals.size();
  SumReport r;
  r.method = "limit";
  r.value = vals[n - 1];
  r.terms_used = n;
  r.last_increment_norm = spectral_norm(vals[n - 1] - vals[n - 2]);
  const double scale = schedule.stagnation_tol * (1.0 + spectral_norm(r.value));
  r.converged = r.last_increment_norm <= scale && spectral_norm(vals[n - 1] - vals[n - 3]) <= scale &&
                spectral_norm(vals[n - 2] - vals[n - 3]) <= scale;
  return r;
}

SumReport abel_sum(const MatrixSeries& series, const LimitSchedule& s, const DampedSumOptions& opt) {
  SumReport r = take_limit([&](double x) { return abel_eval(series, x, opt); }, s);
  r.method = "abel";
  return r;
}

SumReport abelian_means_sum(const MatrixSeries& series, const AbelianWeights& w, const LimitSchedule& s,
                            const DampedSumOptions& opt) {
  SumReport r = take_limit([&](double x) { return abelian_means_eval(series, w, x, opt); }, s);
  r.method = w.tag;
  return r;
}

SumReport lambert_sum(const MatrixSeries& series, const LimitSchedule& s, const DampedSumOptions& opt) {
  SumReport r = take_limit([&](double x) { return lambert_eval(series, x, opt); }, s);
  r.method = "lambert";
  return r;
}

SumReport weak_borel_sum(const MatrixSeries& series, const LimitSchedule& s, const DampedSumOptions& opt) {
  SumReport r = take_limit([&](double x) { return weak_borel_eval(series, x, opt); }, s);
  r.method = "wborel";
  return r;
}

}  // namespace divsum
