#include "divsum/experiments.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "divsum/float_sum.hpp"
#include "divsum/functional.hpp"
#include "divsum/matfunc.hpp"
#include "divsum/matrix_io.hpp"
#include "divsum/sequential.hpp"
#include "divsum/series.hpp"

namespace divsum {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class T>
T pick(T given, T fallback) {
  return given == T{} ? fallback : given;
}

template <class T>
std::vector<T> pick(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? fallback : given;
}

Table timing_table() { return Table({"experiment", "case", "method", "seconds"}); }

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// error-free two-sum accumulation
struct DoubleDouble {
  double hi = 0.0, lo = 0.0;
  void add(double x) {
    const double s = hi + x;
    const double bp = s - hi;
    lo += (hi - (s - bp)) + (x - bp);
    hi = s;
  }
  double value() const { return hi + lo; }
};

}  // namespace

CMatrix gen_bidiagonal(std::size_t d, double alpha, Rng& rng) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::invalid_input, "gen_bidiagonal needs alpha in [0, 1]");
  CMatrix x = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    double mag;
    do mag = 0.9 * rng.uniform();
    while (mag == 0.0);
    const bool negative = rng.uniform() < alpha;
    x(i, i) = negative ? -mag : mag;
    if (i + 1 < d) x(i, i + 1) = rng.uniform_open();
  }
  return x;
}

CMatrix gen_bidiagonal(std::size_t d, double alpha, std::uint64_t seed) {
  Rng rng(seed);
  return gen_bidiagonal(d, alpha, rng);
}

GeneratedMatrix gen_with_spectrum(const std::vector<Complex>& eigs, Structure s, Rng& rng,
                                  const std::vector<std::size_t>& jordan_sizes) {
  const std::size_t d = eigs.size();
  if (d == 0) throw Error(ErrorCode::invalid_input, "gen_with_spectrum needs eigenvalues");
  GeneratedMatrix g;
  if (s == Structure::jordan) {
    std::vector<std::size_t> sizes = jordan_sizes.empty() ? std::vector<std::size_t>{d} : jordan_sizes;
    std::size_t total = 0;
    for (std::size_t b : sizes) total += b;
    if (total != d) throw Error(ErrorCode::dimension_mismatch, "Jordan block sizes do not add up to the dimension");
    g.x = CMatrix::Zero(d, d);
    std::size_t at = 0;
    for (std::size_t b : sizes) {
      g.x.block(at, at, b, b) = jordan_block(eigs[at], b);
      at += b;
    }
    g.similarity = CMatrix::Identity(d, d);
    return g;
  }
  CMatrix lam = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i) lam(i, i) = eigs[i];
  if (s == Structure::orthogonal) {
    g.similarity = random_unitary(d, rng, true);
    g.x = g.similarity * lam * g.similarity.transpose();
    return g;
  }
  for (int attempt = 0; attempt < 10; ++attempt) {
    CMatrix t = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      t(i, i) = rng.uniform(1.0, 2.0);
      if (i + 1 < d) {
        t(i, i + 1) = rng.uniform(-0.5, 0.5);
        t(i + 1, i) = rng.uniform(-0.5, 0.5);
      }
    }
    Eigen::JacobiSVD<CMatrix> svd(t);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (!(smin > 1e-12 * sv(0))) continue;
    g.similarity = t;
    g.condition = sv(0) / smin;
    g.x = t * lam * solve(t, CMatrix::Identity(d, d), "gen_with_spectrum");
    return g;
  }
  throw Error(ErrorCode::singular, "no nonsingular tridiagonal similarity in 10 draws");
}

CMatrix bidiagonal_neumann_inverse(const CMatrix& x) {
  const Eigen::Index d = x.rows();
  CMatrix s = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = j; i >= 0; --i) {
      Complex v = i == j ? Complex(1.0) : Complex(0.0);
      if (i + 1 <= j) v += x(i, i + 1) * s(i + 1, j);
      s(i, j) = v / (1.0 - x(i, i));
    }
  }
  return s;
}

// ---------------------------------------------------------------- Gibbs

namespace {

struct FourierPair {
  CMatrix fourier;  // F_m
  CMatrix cesaro;   // mean of F_1..F_{m-1}
};

FourierPair fourier_and_cesaro(const CMatrix& x, std::size_t m) {
  const MatrixSeries s = square_wave_fourier_terms(x);
  auto cur = s.cursor();
  cur->next();  // k = 0
  auto f = make_accumulator(KernelSpec::compensated());
  auto t = make_accumulator(KernelSpec::compensated());
  f->add(CMatrix::Zero(x.rows(), x.cols()));
  t->add(CMatrix::Zero(x.rows(), x.cols()));
  for (std::size_t k = 1; k <= m; ++k) {
    f->add(cur->next());
    if (k < m) t->add(f->value());
  }
  return {f->value(), t->value() / static_cast<double>(m > 1 ? m - 1 : 1)};
}

std::vector<double> gibbs_grid() {
  std::vector<double> t;
  for (int j = 0; j < 30; ++j) t.push_back(0.005 + 0.01 * j);
  for (int j = 0; j <= 17; ++j) t.push_back(0.3 + 0.1 * j);
  std::vector<double> all;
  for (auto it = t.rbegin(); it != t.rend(); ++it) all.push_back(-*it);
  all.insert(all.end(), t.begin(), t.end());
  return all;
}

}  // namespace

ExperimentResult run_gibbs(const ExperimentSpec& spec) {
  const std::size_t d = pick<std::size_t>(spec.dim, 50);
  const std::size_t m = pick<std::size_t>(spec.terms, 100);
  Rng rng(spec.seed);
  std::vector<double> lam(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double mag = 0.5 + 0.5 * rng.uniform();
    lam[i] = rng.uniform() < 0.5 ? -mag : mag;
  }
  std::vector<Complex> unit(d, 1.0);
  const GeneratedMatrix orth = gen_with_spectrum(unit, Structure::orthogonal, rng);
  const GeneratedMatrix tri = gen_with_spectrum(unit, Structure::tridiagonal, rng);
  const CMatrix tri_inv = solve(tri.similarity, CMatrix::Identity(d, d));
  std::vector<std::size_t> sizes;
  for (std::size_t left = d; left > 0; left -= std::min<std::size_t>(left, 10)) sizes.push_back(std::min<std::size_t>(left, 10));

  ExperimentResult out{Table({"structure", "t", "norm_fourier", "norm_cesaro", "norm_sign", "err_fourier", "err_cesaro"}),
                       timing_table()};
  for (const char* name : {"orthogonal", "tridiagonal", "jordan"}) {
    const std::string sname = name;
    const auto t0 = Clock::now();
    for (double t : gibbs_grid()) {
      CMatrix dl = CMatrix::Zero(d, d), sg = CMatrix::Zero(d, d);
      for (std::size_t i = 0; i < d; ++i) {
        dl(i, i) = t * lam[i];
        sg(i, i) = sign_of(t * lam[i]);
      }
      CMatrix x, sign;
      if (sname == "orthogonal") {
        x = orth.similarity * dl * orth.similarity.transpose();
        sign = orth.similarity * sg * orth.similarity.transpose();
      } else if (sname == "tridiagonal") {
        x = tri.similarity * dl * tri_inv;
        sign = tri.similarity * sg * tri_inv;
      } else {
        x = CMatrix::Zero(d, d);
        sign = CMatrix::Zero(d, d);
        std::size_t at = 0;
        for (std::size_t b : sizes) {
          x.block(at, at, b, b) = jordan_block(t * lam[at], b);
          sign.block(at, at, b, b) = sign_of(t * lam[at]) * CMatrix::Identity(b, b);
          at += b;
        }
      }
      const FourierPair fp = fourier_and_cesaro(x, m);
      out.table.add({sname, t, spectral_norm(fp.fourier), spectral_norm(fp.cesaro), spectral_norm(sign),
                     spectral_norm(fp.fourier - sign), spectral_norm(fp.cesaro - sign)});
    }
    out.timings.add({"gibbs", sname, "fourier+cesaro", seconds_since(t0)});
  }
  return out;
}

double gibbs_oscillation(const Table& gibbs, const std::string& structure, const std::string& column, double lo,
                         double hi) {
  std::vector<double> neg, pos;
  for (std::size_t r = 0; r < gibbs.rows().size(); ++r) {
    if (gibbs.text(r, "structure") != structure) continue;
    const double t = gibbs.number(r, "t");
    if (t < lo || t > hi) continue;
    if (t <= 0.0) neg.push_back(gibbs.number(r, column));
    if (t >= 0.0) pos.push_back(gibbs.number(r, column));
  }
  auto excess = [](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double tv = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) tv += std::abs(v[i] - v[i - 1]);
    return tv - std::abs(v.back() - v.front());
  };
  return excess(neg) + excess(pos);
}

// ---------------------------------------------------------------- Neumann extension

namespace {

CMatrix disk_matrix(std::size_t d, Rng& rng, bool control) {
  const CMatrix u = random_unitary(d, rng);
  CMatrix t = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const double r = 0.5 * std::sqrt(rng.uniform());
    const double th = 2.0 * std::numbers::pi * rng.uniform();
    t(i, i) = Complex(-1.6, 0.0) + std::polar(r, th);
    for (std::size_t j = i + 1; j < d; ++j) t(i, j) = 0.01 / std::sqrt(static_cast<double>(d)) * rng.complex_normal();
  }
  if (control) t(0, 0) = 1.0;
  return u * t * u.adjoint();
}

}  // namespace

ExperimentResult run_neumann_extension(const ExperimentSpec& spec) {
  const std::size_t d = pick<std::size_t>(spec.dim, 50);
  const std::size_t count = pick<std::size_t>(spec.count, 10);
  const std::size_t n = pick<std::size_t>(spec.terms, 1000);
  const double rho = pick(spec.rhos, {100.0}).front();
  const double tol = 1e-8;
  Rng rng(spec.seed);
  ExperimentResult out{Table({"matrix", "kind", "method", "converged", "forward_error", "backward_error"}),
                       timing_table()};
  const CMatrix id = CMatrix::Identity(d, d);

  for (std::size_t i = 0; i <= count; ++i) {
    const bool control = i == count;
    const std::string kind = control ? "control" : "disk";
    const CMatrix x = disk_matrix(d, rng, control);
    const CMatrix ix = id - x;
    CMatrix oracle;
    bool have_oracle = true;
    try {
      oracle = solve(ix, id, "neumann oracle");
    } catch (const Error&) {
      have_oracle = false;
    }
    const double oracle_norm = have_oracle ? spectral_norm(oracle) : 0.0;
    auto record = [&](const std::string& method, bool ok, const CMatrix& s, double secs) {
      const double inf = std::numeric_limits<double>::infinity();
      double fe = inf, be = inf;
      if (ok && all_finite(s)) {
        be = spectral_norm(s * ix - id);
        if (have_oracle && std::isfinite(oracle_norm)) fe = spectral_norm(s - oracle) / oracle_norm;
      }
      out.table.add({static_cast<std::int64_t>(i), kind, method, static_cast<std::int64_t>(ok), fe, be});
      out.timings.add({"neumann-extension", std::to_string(i), method, secs});
    };

    if (have_oracle) record("inv", true, oracle, 0.0);

    auto t0 = Clock::now();
    {
      const SumReport r = sum_terms(neumann_euler_terms(x, rho * id), n, tol, KernelSpec::compensated(), "euler");
      record("euler-kahan", r.converged, r.value, seconds_since(t0));
    }

    t0 = Clock::now();
    {
      const ScalarSeqWeights w = euler_scalar_weights(rho);
      bool ok = false;
      CMatrix s;
      try {
        s = schur_parlett_with_summation(x, n, neumann_coeffs(), w);
        // converged when the last Euler term is negligible
        const CMatrix prev = schur_parlett_with_summation(x, n - 1, neumann_coeffs(), w);
        ok = all_finite(s) && spectral_norm(s - prev) <= tol * (1.0 + spectral_norm(s));
      } catch (const Error&) {
        ok = false;
      }
      record("euler-parlett", ok, s, seconds_since(t0));
    }

    t0 = Clock::now();
    {
      bool ok = false;
      CMatrix s;
      try {
        const SumReport r = strong_borel_sum(neumann_terms(x));
        ok = r.converged;
        s = r.value;
      } catch (const Error&) {
        ok = false;
      }
      record("sborel", ok, s, seconds_since(t0));
    }
  }
  return out;
}

// ---------------------------------------------------------------- Euler accuracy

namespace {

// E_k = (I+rho)^{-1} ((rho I + X)/(1+rho))^k for upper bidiagonal X, in O(d^2)
// per term; rho = 0 gives the Taylor terms X^k.
MatrixSeries bidiagonal_euler_terms(const CMatrix& x, double rho) {
  const Eigen::Index d = x.rows();
  MatrixSeries s;
  s.dim = static_cast<std::size_t>(d);
  s.family_tag = rho == 0.0 ? "neumann" : "euler(neumann)";
  auto step = [x, rho, d](const CMatrix& e) {
    CMatrix next(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      next.row(i) = (rho + x(i, i)) * e.row(i);
      if (i + 1 < d) next.row(i) += x(i, i + 1) * e.row(i + 1);
    }
    return CMatrix(next / (1.0 + rho));
  };
  s.term_at = [step, rho, d](std::size_t k) {
    CMatrix e = CMatrix::Identity(d, d) / (1.0 + rho);
    for (std::size_t j = 0; j < k; ++j) e = step(e);
    return e;
  };
  s.make_cursor = [step, rho, d]() {
    struct C : TermCursor {
      decltype(step) fn;
      CMatrix e;
      bool started = false;
      double rho;
      Eigen::Index d;
      C(decltype(step) f, double r, Eigen::Index dd) : fn(std::move(f)), rho(r), d(dd) {}
      CMatrix next() override {
        if (!started) {
          e = CMatrix::Identity(d, d) / (1.0 + rho);
          started = true;
        } else {
          e = fn(e);
        }
        return e;
      }
    };
    return std::unique_ptr<TermCursor>(new C(step, rho, d));
  };
  return s;
}

}  // namespace

ExperimentResult run_euler_accuracy(const ExperimentSpec& spec) {
  const std::size_t d = pick<std::size_t>(spec.dim, 100);
  const std::size_t terms = pick<std::size_t>(spec.terms, 100);
  const std::size_t count = pick<std::size_t>(spec.count, 5);
  std::vector<double> alphas = spec.alphas;
  if (alphas.empty())
    for (int i = 0; i <= 10; ++i) alphas.push_back(i / 10.0);
  const std::vector<double> rhos = pick(spec.rhos, {1.0, 0.5, 0.25});
  ExperimentResult out{Table({"alpha", "sample", "method", "forward_error", "log10_error"}), timing_table()};
  Rng rng(spec.seed);
  for (double alpha : alphas) {
    for (std::size_t smp = 0; smp < count; ++smp) {
      const CMatrix x = gen_bidiagonal(d, alpha, rng);
      const CMatrix exact = bidiagonal_neumann_inverse(x);
      std::vector<std::pair<std::string, double>> methods{{"taylor", 0.0}};
      for (double r : rhos) methods.emplace_back("euler:" + format_double(r), r);
      for (const auto& [name, rho] : methods) {
        const auto t0 = Clock::now();
        const SumReport rep =
            sum_terms(bidiagonal_euler_terms(x, rho), terms - 1, 0.0, KernelSpec::compensated(), name);
        const double err = spectral_norm(rep.value - exact);
        out.table.add({alpha, static_cast<std::int64_t>(smp), name, err, std::log10(std::max(err, 1e-300))});
        out.timings.add({"euler-accuracy", format_double(alpha) + "/" + std::to_string(smp), name, seconds_since(t0)});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- Dirichlet / Lambert

ExperimentResult run_dirichlet_lambert(const ExperimentSpec& spec) {
  const std::size_t d = pick<std::size_t>(spec.dim, 10);
  const std::size_t terms = pick<std::size_t>(spec.terms, 10000);
  const std::size_t scalar_terms = std::max<std::size_t>(terms, 100000);
  std::vector<double> deltas = spec.deltas;
  if (deltas.empty())
    for (int e = 2; e <= 7; ++e) deltas.push_back(std::ldexp(1.0, -e));
  std::vector<int> ms = spec.x_exponents;
  if (ms.empty())
    for (int m = 4; m <= 12; ++m) ms.push_back(m);
  ExperimentResult out{Table({"case", "delta", "m", "x", "norm"}), timing_table()};

  {
    const auto t0 = Clock::now();
    const MatrixSeries s = memoize(dirichlet_mobius_terms(CMatrix::Identity(1, 1), scalar_terms));
    for (int m : ms) {
      const double x = 1.0 - std::ldexp(1.0, -m);
      const CMatrix v = lambert_eval_truncated(s, x, scalar_terms);
      out.table.add({std::string("scalar"), 0.0, static_cast<std::int64_t>(m), x, std::abs(v(0, 0))});
    }
    out.timings.add({"dirichlet-lambert", "scalar", "lambert", seconds_since(t0)});
  }

  Rng rng(spec.seed);
  for (double delta : deltas) {
    const auto t0 = Clock::now();
    // X = I + delta E with ||E|| = 1 and Hermitian part of E positive semidefinite
    const CMatrix g = random_gaussian(d, rng);
    const CMatrix k = random_gaussian(d, rng);
    CMatrix e = g * g.adjoint() + 0.5 * (k - k.adjoint());
    e /= spectral_norm(e);
    const CMatrix x = CMatrix::Identity(d, d) + delta * e;
    const MatrixSeries s = memoize(dirichlet_mobius_terms(x, terms));
    for (int m : ms) {
      const double xv = 1.0 - std::ldexp(1.0, -m);
      out.table.add({std::string("matrix"), delta, static_cast<std::int64_t>(m), xv,
                     spectral_norm(lambert_eval_truncated(s, xv, terms))});
    }
    out.timings.add({"dirichlet-lambert", format_double(delta), "lambert", seconds_since(t0)});
  }
  return out;
}

// ---------------------------------------------------------------- recursive vs compensated

namespace {

using boost::multiprecision::cpp_rational;

// Frobenius distance between the kernel sum and (a) the closed form, (b) a
// double-double sum of the same computed terms.
struct BenchErrors {
  double closed, terms;
};

double frob(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<double> real_entries(const CMatrix& m) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) v.push_back(m(i, j).real());
  return v;
}

// exact sum of the (1x1) computed terms
double exact_rational_sum(const std::vector<CMatrix>& terms) {
  cpp_rational s = 0;
  for (const CMatrix& t : terms) s += cpp_rational(t(0, 0).real());
  return static_cast<double>(s);
}

double exact_rational_closed(double x, std::size_t n) {
  const cpp_rational xr(x);
  cpp_rational p = 1;
  for (std::size_t k = 0; k < n; ++k) p *= xr;
  return static_cast<double>((1 - p) / (1 - xr));
}

}  // namespace

ExperimentResult run_floatsum_bench(const ExperimentSpec& spec) {
  ExperimentResult out{Table({"sweep", "d", "n", "kernel", "error_closed", "error_terms"}), timing_table()};
  Rng rng(spec.seed);
  const std::vector<KernelSpec> kernels{KernelSpec::recursive(), KernelSpec::compensated()};

  // d-sweep: n-term Neumann series of a real X with ||X|| = 0.95
  const std::size_t n_fixed = pick<std::size_t>(spec.terms, 1000);
  std::vector<std::size_t> dims{1, 2, 5, 10, 20, 50, 100, 200};
  if (spec.dim) {
    std::vector<std::size_t> cut;
    for (std::size_t v : dims)
      if (v <= spec.dim) cut.push_back(v);
    dims = cut;
  }
  for (std::size_t d : dims) {
    CMatrix x = random_gaussian(d, rng, true);
    x *= 0.95 / spectral_norm(x);
    std::vector<CMatrix> terms;
    terms.reserve(n_fixed);
    {
      CMatrix p = CMatrix::Identity(d, d);
      for (std::size_t k = 0; k < n_fixed; ++k) {
        terms.push_back(p);
        p = p * x;
      }
    }
    std::vector<double> closed, reference(d * d);
    if (d == 1) {
      closed = {exact_rational_closed(x(0, 0).real(), n_fixed)};
      reference = {exact_rational_sum(terms)};
    } else {
      closed = real_entries(neumann_closed_form(x, n_fixed));
      for (std::size_t e = 0; e < d * d; ++e) {
        DoubleDouble acc;
        for (const CMatrix& t : terms) acc.add(t.data()[e].real());
        reference[e] = acc.value();
      }
    }
    for (const KernelSpec& ks : kernels) {
      const auto t0 = Clock::now();
      const std::vector<double> got = real_entries(kernel_sum(stream_of(terms), ks));
      out.table.add({std::string("d"), static_cast<std::int64_t>(d), static_cast<std::int64_t>(n_fixed), ks.tag(),
                     frob(got, closed), frob(got, reference)});
      out.timings.add({"floatsum-bench", "d=" + std::to_string(d), ks.tag(), seconds_since(t0)});
    }
  }

  // n-sweep: Hadamard powers of a matrix with entries uniform in (0, 1)
  const std::size_t d_fixed = pick<std::size_t>(spec.dim, 100);
  const CMatrix a = [&] {
    CMatrix m(d_fixed, d_fixed);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.uniform_open();
    return m;
  }();
  for (std::size_t n : {100, 200, 500, 1000, 2000, 5000}) {
    std::vector<CMatrix> terms;
    terms.reserve(n);
    auto cur = hadamard_power_terms(a).cursor();
    for (std::size_t k = 0; k < n; ++k) terms.push_back(cur->next());
    const std::vector<double> closed = real_entries(hadamard_closed_form(a, n));
    std::vector<double> reference(d_fixed * d_fixed);
    for (std::size_t e = 0; e < reference.size(); ++e) {
      DoubleDouble acc;
      for (const CMatrix& t : terms) acc.add(t.data()[e].real());
      reference[e] = acc.value();
    }
    for (const KernelSpec& ks : kernels) {
      const auto t0 = Clock::now();
      const std::vector<double> got = real_entries(kernel_sum(stream_of(terms), ks));
      out.table.add({std::string("n"), static_cast<std::int64_t>(d_fixed), static_cast<std::int64_t>(n), ks.tag(),
                     frob(got, closed), frob(got, reference)});
      out.timings.add({"floatsum-bench", "n=" + std::to_string(n), ks.tag(), seconds_since(t0)});
    }
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.id == "gibbs") return run_gibbs(spec);
  if (spec.id == "neumann-extension") return run_neumann_extension(spec);
  if (spec.id == "euler-accuracy") return run_euler_accuracy(spec);
  if (spec.id == "dirichlet-lambert") return run_dirichlet_lambert(spec);
  if (spec.id == "floatsum-bench") return run_floatsum_bench(spec);
  throw Error(ErrorCode::invalid_input, "unknown experiment " + spec.id);
}

}  // namespace divsum
