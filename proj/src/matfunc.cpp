#include "divsum/matfunc.hpp"

#include <cmath>
#include <numeric>

#include "divsum/float_sum.hpp"
#include "divsum/schur.hpp"

namespace divsum {

CoeffOracle exp_coeffs() {
  return [](std::size_t k) { return Complex(1.0 / std::tgamma(static_cast<double>(k) + 1.0)); };
}

CoeffOracle neumann_coeffs() {
  return [](std::size_t) { return Complex(1.0); };
}

CoeffOracle list_coeffs(std::vector<Complex> a) {
  auto list = std::make_shared<const std::vector<Complex>>(std::move(a));
  return [list](std::size_t k) { return k < list->size() ? (*list)[k] : Complex(0.0); };
}

std::vector<Complex> weights_b(const ScalarSeqWeights& c, std::size_t n) {
  std::vector<Complex> b(n + 1);
  // suffix sums, smallest index last
  Complex run(0.0);
  for (std::size_t j = n + 1; j-- > 0;) {
    run += c.c_at(n, j);
    b[j] = run;
  }
  return b;
}

std::vector<Complex> transformed_coeffs(const CoeffOracle& a, const ScalarSeqWeights& c, std::size_t n) {
  std::vector<Complex> h = weights_b(c, n);
  for (std::size_t j = 0; j <= n; ++j) h[j] *= a(j);
  return h;
}

PadeApproximant pade_coefficients(const std::vector<Complex>& h, std::size_t m, std::size_t n) {
  const std::size_t size = m + n + 1;
  if (h.size() < size) throw Error(ErrorCode::invalid_input, "Pade needs m + n + 1 coefficients");
  // unknowns beta_0..beta_m, gamma_1..gamma_n; row k:
  // beta_k - sum_{i=1}^{min(k,n)} h_{k-i} gamma_i = h_k   (beta_k = 0 for k > m)
  CMatrix a = CMatrix::Zero(size, size);
  CVector rhs(size);
  for (std::size_t k = 0; k < size; ++k) {
    if (k <= m) a(k, k) = 1.0;
    for (std::size_t i = 1; i <= std::min(k, n); ++i) a(k, m + i) = -h[k - i];
    rhs(k) = h[k];
  }
  Eigen::PartialPivLU<CMatrix> lu(a);
  const CMatrix& u = lu.matrixLU();
  double umax = 0.0, umin = INFINITY;
  for (std::size_t i = 0; i < size; ++i) {
    umax = std::max(umax, std::abs(u(i, i)));
    umin = std::min(umin, std::abs(u(i, i)));
  }
  if (!(umin > 1e-12 * umax)) throw Error(ErrorCode::degenerate_pade, "Pade coefficient system is singular");
  const CVector sol = lu.solve(rhs);
  PadeApproximant p;
  p.m = m;
  p.n = n;
  p.beta.assign(sol.data(), sol.data() + m + 1);
  p.gamma.push_back(1.0);
  for (std::size_t i = 1; i <= n; ++i) p.gamma.push_back(sol(m + i));
  return p;
}

CMatrix pade_with_summation(const CMatrix& x, std::size_t m, std::size_t n, const CoeffOracle& a,
                            const ScalarSeqWeights& c) {
  if (x.rows() != x.cols()) throw Error(ErrorCode::dimension_mismatch, "pade_with_summation needs a square matrix");
  const PadeApproximant p = pade_coefficients(transformed_coeffs(a, c, m + n), m, n);
  const CMatrix num = horner_matrix_poly(p.beta, x);
  if (n == 0) return num;
  const CMatrix den = horner_matrix_poly(p.gamma, x);
  try {
    return solve(den, num, "pade_with_summation: q(X)");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular) throw;
    throw Error(ErrorCode::pole, "q(X) is singular");
  }
}

BlockPattern eigen_cluster(const std::vector<Complex>& eigs, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::invalid_input, "eigen_cluster needs delta > 0");
  const std::size_t d = eigs.size();
  std::vector<std::size_t> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (std::abs(eigs[i] - eigs[j]) <= delta) parent[find(j)] = find(i);

  BlockPattern bp;
  bp.delta = delta;
  bp.cluster_of.assign(d, -1);
  std::vector<int> id_of_root(d, -1);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t r = find(i);
    if (id_of_root[r] < 0) {
      id_of_root[r] = static_cast<int>(bp.sizes.size());
      bp.sizes.push_back(0);
      bp.eigs.emplace_back();
    }
    const int id = id_of_root[r];
    bp.cluster_of[i] = id;
    ++bp.sizes[id];
    bp.eigs[id].push_back(eigs[i]);
  }
  return bp;
}

double default_cluster_delta(const CMatrix& x) {
  const double d = static_cast<double>(x.rows());
  const double nx = spectral_norm(x);
  // a zero matrix has one eigenvalue; any positive delta will do
  return nx > 0.0 ? 0.1 * nx / d : 1.0;
}

CMatrix schur_parlett_with_summation(const CMatrix& x, std::size_t n, const CoeffOracle& a,
                                     const ScalarSeqWeights& c, double delta) {
  if (x.rows() != x.cols() || x.rows() == 0)
    throw Error(ErrorCode::dimension_mismatch, "schur_parlett_with_summation needs a square matrix");
  if (!(delta > 0.0)) delta = default_cluster_delta(x);
  const SchurForm sf = schur(x);
  const Eigen::Index d = x.rows();
  std::vector<Complex> eigs(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) eigs[i] = sf.r(i, i);
  const BlockPattern bp = eigen_cluster(eigs, delta);
  const ClusteredSchur cs = reorder_schur(sf, bp.cluster_of);
  const CMatrix& t = cs.form.r;

  // block boundaries along the reordered diagonal
  std::vector<Eigen::Index> start{0};
  for (Eigen::Index i = 1; i < d; ++i)
    if (cs.cluster_of[i] != cs.cluster_of[i - 1]) start.push_back(i);
  const std::size_t nb = start.size();
  start.push_back(d);
  auto len = [&start](std::size_t i) { return start[i + 1] - start[i]; };
  auto blk = [&start, &len](const CMatrix& m, std::size_t i, std::size_t j) {
    return m.block(start[i], start[j], len(i), len(j));
  };

  const std::vector<Complex> h = transformed_coeffs(a, c, n);
  CMatrix f = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < nb; ++i)
    f.block(start[i], start[i], len(i), len(i)) = horner_matrix_poly(h, blk(t, i, i));

  // T_ii F_ij - F_ij T_jj = F_ii T_ij - T_ij F_jj + sum_{i<k<j} (F_ik T_kj - T_ik F_kj)
  for (std::size_t s = 1; s < nb; ++s) {
    for (std::size_t i = 0; i + s < nb; ++i) {
      const std::size_t j = i + s;
      CMatrix rhs = blk(f, i, i) * blk(t, i, j) - blk(t, i, j) * blk(f, j, j);
      for (std::size_t k = i + 1; k < j; ++k) rhs += blk(f, i, k) * blk(t, k, j) - blk(t, i, k) * blk(f, k, j);
      f.block(start[i], start[j], len(i), len(j)) = sylvester_solve(blk(t, i, i), blk(t, j, j), rhs);
    }
  }
  return cs.form.q * f * cs.form.q.adjoint();
}

}  // namespace divsum
