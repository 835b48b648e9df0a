#include "divsum/schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace divsum {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Unitary G = [[c, s], [-conj(s), c]] with G [x; y] = [r; 0].
struct Givens {
  double c = 1.0;
  Complex s = 0.0;
};

Givens make_givens(Complex x, Complex y) {
  Givens g;
  const double ay = std::abs(y);
  if (ay == 0.0) return g;
  const double ax = std::abs(x);
  if (ax == 0.0) {
    g.c = 0.0;
    g.s = std::conj(y) / ay;
    return g;
  }
  const double nrm = std::hypot(ax, ay);
  g.c = ax / nrm;
  g.s = (x / ax) * std::conj(y) / nrm;
  return g;
}

// H <- G H on rows k, k+1 over columns [c0, c1).
void rotate_rows(CMatrix& h, Eigen::Index k, const Givens& g, Eigen::Index c0, Eigen::Index c1) {
  for (Eigen::Index j = c0; j < c1; ++j) {
    const Complex a = h(k, j), b = h(k + 1, j);
    h(k, j) = g.c * a + g.s * b;
    h(k + 1, j) = -std::conj(g.s) * a + g.c * b;
  }
}

// H <- H G^H on columns k, k+1 over rows [r0, r1).
void rotate_cols(CMatrix& h, Eigen::Index k, const Givens& g, Eigen::Index r0, Eigen::Index r1) {
  for (Eigen::Index i = r0; i < r1; ++i) {
    const Complex a = h(i, k), b = h(i, k + 1);
    h(i, k) = a * g.c + b * std::conj(g.s);
    h(i, k + 1) = -a * g.s + b * g.c;
  }
}

void hessenberg(CMatrix& h, CMatrix& q) {
  const Eigen::Index n = h.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    CVector v = h.block(k + 1, k, m, 1);
    const double alpha = v.norm();
    if (alpha == 0.0) continue;
    const Complex x0 = v(0);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    v(0) += phase * alpha;
    const double vn = v.norm();
    if (vn == 0.0) continue;
    v /= vn;
    // H <- (I - 2vv^H) H (I - 2vv^H), Q <- Q (I - 2vv^H)
    auto rows = h.block(k + 1, 0, m, n);
    Eigen::RowVectorXcd w = v.adjoint() * rows;
    rows.noalias() -= 2.0 * v * w;
    auto cols = h.block(0, k + 1, n, m);
    CVector z = cols * v;
    cols.noalias() -= 2.0 * z * v.adjoint();
    auto qcols = q.block(0, k + 1, n, m);
    CVector zq = qcols * v;
    qcols.noalias() -= 2.0 * zq * v.adjoint();
    h.block(k + 2, k, m - 1, 1).setZero();
    h(k + 1, k) = -phase * alpha;
  }
}

Complex wilkinson_shift(const CMatrix& h, Eigen::Index iu) {
  const Complex a = h(iu - 1, iu - 1), b = h(iu - 1, iu), c = h(iu, iu - 1), d = h(iu, iu);
  const Complex half_tr = 0.5 * (a + d);
  const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const Complex mu1 = half_tr + disc, mu2 = half_tr - disc;
  return std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
}

}  // namespace

SchurForm schur(const CMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::dimension_mismatch, "schur: matrix not square");
  if (!all_finite(a)) throw Error(ErrorCode::invalid_input, "schur of non-finite matrix");
  const Eigen::Index n = a.rows();
  SchurForm sf{CMatrix::Identity(n, n), a};
  if (n <= 1) return sf;
  CMatrix& h = sf.r;
  CMatrix& q = sf.q;
  hessenberg(h, q);

  const double anorm = h.norm();
  const double floor = kEps * anorm;
  const int max_iter_per_eig = 30;
  int total_iter = 0;
  int iter = 0;
  Eigen::Index iu = n - 1;
  while (iu > 0) {
    for (Eigen::Index k = iu; k >= 1; --k) {
      const double sd = std::abs(h(k, k - 1));
      if (sd <= kEps * (std::abs(h(k, k)) + std::abs(h(k - 1, k - 1))) || sd <= floor) h(k, k - 1) = 0.0;
    }
    if (h(iu, iu - 1) == Complex(0.0)) {
      --iu;
      iter = 0;
      continue;
    }
    Eigen::Index il = iu - 1;
    while (il > 0 && h(il, il - 1) != Complex(0.0)) --il;

    ++iter;
    ++total_iter;
    if (total_iter > max_iter_per_eig * n) throw Error(ErrorCode::not_converged, "schur: QR iteration did not converge");

    Complex shift;
    if (iter == 10 || iter == 20) {
      // exceptional shift to break cycles
      shift = std::abs(h(iu, iu - 1).real()) + std::abs(h(iu - 1, std::max<Eigen::Index>(iu - 2, 0)).real());
      shift += h(iu, iu);
    } else {
      shift = wilkinson_shift(h, iu);
    }

    Complex x = h(il, il) - shift;
    Complex y = h(il + 1, il);
    for (Eigen::Index k = il; k < iu; ++k) {
      if (k > il) {
        x = h(k, k - 1);
        y = h(k + 1, k - 1);
      }
      const Givens g = make_givens(x, y);
      const Eigen::Index c0 = k > il ? k - 1 : k;
      rotate_rows(h, k, g, c0, n);
      rotate_cols(h, k, g, 0, std::min<Eigen::Index>(k + 3, iu + 1));
      rotate_cols(q, k, g, 0, n);
      if (k > il) h(k + 1, k - 1) = 0.0;
    }
  }
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i) h(i, j) = 0.0;
  return sf;
}

namespace {

// Swaps diagonal entries k and k+1 of the triangular factor.
void swap_adjacent(SchurForm& sf, Eigen::Index k) {
  CMatrix& t = sf.r;
  const Eigen::Index n = t.rows();
  const Complex a = t(k, k), b = t(k + 1, k + 1);
  const Givens g = make_givens(t(k, k + 1), b - a);
  rotate_rows(t, k, g, k, n);
  rotate_cols(t, k, g, 0, k + 2);
  rotate_cols(sf.q, k, g, 0, n);
  t(k + 1, k) = 0.0;
  t(k, k) = b;
  t(k + 1, k + 1) = a;
}

}  // namespace

ClusteredSchur reorder_schur(const SchurForm& sf, const std::vector<int>& cluster_of) {
  const std::size_t n = static_cast<std::size_t>(sf.r.rows());
  if (cluster_of.size() != n) throw Error(ErrorCode::dimension_mismatch, "reorder_schur: one cluster id per eigenvalue");

  // bubble sort into ascending cluster id using adjacent swaps
  ClusteredSchur out{sf, cluster_of};
  std::vector<int>& key = out.cluster_of;
  for (std::size_t pass = 0; pass < n; ++pass) {
    bool swapped = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (key[k] > key[k + 1]) {
        swap_adjacent(out.form, static_cast<Eigen::Index>(k));
        std::swap(key[k], key[k + 1]);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  return out;
}

CMatrix sylvester_solve(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
  const Eigen::Index m = a.rows(), n = b.rows();
  if (a.cols() != m || b.cols() != n || c.rows() != m || c.cols() != n)
    throw Error(ErrorCode::dimension_mismatch, "sylvester_solve: incompatible shapes");
  const double tol = 1e-8 * (spectral_norm(a) + spectral_norm(b));
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::abs(a(i, i) - b(j, j)) <= tol)
        throw SingularSylvester(static_cast<std::size_t>(i), static_cast<std::size_t>(j), a(i, i), b(j, j));

  CMatrix x = CMatrix::Zero(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    CVector rhs = c.col(j);
    for (Eigen::Index k = 0; k < j; ++k) rhs += b(k, j) * x.col(k);
    // (A - b_jj I) x_j = rhs, back substitution
    for (Eigen::Index i = m - 1; i >= 0; --i) {
      Complex s = rhs(i);
      for (Eigen::Index l = i + 1; l < m; ++l) s -= a(i, l) * x(l, j);
      x(i, j) = s / (a(i, i) - b(j, j));
    }
  }
  return x;
}

}  // namespace divsum
