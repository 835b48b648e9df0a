#include <algorithm>

#include "divsum/error.hpp"
#include "divsum/schur.hpp"
#include "test_util.hpp"

using namespace divsum;
using namespace divsum::testing;

namespace {

double unit_error(const CMatrix& q) {
  return spectral_norm(q * q.adjoint() - CMatrix::Identity(q.rows(), q.cols()));
}

bool strictly_upper_zero(const CMatrix& r) {
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (r(i, j) != Complex(0.0)) return false;
  return true;
}

// Faddeev-LeVerrier coefficients and Durand-Kerner roots.
std::vector<Complex> charpoly_roots(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<Complex> c(n + 1);
  c[n] = 1.0;
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * CMatrix::Identity(n, n);
    c[n - k] = -(a * m).trace() / static_cast<double>(k);
  }
  auto p = [&](Complex z) {
    Complex v = c[n];
    for (Eigen::Index k = n; k-- > 0;) v = v * z + c[k];
    return v;
  };
  std::vector<Complex> z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = std::pow(Complex(0.4, 0.9), static_cast<double>(i));
  for (int it = 0; it < 2000; ++it) {
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex den = 1.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      z[i] -= p(z[i]) / den;
    }
  }
  return z;
}

std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

std::vector<Complex> diagonal(const CMatrix& r) {
  std::vector<Complex> v;
  for (Eigen::Index i = 0; i < r.rows(); ++i) v.push_back(r(i, i));
  return v;
}

}  // namespace

TEST(Schur, Identity) {
  const SchurForm sf = schur(CMatrix::Identity(3, 3));
  EXPECT_LT(spectral_norm(sf.r - CMatrix::Identity(3, 3)), 1e-15);
  EXPECT_LT(unit_error(sf.q), 1e-15);
}

TEST(Schur, UpperTriangularUpToPhase) {
  CMatrix a(3, 3);
  a << 1, 2, 3, 0, Complex(0, 4), 5, 0, 0, -6;
  const SchurForm sf = schur(a);
  for (Eigen::Index i = 0; i < 3; ++i) {
    EXPECT_LT(std::abs(sf.r(i, i) - a(i, i)), 1e-14);
    EXPECT_NEAR(std::abs(sf.q(i, i)), 1.0, 1e-14);
    for (Eigen::Index j = i + 1; j < 3; ++j) EXPECT_NEAR(std::abs(sf.r(i, j)), std::abs(a(i, j)), 1e-13);
  }
}

TEST(Schur, Swap2x2) {
  CMatrix a(2, 2);
  a << 0, 1, 1, 0;
  const std::vector<Complex> ev = sorted(diagonal(schur(a).r));
  EXPECT_LT(std::abs(ev[0] + 1.0), 1e-14);
  EXPECT_LT(std::abs(ev[1] - 1.0), 1e-14);
}

TEST(Schur, RoundTripRandom) {
  Rng rng(21);
  for (int s = 0; s < 50; ++s) {
    const std::size_t d = 1 + s % 30;
    const CMatrix a = random_gaussian(d, rng, s % 2 == 0);
    const SchurForm sf = schur(a);
    EXPECT_TRUE(strictly_upper_zero(sf.r));
    EXPECT_LT(unit_error(sf.q), 1e-13);
    EXPECT_LE(spectral_norm(sf.q * sf.r * sf.q.adjoint() - a), 1e-12 * spectral_norm(a)) << d;
  }
}

TEST(Schur, EigenvaluesMatchCharacteristicPolynomial) {
  Rng rng(22);
  for (std::size_t d = 1; d <= 5; ++d) {
    for (int s = 0; s < 5; ++s) {
      const CMatrix a = random_gaussian(d, rng);
      const std::vector<Complex> got = diagonal(schur(a).r);
      const std::vector<Complex> want = charpoly_roots(a);
      // match greedily; roots are simple with probability one
      std::vector<bool> used(d, false);
      for (Complex g : got) {
        double best = INFINITY;
        std::size_t at = 0;
        for (std::size_t j = 0; j < d; ++j)
          if (!used[j] && std::abs(g - want[j]) < best) best = std::abs(g - want[j]), at = j;
        used[at] = true;
        EXPECT_LT(best, 1e-8);
      }
    }
  }
}

TEST(Schur, RejectsNonSquare) { EXPECT_THROW(schur(CMatrix::Zero(2, 3)), Error); }

TEST(ReorderSchur, ContiguousUnchanged) {
  Rng rng(23);
  const SchurForm sf = schur(random_gaussian(4, rng));
  const ClusteredSchur cs = reorder_schur(sf, {0, 0, 1, 1});
  EXPECT_EQ(cs.form.r, sf.r);
  EXPECT_EQ(cs.form.q, sf.q);
  const ClusteredSchur one = reorder_schur(sf, {0, 0, 0, 0});
  EXPECT_EQ(one.form.r, sf.r);
}

TEST(ReorderSchur, Swap2x2) {
  SchurForm sf{CMatrix::Identity(2, 2), CMatrix::Zero(2, 2)};
  const Complex a(1.0, 0.5), b(-2.0, 0.0);
  sf.r << a, 3.0, 0.0, b;
  const ClusteredSchur cs = reorder_schur(sf, {1, 0});
  EXPECT_LT(std::abs(cs.form.r(0, 0) - b), 1e-14);
  EXPECT_LT(std::abs(cs.form.r(1, 1) - a), 1e-14);
  EXPECT_EQ(cs.form.r(1, 0), Complex(0.0));
  EXPECT_LT(spectral_norm(cs.form.q * cs.form.r * cs.form.q.adjoint() - sf.r), 1e-14);
}

TEST(ReorderSchur, PreservesSpectrumAndSimilarity) {
  Rng rng(24);
  for (int s = 0; s < 10; ++s) {
    const std::size_t d = 12;
    const CMatrix a = random_gaussian(d, rng);
    const SchurForm sf = schur(a);
    std::vector<int> cl(d);
    for (std::size_t i = 0; i < d; ++i) cl[i] = static_cast<int>(rng.next_u64() % 3);
    const ClusteredSchur cs = reorder_schur(sf, cl);
    const std::vector<Complex> before = sorted(diagonal(sf.r)), after = sorted(diagonal(cs.form.r));
    for (std::size_t i = 0; i < d; ++i) EXPECT_LT(std::abs(before[i] - after[i]), 1e-10);
    EXPECT_TRUE(strictly_upper_zero(cs.form.r));
    EXPECT_LT(spectral_norm(cs.form.q * cs.form.r * cs.form.q.adjoint() - a), 1e-12 * spectral_norm(a));
    // contiguity
    for (std::size_t i = 1; i < d; ++i)
      for (std::size_t j = 0; j + 1 < i; ++j)
        if (cs.cluster_of[j] == cs.cluster_of[i]) {
          EXPECT_EQ(cs.cluster_of[j + 1], cs.cluster_of[i]);
        }
  }
}

TEST(Sylvester, Examples) {
  EXPECT_LT(std::abs(sylvester_solve(diag({2.0}), diag({1.0}), diag({1.0}))(0, 0) - 1.0), 1e-15);
  Rng rng(25);
  const CMatrix c = random_gaussian(3, rng);
  EXPECT_LT(spectral_norm(sylvester_solve(CMatrix::Identity(3, 3), CMatrix::Zero(3, 3), c) - c), 1e-15);
}

TEST(Sylvester, CollisionRaises) {
  try {
    sylvester_solve(diag({3.0}), diag({3.0}), diag({1.0}));
    FAIL();
  } catch (const SingularSylvester& e) {
    EXPECT_EQ(e.a_ii, Complex(3.0));
    EXPECT_EQ(e.b_jj, Complex(3.0));
  }
}

TEST(Sylvester, ResidualBound) {
  Rng rng(26);
  for (int s = 0; s < 20; ++s) {
    const std::size_t m = 1 + s % 6, n = 1 + (s * 7) % 5;
    CMatrix a = schur(random_gaussian(m, rng)).r;
    CMatrix b = schur(random_gaussian(n, rng)).r + 10.0 * CMatrix::Identity(n, n);
    const CMatrix c = CMatrix::Random(m, n);
    const CMatrix x = sylvester_solve(a, b, c);
    EXPECT_LE(spectral_norm(a * x - x * b - c), 1e-10 * (spectral_norm(a) + spectral_norm(b)) * spectral_norm(x));
  }
}
