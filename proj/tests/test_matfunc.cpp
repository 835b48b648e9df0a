#include "divsum/error.hpp"
#include "divsum/float_sum.hpp"
#include "divsum/matfunc.hpp"
#include "test_util.hpp"

using namespace divsum;
using namespace divsum::testing;

namespace {

CMatrix normal_matrix(std::size_t d, Rng& rng, double radius) {
  const CMatrix u = random_unitary(d, rng);
  CMatrix l = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i) l(i, i) = radius * rng.complex_normal();
  return u * l * u.adjoint();
}

std::vector<Complex> taylor_exp(std::size_t n) {
  std::vector<Complex> c;
  for (std::size_t k = 0; k <= n; ++k) c.push_back(1.0 / std::tgamma(k + 1.0));
  return c;
}

}  // namespace

TEST(WeightsB, Examples) {
  for (Complex b : weights_b(conventional_weights(), 7)) EXPECT_EQ(b, Complex(1.0));
  const std::vector<Complex> e = weights_b(euler_scalar_weights(1.0), 1);
  EXPECT_EQ(e[0], Complex(0.75));
  EXPECT_EQ(e[1], Complex(0.25));
  const std::size_t n = 9;
  const std::vector<Complex> c = weights_b(cesaro_scalar_weights(), n);
  for (std::size_t j = 0; j <= n; ++j) EXPECT_NEAR(c[j].real(), (n - j) / double(n), 1e-15) << j;
}

TEST(TransformedCoeffs, Examples) {
  const auto a = exp_coeffs();
  const std::vector<Complex> h = transformed_coeffs(a, conventional_weights(), 6);
  for (std::size_t j = 0; j <= 6; ++j) EXPECT_EQ(h[j], a(j));
  const std::vector<Complex> f = transformed_coeffs(neumann_coeffs(), cesaro_scalar_weights(), 5);
  for (std::size_t j = 0; j <= 5; ++j) EXPECT_NEAR(f[j].real(), (5.0 - j) / 5.0, 1e-15);
  const std::vector<Complex> u = transformed_coeffs(neumann_coeffs(), euler_scalar_weights(1.0), 1);
  EXPECT_EQ(u[0], Complex(0.75));
  EXPECT_EQ(u[1], Complex(0.25));
}

TEST(TransformedCoeffs, PolynomialIdentity) {
  Rng rng(1);
  std::vector<Complex> a(16);
  for (Complex& z : a) z = rng.complex_normal();
  const CoeffOracle coeff = list_coeffs(a);
  for (const ScalarSeqWeights& w : {conventional_weights(), cesaro_scalar_weights(), euler_scalar_weights(1.0),
                                    euler_scalar_weights(0.25), euler_scalar_weights(3.0)}) {
    for (std::size_t n : {1, 5, 15}) {
      const std::vector<Complex> h = transformed_coeffs(coeff, w, n);
      for (int s = 0; s < 10; ++s) {
        const Complex x = rng.complex_normal();
        Complex lhs = 0.0, xp = 1.0;
        for (std::size_t j = 0; j <= n; ++j, xp *= x) lhs += h[j] * xp;
        // sum_k c_{n,k} S_k(x), S_k the Taylor partial sums
        Complex rhs = 0.0, sk = 0.0, xk = 1.0;
        double scale = 0.0;
        for (std::size_t k = 0; k <= n; ++k, xk *= x) {
          sk += a[k] * xk;
          rhs += w.c_at(n, k) * sk;
          scale += std::abs(w.c_at(n, k) * sk);
        }
        EXPECT_LE(std::abs(lhs - rhs), 1e-13 * std::max(scale, std::abs(rhs))) << w.tag << ' ' << n;
      }
    }
  }
}

TEST(Pade, ExpOneOne) {
  const PadeApproximant p = pade_coefficients(transformed_coeffs(exp_coeffs(), conventional_weights(), 2), 1, 1);
  EXPECT_LT(std::abs(p.beta[0] - 1.0), 1e-14);
  EXPECT_LT(std::abs(p.beta[1] - 0.5), 1e-14);
  EXPECT_EQ(p.gamma[0], Complex(1.0));
  EXPECT_LT(std::abs(p.gamma[1] + 0.5), 1e-14);
}

TEST(Pade, NoDenominatorIsTruncatedPolynomial) {
  Rng rng(2);
  const CMatrix x = normal_matrix(4, rng, 0.5);
  const std::vector<Complex> h = transformed_coeffs(exp_coeffs(), conventional_weights(), 5);
  EXPECT_EQ(pade_with_summation(x, 5, 0, exp_coeffs(), conventional_weights()), horner_matrix_poly(h, x));
  const PadeApproximant p = pade_coefficients(h, 5, 0);
  for (std::size_t k = 0; k <= 5; ++k) EXPECT_EQ(p.beta[k], h[k]);
}

TEST(Pade, SixSixMatchesExp) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    CMatrix x = random_gaussian(6, rng);
    x *= rng.uniform(0.1, 1.0) / spectral_norm(x);
    EXPECT_LT(rel_err(pade_with_summation(x, 6, 6, exp_coeffs(), conventional_weights()), mat_exp(x)), 1e-10);
  }
}

TEST(Pade, OrderCondition) {
  // Taylor coefficients of p/q by power-series division
  const PadeApproximant p = pade_coefficients(taylor_exp(4), 2, 2);
  std::vector<Complex> r(5);
  for (std::size_t k = 0; k <= 4; ++k) {
    Complex acc = k <= 2 ? p.beta[k] : Complex(0.0);
    for (std::size_t i = 1; i <= std::min<std::size_t>(k, 2); ++i) acc -= p.gamma[i] * r[k - i];
    r[k] = acc;
  }
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_NEAR(std::abs(r[k] - 1.0 / std::tgamma(k + 1.0)), 0.0, 1e-9) << k;
}

TEST(Pade, Degenerate) {
  try {
    pade_coefficients({0.0, 0.0, 0.0}, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_pade);
  }
  try {
    // [0/1] of 1 + x + ... is 1/(1 - x), singular at X = I
    pade_with_summation(CMatrix::Identity(2, 2), 0, 1, neumann_coeffs(), conventional_weights());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::pole);
  }
}

TEST(EigenCluster, Examples) {
  const BlockPattern a = eigen_cluster({0.0, 1e-12, 5.0}, 0.1);
  ASSERT_EQ(a.sizes.size(), 2u);
  EXPECT_EQ(a.sizes[0], 2u);
  EXPECT_EQ(a.cluster_of, (std::vector<int>{0, 0, 1}));
  const BlockPattern b = eigen_cluster({Complex(1, 1), Complex(1, 1), Complex(1, 1)}, 0.1);
  EXPECT_EQ(b.sizes, std::vector<std::size_t>{3});
  const BlockPattern c = eigen_cluster({0.0, 0.06, 0.12}, 0.1);
  EXPECT_EQ(c.sizes, std::vector<std::size_t>{3});
  EXPECT_THROW(eigen_cluster({0.0}, 0.0), Error);
}

TEST(EigenCluster, SeparationConditions) {
  Rng rng(3);
  std::vector<Complex> eigs(40);
  for (Complex& z : eigs) z = rng.complex_normal();
  const double delta = 0.3;
  const BlockPattern bp = eigen_cluster(eigs, delta);
  for (std::size_t i = 0; i < eigs.size(); ++i)
    for (std::size_t j = 0; j < eigs.size(); ++j)
      if (bp.cluster_of[i] != bp.cluster_of[j]) {
        EXPECT_GT(std::abs(eigs[i] - eigs[j]), delta);
      }
}

TEST(SchurParlett, Examples) {
  const CMatrix x = diag({0.3, Complex(-1.0, 2.0), 1.5});
  const CMatrix f = schur_parlett_with_summation(x, 30, exp_coeffs(), conventional_weights());
  EXPECT_LT(spectral_norm(f - diag({std::exp(0.3), std::exp(Complex(-1.0, 2.0)), std::exp(1.5)})), 1e-10);

  CMatrix e(2, 2);
  e << 1, 1, 0, 1;
  EXPECT_LT(spectral_norm(schur_parlett_with_summation(jordan_block(0.0, 2), 10, exp_coeffs(), conventional_weights()) - e),
            1e-10);
}

TEST(SchurParlett, MatchesHornerOnNormal) {
  for (std::size_t d : {20, 50}) {
    Rng rng(d);
    const CMatrix x = normal_matrix(d, rng, 1.0);
    const std::size_t n = 30;
    const CMatrix sp = schur_parlett_with_summation(x, n, exp_coeffs(), conventional_weights());
    EXPECT_LT(rel_err(sp, horner_matrix_poly(taylor_exp(n), x)), 1e-8) << d;
  }
}

TEST(SchurParlett, SimilarityInvariance) {
  Rng rng(4);
  for (int s = 0; s < 3; ++s) {
    const CMatrix x = normal_matrix(12, rng, 0.8);
    const CMatrix u = random_unitary(12, rng);
    const ScalarSeqWeights w = euler_scalar_weights(0.5);
    const CMatrix a = schur_parlett_with_summation(u * x * u.adjoint(), 40, neumann_coeffs(), w);
    const CMatrix b = u * schur_parlett_with_summation(x, 40, neumann_coeffs(), w) * u.adjoint();
    EXPECT_LT(rel_err(a, b), 1e-8);
  }
}

TEST(SchurParlett, ClusteredNonNormal) {
  // two tight clusters force 2x2 diagonal blocks and one Sylvester solve
  CMatrix t(4, 4);
  t << 0.5, 1.0, 0.3, -0.2, 0, 0.5 + 1e-3, 0.7, 0.1, 0, 0, -0.4, 1.0, 0, 0, 0, -0.4 - 1e-3;
  Rng rng(5);
  const CMatrix u = random_unitary(4, rng);
  const CMatrix x = u * t * u.adjoint();
  const CMatrix f = schur_parlett_with_summation(x, 40, exp_coeffs(), conventional_weights(), 0.01);
  EXPECT_LT(rel_err(f, mat_exp(x)), 1e-12);
}

TEST(SchurParlett, EulerOutsideTaylorDomain) {
  const CMatrix x = -2.0 * CMatrix::Identity(4, 4);
  const CMatrix f = schur_parlett_with_summation(x, 60, neumann_coeffs(), euler_scalar_weights(1.0));
  const CMatrix want = CMatrix::Identity(4, 4) / 3.0;
  EXPECT_LE(rel_err(f, want), 1e-6);
}

TEST(SchurParlett, RejectsNonSquare) {
  EXPECT_THROW(schur_parlett_with_summation(CMatrix::Zero(2, 3), 5, exp_coeffs(), conventional_weights()), Error);
}
