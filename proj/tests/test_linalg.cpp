#include <numbers>

#include "divsum/error.hpp"
#include "divsum/linalg.hpp"
#include "divsum/rng.hpp"
#include "test_util.hpp"

using namespace divsum;
using namespace divsum::testing;

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix m2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(SpectralNorm, Examples) {
  EXPECT_NEAR(spectral_norm(CMatrix::Identity(3, 3)), 1.0, 1e-15);
  EXPECT_NEAR(spectral_norm(diag({3.0, -4.0})), 4.0, 1e-15);
  EXPECT_NEAR(spectral_norm(m2(0, 2, 0, 0)), 2.0, 1e-15);
  EXPECT_EQ(spectral_norm(CMatrix::Zero(4, 4)), 0.0);
}

TEST(SpectralNorm, TwoByTwoFormula) {
  // sigma_max^2 = (F + sqrt(F^2 - 4 |det|^2)) / 2 with F the squared Frobenius norm
  Rng rng(7);
  for (int s = 0; s < 20; ++s) {
    const CMatrix a = random_gaussian(2, rng);
    const double f = a.squaredNorm();
    const double det = std::abs(a.determinant());
    const double smax = std::sqrt((f + std::sqrt(f * f - 4.0 * det * det)) / 2.0);
    EXPECT_NEAR(spectral_norm(a), smax, 1e-13 * smax);
  }
}

TEST(SpectralNorm, RejectsNonFinite) {
  CMatrix a = CMatrix::Identity(2, 2);
  a(0, 1) = Complex(std::nan(""), 0.0);
  try {
    spectral_norm(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_input);
  }
}

TEST(SpectralNorm, Submultiplicative) {
  Rng rng(11);
  for (int s = 0; s < 20; ++s) {
    const CMatrix a = random_gaussian(6, rng), b = random_gaussian(6, rng);
    EXPECT_LE(spectral_norm(a * b), spectral_norm(a) * spectral_norm(b) * (1 + 1e-14));
  }
}

TEST(PositiveDefinite, Examples) {
  EXPECT_TRUE(is_positive_definite(CMatrix::Identity(3, 3)));
  EXPECT_FALSE(is_positive_definite(-CMatrix::Identity(3, 3)));
  EXPECT_TRUE(is_positive_definite(m2(2, 1, 1, 2)));
  EXPECT_FALSE(is_positive_definite(m2(2, 1, 0, 2)));  // not Hermitian
  EXPECT_FALSE(is_positive_definite(m2(1, 2, 2, 1)));  // eigenvalues -1, 3
}

TEST(Loewner, Examples) {
  const CMatrix i2 = CMatrix::Identity(2, 2);
  EXPECT_TRUE(loewner_less(i2, 2.0 * i2));
  EXPECT_FALSE(loewner_less(2.0 * i2, i2));
  EXPECT_TRUE(loewner_less(i2, m2(2, 1, 1, 2)));
  EXPECT_THROW(loewner_less(i2, CMatrix::Identity(3, 3)), Error);
}

TEST(MatExp, Examples) {
  EXPECT_LT(spectral_norm(mat_exp(CMatrix::Zero(3, 3)) - CMatrix::Identity(3, 3)), 1e-15);
  EXPECT_LT(spectral_norm(mat_exp(diag({std::log(2.0), 0.0})) - diag({2.0, 1.0})), 1e-14);
  EXPECT_LT(spectral_norm(mat_exp(m2(0, 1, 0, 0)) - m2(1, 1, 0, 1)), 1e-15);
}

TEST(MatExp, InverseProperty) {
  Rng rng(3);
  for (int s = 0; s < 10; ++s) {
    CMatrix a = random_gaussian(8, rng);
    a *= (0.5 + 4.5 * rng.uniform()) / spectral_norm(a);
    const CMatrix e = mat_exp(a) * mat_exp(-a);
    EXPECT_LT(spectral_norm(e - CMatrix::Identity(8, 8)), 1e-10);
  }
}

TEST(MatExp, Diagonalizable) {
  Rng rng(5);
  for (int s = 0; s < 10; ++s) {
    const CMatrix w = random_gaussian(6, rng);
    CMatrix l = CMatrix::Zero(6, 6), el = CMatrix::Zero(6, 6);
    for (int i = 0; i < 6; ++i) {
      l(i, i) = 2.0 * rng.complex_normal();
      el(i, i) = std::exp(l(i, i));
    }
    const CMatrix winv = w.inverse();
    const double cond = spectral_norm(w) * spectral_norm(winv);
    const CMatrix ref = w * el * winv;
    EXPECT_LT(spectral_norm(mat_exp(w * l * winv) - ref), 1e-8 * cond * spectral_norm(ref));
  }
}

TEST(MatExp, OverflowRaises) {
  try {
    mat_exp(diag({1e6, 0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::overflow);
  }
}

TEST(MatSin, Examples) {
  EXPECT_LT(spectral_norm(mat_sin(CMatrix::Zero(2, 2))), 1e-15);
  EXPECT_LT(spectral_norm(mat_sin(diag({kPi / 2})) - diag({1.0})), 1e-15);
  EXPECT_LT(spectral_norm(mat_sin(m2(0, 1, 0, 0)) - m2(0, 1, 0, 0)), 1e-15);
  const CMatrix s = mat_sin(m2(0.3, 1.2, -0.7, 0.1));
  EXPECT_TRUE(is_real(s));
}

TEST(MatPowNat, Examples) {
  Rng rng(2);
  const CMatrix a = random_gaussian(4, rng);
  EXPECT_EQ(mat_pow_nat(a, 0), CMatrix::Identity(4, 4));
  EXPECT_EQ(mat_pow_nat(2.0 * CMatrix::Identity(3, 3), 3), 8.0 * CMatrix::Identity(3, 3));
  EXPECT_EQ(mat_pow_nat(m2(0, 1, 0, 0), 2), CMatrix::Zero(2, 2));
  EXPECT_LT(rel_err(mat_pow_nat(a, 7), a * a * a * a * a * a * a), 1e-13);
}

TEST(DirichletPow, Examples) {
  Rng rng(4);
  const CMatrix x = random_gaussian(3, rng);
  EXPECT_EQ(dirichlet_pow(1, x), CMatrix::Identity(3, 3));
  EXPECT_LT(spectral_norm(dirichlet_pow(2, CMatrix::Identity(2, 2)) - 2.0 * CMatrix::Identity(2, 2)), 1e-14);
  EXPECT_LT(std::abs(dirichlet_pow(3, diag({2.0}))(0, 0) - 9.0), 1e-13);
  try {
    dirichlet_pow(0, x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_input);
  }
}

TEST(JordanBlock, Examples) {
  EXPECT_EQ(jordan_block(5.0, 1), diag({5.0}));
  EXPECT_EQ(jordan_block(0.0, 2), m2(0, 1, 0, 0));
  CMatrix j3(3, 3);
  j3 << -1, 1, 0, 0, -1, 1, 0, 0, -1;
  EXPECT_EQ(jordan_block(-1.0, 3), j3);
}

TEST(JordanFunctionOracle, Examples) {
  EXPECT_EQ(jordan_function_oracle({1.0, 1.0}), m2(1, 1, 0, 1));
  const Complex c(0.3, -2.0);
  EXPECT_EQ(jordan_function_oracle({c, 1.0}), m2(c, 1, 0, c));
  CMatrix sq(3, 3);
  sq << 1, 2, 1, 0, 1, 2, 0, 0, 1;
  EXPECT_LT(spectral_norm(jordan_function_oracle({1.0, 2.0, 2.0}) - sq), 1e-15);
  EXPECT_THROW(jordan_function_oracle({}), Error);
}

TEST(JordanFunctionOracle, MatchesMatExp) {
  for (std::size_t d = 1; d <= 6; ++d) {
    for (Complex lam : {Complex(0.0), Complex(-2.0), Complex(1.5, 1.0), Complex(0.2, -1.9)}) {
      std::vector<Complex> derivs(d, std::exp(lam));
      EXPECT_LT(rel_err(mat_exp(jordan_block(lam, d)), jordan_function_oracle(derivs)), 1e-10) << d << ' ' << lam;
    }
  }
}

TEST(NeumannClosedForm, Examples) {
  EXPECT_LT(spectral_norm(neumann_closed_form(CMatrix::Zero(2, 2), 5) - CMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(spectral_norm(neumann_closed_form(0.5 * CMatrix::Identity(2, 2), 2) - 1.5 * CMatrix::Identity(2, 2)),
            1e-15);
  EXPECT_LT(spectral_norm(neumann_closed_form(-CMatrix::Identity(3, 3), 3) - CMatrix::Identity(3, 3)), 1e-15);
  try {
    neumann_closed_form(CMatrix::Identity(2, 2), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::singular);
  }
}

TEST(NeumannClosedForm, MatchesLiteralPartialSum) {
  Rng rng(9);
  for (std::size_t d : {1, 3, 8}) {
    for (std::size_t n : {1, 10, 50}) {
      const CMatrix x = with_spectral_radius(d, 0.9, rng);
      CMatrix s = CMatrix::Zero(d, d), p = CMatrix::Identity(d, d);
      double envelope = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        s += p;
        envelope += spectral_norm(p);
        p = p * x;
      }
      const CMatrix ix = CMatrix::Identity(d, d) - x;
      const double cond = spectral_norm(ix) * spectral_norm(ix.inverse());
      // closed form goes through a solve with I - X
      EXPECT_LT(spectral_norm(neumann_closed_form(x, n) - s), 1e-12 * envelope * cond) << d << ' ' << n;
    }
  }
}

TEST(HadamardClosedForm, Examples) {
  EXPECT_EQ(hadamard_closed_form(CMatrix::Zero(2, 2), 5), CMatrix::Ones(2, 2));
  EXPECT_EQ(hadamard_closed_form(CMatrix::Ones(2, 2), 4), 4.0 * CMatrix::Ones(2, 2));
  EXPECT_NEAR(std::abs(hadamard_closed_form(diag({0.5}), 3)(0, 0) - 1.75), 0.0, 1e-15);
}

TEST(Solve, SingularRaises) {
  CMatrix a = m2(1, 2, 2, 4);
  try {
    solve(a, CMatrix::Identity(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::singular);
  }
}
