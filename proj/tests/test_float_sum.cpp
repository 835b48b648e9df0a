#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "divsum/error.hpp"
#include "divsum/float_sum.hpp"
#include "test_util.hpp"

using namespace divsum;
using namespace divsum::testing;
using Rational = boost::multiprecision::cpp_rational;

namespace {

const double u = kUnitRoundoff;

TermStream scalars(const std::vector<double>& v) {
  std::vector<CMatrix> t;
  for (double x : v) t.push_back(scalar(x));
  return stream_of(t);
}

Rational exact(const std::vector<double>& v) {
  Rational s = 0;
  for (double x : v) s += Rational(x);
  return s;
}

double err_vs(const CMatrix& got, const Rational& want) {
  return std::abs((Rational(got(0, 0).real()) - want).convert_to<double>());
}

// scalar (1, u/2 repeated m times)
std::vector<double> half_ulp_stream(std::size_t m) {
  std::vector<double> v(m + 1, u / 2);
  v[0] = 1.0;
  return v;
}

TermStream uniform_stream(std::size_t d, std::size_t count, Rng& rng, std::vector<CMatrix>& keep) {
  keep.clear();
  for (std::size_t k = 0; k < count; ++k) {
    CMatrix a(d, d);
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = Complex(rng.uniform_open(), rng.uniform_open());
    keep.push_back(a);
  }
  return stream_of(keep);
}

double norm_sum(const std::vector<CMatrix>& v) {
  double s = 0.0;
  for (const CMatrix& a : v) s += spectral_norm(a);
  return s;
}

}  // namespace

TEST(RecursiveSum, Examples) {
  const CMatrix i3 = CMatrix::Identity(3, 3);
  EXPECT_EQ(recursive_sum(stream_of({i3, i3, i3})), 3.0 * i3);
  EXPECT_EQ(recursive_sum(stream_of({i3})), i3);
  const std::vector<double> v{1.0, std::ldexp(1.0, -53), std::ldexp(1.0, -53)};
  EXPECT_EQ(exact(v), Rational(1) + Rational(1) / (Rational(boost::multiprecision::cpp_int(1) << 52)));
  EXPECT_EQ(recursive_sum(scalars(v))(0, 0), Complex(1.0));
}

TEST(RecursiveSum, DimensionMismatchRaises) {
  EXPECT_THROW(recursive_sum(stream_of({CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)})), Error);
}

TEST(BlockSum, Degenerate) {
  Rng rng(1);
  std::vector<CMatrix> keep;
  const TermStream t = uniform_stream(3, 37, rng, keep);
  EXPECT_EQ(block_sum(t, 37), recursive_sum(t));
  // b = 1: each block is one term, then a recursive sum of those
  EXPECT_EQ(block_sum(t, 1), recursive_sum(t));
  EXPECT_THROW(block_sum(t, 0), Error);
}

TEST(BlockSum, ZeroPadsFinalBlock) {
  Rng rng(2);
  std::vector<CMatrix> keep;
  const TermStream t = uniform_stream(2, 10, rng, keep);
  // blocks of 4: (0..3), (4..7), (8, 9, 0, 0)
  CMatrix b0 = CMatrix::Zero(2, 2), b1 = b0, b2 = b0;
  for (int k = 0; k < 4; ++k) b0 += keep[k];
  for (int k = 4; k < 8; ++k) b1 += keep[k];
  for (int k = 8; k < 10; ++k) b2 += keep[k];
  CMatrix s = CMatrix::Zero(2, 2);
  s += b0;
  s += b1;
  s += b2;
  EXPECT_EQ(block_sum(t, 4), s);
}

TEST(BlockSum, LiteralPairingOfSmallTerms) {
  const double h = std::ldexp(1.0, -53);
  // blocks (1, h) and (h, 0): 1 + h ties to even, so the block sums are 1 and h
  const std::vector<double> v{1.0, h, h, 0.0};
  EXPECT_EQ(block_sum(scalars(v), 2)(0, 0), Complex(1.0));
  // with the small terms in one block their sum 2h survives
  const std::vector<double> w{h, h, 1.0, 0.0};
  EXPECT_EQ(Rational(block_sum(scalars(w), 2)(0, 0).real()), exact(w));
  EXPECT_EQ(recursive_sum(scalars({1.0, h, h, 0.0}))(0, 0), Complex(1.0));
}

TEST(CompensatedSum, Examples) {
  const std::vector<double> ints{3, -7, 1e6, 12, -1e6, 5};
  EXPECT_EQ(Rational(compensated_sum(scalars(ints))(0, 0).real()), exact(ints));

  const std::vector<double> v = half_ulp_stream(10000);
  const Rational want = exact(v);
  EXPECT_LE(err_vs(compensated_sum(scalars(v)), want), 2 * u * want.convert_to<double>());
  EXPECT_EQ(recursive_sum(scalars(v))(0, 0), Complex(1.0));

  EXPECT_EQ(compensated_sum(stream_of({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)})), CMatrix::Zero(2, 2));
}

TEST(CompensatedSum, ExactOnRepresentableStreams) {
  Rng rng(3);
  for (int s = 0; s < 10; ++s) {
    std::vector<double> v;
    for (int k = 0; k < 200; ++k) v.push_back(std::ldexp(std::floor(rng.uniform(-1e6, 1e6)), -10));
    const Rational want = exact(v);
    for (const KernelSpec& spec : {KernelSpec::recursive(), KernelSpec::compensated(), KernelSpec::blocked(14),
                                   KernelSpec::mixed(8, KernelSpec::recursive(), KernelSpec::compensated())})
      EXPECT_EQ(Rational(kernel_sum(scalars(v), spec)(0, 0).real()), want) << spec.tag();
  }
}

TEST(MixedBlockSum, Degenerate) {
  Rng rng(4);
  std::vector<CMatrix> keep;
  const TermStream t = uniform_stream(3, 25, rng, keep);
  const KernelSpec rec = KernelSpec::recursive(), comp = KernelSpec::compensated();
  EXPECT_EQ(mixed_block_sum(t, 1, rec, comp), compensated_sum(t));
  EXPECT_EQ(mixed_block_sum(t, 25, rec, comp), recursive_sum(t));
  EXPECT_EQ(mixed_block_sum(t, 25, comp, rec), compensated_sum(t));
}

TEST(MixedBlockSum, HalfUlpStreamWithinBlockBound) {
  const std::vector<double> v{1.0, u / 2, u / 2, u / 2};
  const Rational want = exact(v);
  const CMatrix got = mixed_block_sum(scalars(v), 2, KernelSpec::recursive(), KernelSpec::compensated());
  const KernelSpec spec = KernelSpec::mixed(2, KernelSpec::recursive(), KernelSpec::compensated());
  double ns = 0.0;
  for (double x : v) ns += x;
  EXPECT_LE(err_vs(got, want), error_budget(spec, 3, ns).bound);
}

TEST(Horner, Examples) {
  EXPECT_EQ(horner_matrix_poly({1.0, 1.0, 1.0}, 2.0 * CMatrix::Identity(2, 2)), 7.0 * CMatrix::Identity(2, 2));
  EXPECT_EQ(horner_matrix_poly({Complex(2.5, -1.0)}, CMatrix::Identity(3, 3)), Complex(2.5, -1.0) * CMatrix::Identity(3, 3));
  std::vector<Complex> c;
  for (int k = 0; k <= 20; ++k) c.push_back(1.0 / std::tgamma(k + 1.0));
  EXPECT_NEAR(horner_matrix_poly(c, diag({1.0}))(0, 0).real(), std::exp(1.0), 1e-12);
}

TEST(Horner, UnderflowedTailIgnored) {
  // coefficients that vanish beyond some degree never meet an overflowed power
  std::vector<Complex> c(1200, 0.0);
  c[0] = 1.0;
  c[1] = 0.5;
  const CMatrix s = horner_matrix_poly(c, -3.0 * CMatrix::Identity(2, 2));
  EXPECT_EQ(s, -0.5 * CMatrix::Identity(2, 2));
}

TEST(ErrorBudget, Examples) {
  EXPECT_EQ(error_budget(KernelSpec::recursive(), 1000, 1.0).coefficient, 1000.0);
  EXPECT_EQ(error_budget(KernelSpec::blocked(32), 1023, 1.0).coefficient, 62.0);
  EXPECT_EQ(error_budget(KernelSpec::compensated(), 5000, 1.0).coefficient, 2.0);
  const ErrorBudget b = error_budget(KernelSpec::recursive(), 10, 3.0);
  EXPECT_EQ(b.bound, 10.0 * u * 3.0);
}

TEST(ParseKernel, Tags) {
  EXPECT_EQ(parse_kernel("recursive").kind, KernelKind::recursive);
  EXPECT_EQ(parse_kernel("kahan").kind, KernelKind::compensated);
  EXPECT_EQ(parse_kernel("block:7").block, 7u);
  const KernelSpec m = parse_kernel("mixed:4:recursive:kahan");
  EXPECT_EQ(m.kind, KernelKind::mixed);
  EXPECT_EQ(m.accurate->kind, KernelKind::compensated);
  EXPECT_THROW(parse_kernel("pairwise"), Error);
  EXPECT_THROW(parse_kernel("block:x"), Error);
}

TEST(Accumulator, MatchesBatchKernels) {
  Rng rng(5);
  std::vector<CMatrix> keep;
  const TermStream t = uniform_stream(3, 50, rng, keep);
  for (const std::string tag : {"recursive", "kahan", "block:7", "mixed:6:recursive:kahan"}) {
    const KernelSpec spec = parse_kernel(tag);
    auto acc = make_accumulator(spec);
    for (const CMatrix& a : keep) acc->add(a);
    EXPECT_EQ(acc->value(), kernel_sum(t, spec)) << tag;
  }
}

TEST(ErrorBudget, RandomStreamsWithinBound) {
  const std::size_t d = 20, count = 1001;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    std::vector<CMatrix> keep;
    const TermStream t = uniform_stream(d, count, rng, keep);
    DoubleDouble ref(d);
    for (const CMatrix& a : keep) ref.add(a);
    const double ns = norm_sum(keep);
    const std::size_t b = 32;
    for (const KernelSpec& spec : {KernelSpec::recursive(), KernelSpec::blocked(b), KernelSpec::compensated()}) {
      const double err = spectral_norm(ref.minus(kernel_sum(t, spec)));
      // compensated first-order bound with the O(u^2) slack factor 4
      const double slack = spec.kind == KernelKind::compensated ? 4.0 : 1.0;
      EXPECT_LE(err, slack * error_budget(spec, count - 1, ns).bound) << spec.tag() << " seed " << seed;
    }
  }
}

TEST(BlockSum, SquareRootBlockOnConstantStreams) {
  const std::size_t count = 4096, root = 64;
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const double c = rng.uniform(0.1, 1.0);
    const std::vector<double> v(count, c);
    const Rational want = exact(v);
    auto e = [&](std::size_t b) { return err_vs(block_sum(scalars(v), b), want); };
    if (e(root) <= e(2) && e(root) <= e(count / 2)) ++wins;
  }
  EXPECT_GT(wins, 10);
}

TEST(CompensatedSum, ErrorIndependentOfN) {
  auto errs = [](std::size_t m, const KernelSpec& spec) {
    const std::vector<double> v = half_ulp_stream(m);
    return err_vs(kernel_sum(scalars(v), spec), exact(v));
  };
  const double r100 = errs(100, KernelSpec::recursive()), r10k = errs(10000, KernelSpec::recursive());
  EXPECT_NEAR(r10k / r100, 100.0, 1.0);
  const double c100 = errs(100, KernelSpec::compensated()), c10k = errs(10000, KernelSpec::compensated());
  // both are exact here; 0/0 counts as ratio 1
  const double ratio = c10k == 0.0 && c100 == 0.0 ? 1.0 : c10k / c100;
  EXPECT_LT(ratio, 10.0);
}
