#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divsum/linalg.hpp"
#include "divsum/records.hpp"
#include "divsum/rng.hpp"

namespace divsum {

// Zero or empty fields select the experiment's defaults.
struct ExperimentSpec {
  std::string id;
  std::size_t dim = 0;
  std::size_t terms = 0;
  std::size_t count = 0;  // matrices per grid point
  std::uint64_t seed = 1;
  std::vector<double> rhos;
  std::vector<double> alphas;
  std::vector<double> deltas;
  std::vector<int> x_exponents;  // x = 1 - 2^{-m}
};

struct ExperimentResult {
  Table table;
  Table timings;  // method, seconds; never part of the reproducible output
};

// Upper bidiagonal; |diagonal| uniform in (0, 0.9), negative with probability
// alpha; superdiagonal uniform in (0, 1).
CMatrix gen_bidiagonal(std::size_t d, double alpha, Rng& rng);
CMatrix gen_bidiagonal(std::size_t d, double alpha, std::uint64_t seed);

enum class Structure { orthogonal, tridiagonal, jordan };

struct GeneratedMatrix {
  CMatrix x;
  CMatrix similarity;   // X = S diag-or-Jordan(eigs) S^{-1}
  double condition = 1.0;  // of the similarity
};

// orthogonal: Q diag(eigs) Q^T; tridiagonal: T diag(eigs) T^{-1};
// jordan: block diagonal Jordan blocks of the given sizes, each carrying the
// eigenvalue at its first position.
GeneratedMatrix gen_with_spectrum(const std::vector<Complex>& eigs, Structure s, Rng& rng,
                                  const std::vector<std::size_t>& jordan_sizes = {});

// (I - X)^{-1} for upper bidiagonal X by back-substitution.
CMatrix bidiagonal_neumann_inverse(const CMatrix& x);

ExperimentResult run_gibbs(const ExperimentSpec& spec);
ExperimentResult run_neumann_extension(const ExperimentSpec& spec);
ExperimentResult run_euler_accuracy(const ExperimentSpec& spec);
ExperimentResult run_dirichlet_lambert(const ExperimentSpec& spec);
ExperimentResult run_floatsum_bench(const ExperimentSpec& spec);
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Total variation minus net change of a column over the rows of one structure
// with lo <= t <= hi, taken separately for t <= 0 and t >= 0. Zero for a curve
// that is monotone on each side of t = 0, like the norm of a smoothed sign.
double gibbs_oscillation(const Table& gibbs, const std::string& structure, const std::string& column, double lo,
                         double hi);

}  // namespace divsum
