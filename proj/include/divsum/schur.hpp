#pragma once

#include <vector>

#include "divsum/linalg.hpp"

namespace divsum {

// A = Q R Q^H with Q unitary and R upper triangular.
struct SchurForm {
  CMatrix q;
  CMatrix r;
};

// Householder Hessenberg reduction followed by shifted complex QR sweeps.
SchurForm schur(const CMatrix& a);

struct ClusteredSchur {
  SchurForm form;
  std::vector<int> cluster_of;  // cluster id per diagonal position after reordering
};

// Permutes the diagonal by adjacent Givens swaps so that equal cluster ids become
// contiguous. Clusters are ordered by the mean position of their members.
ClusteredSchur reorder_schur(const SchurForm& sf, const std::vector<int>& cluster_of);

// Solves A X - X B = C for upper triangular A and B.
CMatrix sylvester_solve(const CMatrix& a, const CMatrix& b, const CMatrix& c);

}  // namespace divsum
