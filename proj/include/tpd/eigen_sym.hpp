#pragma once

#include <vector>

#include "tpd/dense.hpp"
#include "tpd/exec.hpp"

namespace tpd {

struct EigenSym {
  std::vector<double> values;  // ascending
  Mat vectors;                 // column k is the eigenvector of values[k]
};

// Householder tridiagonalization followed by implicit-shift QL.  The row/column
// update loops run under OpenMP when exec is parallel; results are bit-identical
// to the serial path.
EigenSym eigen_sym(const Mat& a, Exec exec = default_exec());

// Cyclic Jacobi rotations.  Slower; kept as an independent reference for tests
// and benchmarks.
EigenSym eigen_sym_jacobi(const Mat& a);

// Nearest (Frobenius) positive semidefinite matrix: negative eigenvalues
// clamped to zero.
Mat psd_project(const Mat& a, Exec exec = default_exec());

double min_eigenvalue(const Mat& a, Exec exec = default_exec());

}  // namespace tpd
