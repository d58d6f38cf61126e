#pragma once

#include <cstddef>
#include <vector>

namespace tpd {

// Dense row-major square matrix.  Symmetric users keep both triangles filled.
struct Mat {
  std::size_t n = 0;
  std::vector<double> a;

  Mat() = default;
  explicit Mat(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}

  static Mat identity(std::size_t dim) {
    Mat m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

}  // namespace tpd
