#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "tpd/eigen_sym.hpp"

using namespace tpd;

namespace {

Mat random_sym(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.at(i, j) = m.at(j, i) = u(rng);
  return m;
}

double residual(const Mat& a, const EigenSym& e) {
  // max_k ||A v_k - lambda_k v_k||_inf
  double worst = 0.0;
  for (std::size_t k = 0; k < a.n; ++k)
    for (std::size_t i = 0; i < a.n; ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < a.n; ++j) av += a.at(i, j) * e.vectors.at(j, k);
      worst = std::max(worst, std::fabs(av - e.values[k] * e.vectors.at(i, k)));
    }
  return worst;
}

double ortho_err(const EigenSym& e) {
  std::size_t n = e.vectors.n;
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k; l < n; ++l) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        dot += e.vectors.at(i, k) * e.vectors.at(i, l);
      worst = std::max(worst, std::fabs(dot - (k == l ? 1.0 : 0.0)));
    }
  return worst;
}

}  // namespace

TEST_CASE("known 2x2 spectrum") {
  Mat m(2);
  m.at(0, 0) = 2.0;
  m.at(1, 1) = 2.0;
  m.at(0, 1) = m.at(1, 0) = 1.0;
  auto e = eigen_sym(m, Exec::serial);
  REQUIRE(e.values.size() == 2);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("eigenpairs solve A v = lambda v and stay orthonormal") {
  std::mt19937 rng(11);
  for (std::size_t n : {1u, 2u, 3u, 7u, 24u, 65u}) {
    Mat m = random_sym(rng, n);
    auto e = eigen_sym(m, Exec::serial);
    REQUIRE(e.values.size() == n);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
    CHECK(residual(m, e) < 1e-10);
    CHECK(ortho_err(e) < 1e-11);
  }
}

TEST_CASE("QL and Jacobi agree on the spectrum") {
  std::mt19937 rng(12);
  for (int t = 0; t < 8; ++t) {
    Mat m = random_sym(rng, 20);
    auto a = eigen_sym(m, Exec::serial);
    auto b = eigen_sym_jacobi(m);
    for (std::size_t k = 0; k < m.n; ++k)
      CHECK(a.values[k] == doctest::Approx(b.values[k]).epsilon(1e-9));
  }
}

TEST_CASE("parallel path is bit-identical to serial") {
  std::mt19937 rng(13);
  for (std::size_t n : {40u, 90u, 150u}) {
    Mat m = random_sym(rng, n);
    auto s = eigen_sym(m, Exec::serial);
    auto p = eigen_sym(m, Exec::parallel);
    CHECK(s.values == p.values);
    CHECK(s.vectors.a == p.vectors.a);
    Mat ps = psd_project(m, Exec::serial);
    Mat pp = psd_project(m, Exec::parallel);
    CHECK(ps.a == pp.a);
  }
}

TEST_CASE("psd projection clamps the spectrum and fixes psd inputs") {
  std::mt19937 rng(14);
  SUBCASE("projection is psd and keeps the positive part") {
    for (int t = 0; t < 6; ++t) {
      Mat m = random_sym(rng, 12);
      Mat p = psd_project(m, Exec::serial);
      CHECK(min_eigenvalue(p, Exec::serial) > -1e-10);
      // A - P only carries the clamped negative part: P - A is psd too.
      Mat diff(m.n);
      for (std::size_t i = 0; i < m.a.size(); ++i) diff.a[i] = p.a[i] - m.a[i];
      CHECK(min_eigenvalue(diff, Exec::serial) > -1e-10);
      // symmetry is preserved exactly
      for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(p.at(i, j) == p.at(j, i));
    }
  }
  SUBCASE("already-psd input comes back unchanged up to roundoff") {
    Mat m = random_sym(rng, 10);
    Mat gram(m.n);  // M^T M is psd
    for (std::size_t i = 0; i < m.n; ++i)
      for (std::size_t j = 0; j < m.n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < m.n; ++k) s += m.at(k, i) * m.at(k, j);
        gram.at(i, j) = s;
      }
    Mat p = psd_project(gram, Exec::serial);
    for (std::size_t i = 0; i < gram.a.size(); ++i)
      CHECK(p.a[i] == doctest::Approx(gram.a[i]).epsilon(1e-9));
  }
  SUBCASE("identity is a fixed point") {
    Mat id = Mat::identity(6);
    Mat p = psd_project(id, Exec::serial);
    for (std::size_t i = 0; i < id.a.size(); ++i)
      CHECK(p.a[i] == doctest::Approx(id.a[i]).epsilon(1e-12));
  }
}

TEST_CASE("min_eigenvalue matches the sorted spectrum") {
  std::mt19937 rng(15);
  Mat m = random_sym(rng, 9);
  auto e = eigen_sym(m, Exec::serial);
  CHECK(min_eigenvalue(m, Exec::serial) == doctest::Approx(e.values[0]).epsilon(1e-12));
}
