#include "tpd/eigen_sym.hpp"

#include <cfloat>
#include <cmath>
#include <cstdint>

#include "tpd/errors.hpp"

namespace tpd {

namespace {

// Householder reduction to tridiagonal form, accumulating the orthogonal
// transform in z.  d receives the diagonal, e the subdiagonal (e[0] unused).
void tridiagonalize(Mat& z, std::vector<double>& d, std::vector<double>& e,
                    bool parallel) {
  const std::int64_t n = std::int64_t(z.n);
  for (std::int64_t i = n - 1; i >= 1; --i) {
    std::int64_t l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (std::int64_t k = 0; k <= l; ++k) scale += std::fabs(z.at(i, k));
      if (scale == 0.0) {
        e[i] = z.at(i, l);
      } else {
        for (std::int64_t k = 0; k <= l; ++k) {
          z.at(i, k) /= scale;
          h += z.at(i, k) * z.at(i, k);
        }
        double f = z.at(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        z.at(i, l) = f - g;

        // p = A*u / h, one entry per row j: independent, fixed inner order.
#pragma omp parallel for schedule(static) if (parallel && n > 64)
        for (std::int64_t j = 0; j <= l; ++j) {
          z.at(j, i) = z.at(i, j) / h;
          double gj = 0.0;
          for (std::int64_t k = 0; k <= j; ++k) gj += z.at(j, k) * z.at(i, k);
          for (std::int64_t k = j + 1; k <= l; ++k) gj += z.at(k, j) * z.at(i, k);
          e[j] = gj / h;
        }
        f = 0.0;
        for (std::int64_t j = 0; j <= l; ++j) f += e[j] * z.at(i, j);
        double hh = f / (h + h);
        for (std::int64_t j = 0; j <= l; ++j) e[j] -= hh * z.at(i, j);

        // Rank-2 update, row j owned by one iteration.
#pragma omp parallel for schedule(static) if (parallel && n > 64)
        for (std::int64_t j = 0; j <= l; ++j) {
          double fj = z.at(i, j), gj = e[j];
          for (std::int64_t k = 0; k <= j; ++k)
            z.at(j, k) -= fj * e[k] + gj * z.at(i, k);
        }
      }
    } else {
      e[i] = z.at(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t l = i - 1;
    if (d[i] != 0.0) {
#pragma omp parallel for schedule(static) if (parallel && n > 64)
      for (std::int64_t j = 0; j <= l; ++j) {
        double g = 0.0;
        for (std::int64_t k = 0; k <= l; ++k) g += z.at(i, k) * z.at(k, j);
        for (std::int64_t k = 0; k <= l; ++k) z.at(k, j) -= g * z.at(k, i);
      }
    }
    d[i] = z.at(i, i);
    z.at(i, i) = 1.0;
    for (std::int64_t j = 0; j <= l; ++j) {
      z.at(j, i) = 0.0;
      z.at(i, j) = 0.0;
    }
  }
}

// Implicit-shift QL on the tridiagonal (d, e), rotating z's columns along.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Mat& z,
                 bool parallel) {
  const std::int64_t n = std::int64_t(d.size());
  for (std::int64_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (std::int64_t l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      std::int64_t m = l;
      for (; m < n - 1; ++m) {
        double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= DBL_EPSILON * dd) break;
      }
      if (m == l) break;
      if (iter++ == 64) throw InternalError("QL iteration failed to converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      std::int64_t i = m - 1;
      for (; i >= l; --i) {
        double f = s * e[i];
        double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;

        const double sk = s, ck = c;
#pragma omp parallel for schedule(static) if (parallel && n > 128)
        for (std::int64_t k = 0; k < n; ++k) {
          double fk = z.at(k, i + 1);
          z.at(k, i + 1) = sk * z.at(k, i) + ck * fk;
          z.at(k, i) = ck * z.at(k, i) - sk * fk;
        }
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

void sort_pairs(EigenSym& es) {
  const std::size_t n = es.values.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t k = i;
    for (std::size_t j = i + 1; j < n; ++j)
      if (es.values[j] < es.values[k]) k = j;
    if (k != i) {
      std::swap(es.values[i], es.values[k]);
      for (std::size_t r = 0; r < n; ++r)
        std::swap(es.vectors.at(r, i), es.vectors.at(r, k));
    }
  }
}

}  // namespace

EigenSym eigen_sym(const Mat& a, Exec exec) {
  EigenSym es;
  es.vectors = a;
  const std::size_t n = a.n;
  es.values.assign(n, 0.0);
  if (n == 0) return es;
  std::vector<double> e(n, 0.0);
  bool parallel = exec == Exec::parallel;
  tridiagonalize(es.vectors, es.values, e, parallel);
  ql_implicit(es.values, e, es.vectors, parallel);
  sort_pairs(es);
  return es;
}

EigenSym eigen_sym_jacobi(const Mat& a) {
  const std::size_t n = a.n;
  EigenSym es;
  es.vectors = Mat::identity(n);
  Mat m = a;
  es.values.assign(n, 0.0);
  if (n == 0) return es;

  for (int sweep = 0; sweep < 128; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m.at(p, q) * m.at(p, q);
    if (off <= 1e-26 * double(n) * double(n)) break;

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = m.at(p, q);
        if (apq == 0.0) continue;
        double theta = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
        double t = std::copysign(1.0, theta) /
                   (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double mkp = m.at(k, p), mkq = m.at(k, q);
          m.at(k, p) = c * mkp - s * mkq;
          m.at(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double mpk = m.at(p, k), mqk = m.at(q, k);
          m.at(p, k) = c * mpk - s * mqk;
          m.at(q, k) = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = es.vectors.at(k, p), vkq = es.vectors.at(k, q);
          es.vectors.at(k, p) = c * vkp - s * vkq;
          es.vectors.at(k, q) = s * vkp + c * vkq;
        }
      }
  }
  for (std::size_t i = 0; i < n; ++i) es.values[i] = m.at(i, i);
  sort_pairs(es);
  return es;
}

Mat psd_project(const Mat& a, Exec exec) {
  EigenSym es = eigen_sym(a, exec);
  const std::int64_t n = std::int64_t(a.n);
  Mat out(a.n);
  bool parallel = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (parallel && n > 64)
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i; j < n; ++j) {
      double v = 0.0;
      for (std::int64_t k = 0; k < n; ++k) {
        double lam = es.values[std::size_t(k)];
        if (lam <= 0.0) continue;
        v += lam * es.vectors.at(std::size_t(i), std::size_t(k)) *
             es.vectors.at(std::size_t(j), std::size_t(k));
      }
      out.at(std::size_t(i), std::size_t(j)) = v;
      out.at(std::size_t(j), std::size_t(i)) = v;
    }
  return out;
}

double min_eigenvalue(const Mat& a, Exec exec) {
  if (a.n == 0) return 0.0;
  return eigen_sym(a, exec).values.front();
}

}  // namespace tpd
