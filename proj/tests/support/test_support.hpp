// Copyright 2026 The tsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TSIM_TESTS_SUPPORT_TEST_SUPPORT_HPP_
#define TSIM_TESTS_SUPPORT_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "tsim/tsim.hpp"

namespace tsim::testing {

// Seeded generator for the hand-rolled property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool bernoulli(double p) { return uniform(0.0, 1.0) < p; }

  Scalar phase() { return std::polar(1.0, uniform(-std::numbers::pi, std::numbers::pi)); }

  // |z| log-uniform in [lo, hi], uniformly random argument.
  Scalar log_uniform(double lo, double hi) {
    return std::polar(std::exp(uniform(std::log(lo), std::log(hi))),
                      uniform(-std::numbers::pi, std::numbers::pi));
  }

  Scalar gaussian() {
    std::normal_distribution<double> g;
    return {g(engine_), g(engine_)};
  }

  Permutation permutation(int n) {
    std::vector<int> image(n);
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), engine_);
    return Permutation(std::move(image));
  }

  DiagonalScaling scaling(int n, double lo = 0.1, double hi = 10.0) {
    std::vector<Scalar> d(n);
    for (Scalar& v : d) v = log_uniform(lo, hi);
    return DiagonalScaling(std::move(d));
  }

  StructuredWitness structured_witness(int n, int m, double lo = 0.1, double hi = 10.0) {
    return {permutation(n), scaling(n, lo, hi), m};
  }

  // Each entry is nonzero with probability `density`; nonzeros have
  // magnitude in [lo, hi] and a random phase. At least one entry is nonzero.
  Tensor sparse_tensor(int order, int dim, double density, double lo = 0.5,
                       double hi = 2.0) {
    Tensor t(order, dim);
    for (std::size_t k = 0; k < t.size(); ++k)
      if (bernoulli(density)) t[k] = log_uniform(lo, hi);
    if (nnz(t) == 0) t[static_cast<std::size_t>(integer(0, static_cast<int>(t.size()) - 1))] =
        log_uniform(lo, hi);
    return t;
  }

  Tensor dense_tensor(int order, int dim) {
    Tensor t(order, dim);
    for (Scalar& v : t.entries()) v = gaussian();
    return t;
  }

  Matrix matrix(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = gaussian();
    return m;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Independent oracles. None of these call into the code they check.

inline Scalar power(Scalar base, int e) {
  Scalar out(1.0);
  if (e >= 0) {
    for (int i = 0; i < e; ++i) out *= base;
  } else {
    for (int i = 0; i < -e; ++i) out /= base;
  }
  return out;
}

inline std::size_t ipow_size(int base, int e) {
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) out *= static_cast<std::size_t>(base);
  return out;
}

// Base-n digits of `offset`, most significant first.
inline std::vector<int> digits(std::size_t offset, int n, int count) {
  std::vector<int> out(count);
  for (int t = count - 1; t >= 0; --t) {
    out[t] = static_cast<int>(offset % static_cast<std::size_t>(n));
    offset /= static_cast<std::size_t>(n);
  }
  return out;
}

inline std::size_t undigits(const std::vector<int>& idx, int n) {
  std::size_t out = 0;
  for (int v : idx) out = out * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
  return out;
}

// General product evaluated straight from its defining sum.
inline Tensor oracle_product(const Tensor& a, const Tensor& b) {
  const int n = a.dim();
  const int m = a.order();
  const int k = b.order();
  const int r = (m - 1) * (k - 1) + 1;
  Tensor out(r, n);
  const std::size_t terms = ipow_size(n, m - 1);
  for (std::size_t o = 0; o < out.size(); ++o) {
    const std::vector<int> idx = digits(o, n, r);
    Scalar sum(0.0);
    for (std::size_t s = 0; s < terms; ++s) {
      const std::vector<int> tail = digits(s, n, m - 1);
      std::vector<int> a_idx{idx[0]};
      a_idx.insert(a_idx.end(), tail.begin(), tail.end());
      Scalar term = a[undigits(a_idx, n)];
      for (int t = 0; t < m - 1; ++t) {
        std::vector<int> b_idx{tail[t]};
        for (int u = 0; u < k - 1; ++u) b_idx.push_back(idx[1 + t * (k - 1) + u]);
        term *= b[undigits(b_idx, n)];
      }
      sum += term;
    }
    out[o] = sum;
  }
  return out;
}

// (I Q)_{i1..im} = q_{i1 i2} ... q_{i1 im}.
inline Tensor oracle_unit_q(const Matrix& q, int m) {
  const int n = q.dim();
  Tensor out(m, n);
  for (std::size_t o = 0; o < out.size(); ++o) {
    const std::vector<int> idx = digits(o, n, m);
    Scalar v(1.0);
    for (int t = 1; t < m; ++t) v *= q(idx[0], idx[t]);
    out[o] = v;
  }
  return out;
}

inline Tensor oracle_relabel(const Tensor& a, const Permutation& sigma) {
  const int n = a.dim();
  Tensor out(a.order(), n);
  for (std::size_t o = 0; o < out.size(); ++o) {
    std::vector<int> idx = digits(o, n, a.order());
    for (int& v : idx) v = sigma(v);
    out[o] = a[undigits(idx, n)];
  }
  return out;
}

inline Tensor oracle_diagonal(const Tensor& a, const DiagonalScaling& d) {
  const int n = a.dim();
  const int m = a.order();
  Tensor out(m, n);
  for (std::size_t o = 0; o < out.size(); ++o) {
    const std::vector<int> idx = digits(o, n, m);
    Scalar v = a[o] * power(d[idx[0]], 1 - m);
    for (int t = 1; t < m; ++t) v *= d[idx[t]];
    out[o] = v;
  }
  return out;
}

inline Matrix oracle_matmul(const Matrix& x, const Matrix& y) {
  const int n = x.dim();
  Matrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar s(0.0);
      for (int l = 0; l < n; ++l) s += x(i, l) * y(l, j);
      out(i, j) = s;
    }
  return out;
}

// Cofactor expansion along the first row; fine for n <= 8.
inline Scalar oracle_determinant(const std::vector<Scalar>& a, int n) {
  if (n == 1) return a[0];
  Scalar det(0.0);
  for (int c = 0; c < n; ++c) {
    if (a[c] == Scalar(0.0)) continue;
    std::vector<Scalar> minor;
    minor.reserve(static_cast<std::size_t>(n - 1) * (n - 1));
    for (int r = 1; r < n; ++r)
      for (int k = 0; k < n; ++k)
        if (k != c) minor.push_back(a[r * n + k]);
    det += ((c % 2 == 0) ? 1.0 : -1.0) * a[c] * oracle_determinant(minor, n - 1);
  }
  return det;
}

inline double max_diff(const Tensor& x, const Tensor& y) {
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(x[k] - y[k]));
  return worst;
}

inline double max_rel_diff(const Tensor& x, const Tensor& y) {
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k)
    worst = std::max(worst, std::abs(x[k] - y[k]) / std::max(1.0, std::abs(y[k])));
  return worst;
}

// ---------------------------------------------------------------------------
// Polynomials with complex coefficients, lowest degree first.

using Poly = std::vector<Scalar>;

inline Poly poly_add(const Poly& p, const Poly& q) {
  Poly out(std::max(p.size(), q.size()));
  for (std::size_t i = 0; i < p.size(); ++i) out[i] += p[i];
  for (std::size_t i = 0; i < q.size(); ++i) out[i] += q[i];
  return out;
}

inline Poly poly_scale(const Poly& p, Scalar c) {
  Poly out = p;
  for (Scalar& v : out) v *= c;
  return out;
}

inline Poly poly_mul(const Poly& p, const Poly& q) {
  Poly out(p.size() + q.size() - 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

inline Poly poly_pow(const Poly& p, int e) {
  Poly out{Scalar(1.0)};
  for (int i = 0; i < e; ++i) out = poly_mul(out, p);
  return out;
}

// prod_i (lambda - d_i)^{m-1}.
inline Poly diagonal_char_poly(const std::vector<Scalar>& d, int m) {
  Poly out{Scalar(1.0)};
  for (const Scalar& v : d) out = poly_mul(out, poly_pow(Poly{-v, Scalar(1.0)}, m - 1));
  return out;
}

// Resultant of two binary quadratics f = a0 x^2 + a1 xy + a2 y^2 and
// g = b0 x^2 + b1 xy + b2 y^2 with coefficients polynomial in lambda:
// (a0 b2 - a2 b0)^2 - (a0 b1 - a1 b0)(a1 b2 - a2 b1).
inline Poly order3_char_poly(const Tensor& a) {
  auto at = [&](int i, int j, int k) { return a[static_cast<std::size_t>(i * 4 + j * 2 + k)]; };
  const Poly a0{at(0, 0, 0), Scalar(-1.0)};
  const Poly a1{at(0, 0, 1) + at(0, 1, 0)};
  const Poly a2{at(0, 1, 1)};
  const Poly b0{at(1, 0, 0)};
  const Poly b1{at(1, 0, 1) + at(1, 1, 0)};
  const Poly b2{at(1, 1, 1), Scalar(-1.0)};
  const Poly x = poly_add(poly_mul(a0, b2), poly_scale(poly_mul(a2, b0), -1.0));
  const Poly y = poly_add(poly_mul(a0, b1), poly_scale(poly_mul(a1, b0), -1.0));
  const Poly z = poly_add(poly_mul(a1, b2), poly_scale(poly_mul(a2, b1), -1.0));
  Poly out = poly_add(poly_mul(x, x), poly_scale(poly_mul(y, z), -1.0));
  out.resize(5);
  return out;
}

// Sylvester matrix of the two eigen-equation forms of a dim-2 tensor at
// lambda, assembled from the tensor entries directly.
inline std::vector<Scalar> oracle_sylvester(const Tensor& a, Scalar lambda) {
  const int d = a.order() - 1;
  std::vector<std::vector<Scalar>> forms(2, std::vector<Scalar>(d + 1));
  for (std::size_t o = 0; o < a.size(); ++o) {
    const std::vector<int> idx = digits(o, 2, a.order());
    const int ones = static_cast<int>(std::count(idx.begin() + 1, idx.end(), 1));
    forms[idx[0]][ones] += a[o];
  }
  forms[0][0] -= lambda;
  forms[1][d] -= lambda;
  const int size = 2 * d;
  std::vector<Scalar> s(static_cast<std::size_t>(size) * size);
  for (int r = 0; r < d; ++r)
    for (int k = 0; k <= d; ++k) {
      s[r * size + r + k] = forms[0][k];
      s[(d + r) * size + r + k] = forms[1][k];
    }
  return s;
}

inline Scalar poly_eval(const Poly& p, Scalar z) {
  Scalar acc(0.0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
  return acc;
}

// ---------------------------------------------------------------------------
// Brute-force similarity oracle for order 3 and dim <= 3.
//
// For every relabeling sigma whose pattern fits, the diagonal unknowns are
// gauge fixed by d_0 = 1, leaving at most two unknowns. Every solution of the
// multiplicative system must satisfy each pair of independent rows, which
// pins each unknown to finitely many roots; the remaining cases reduce to one
// monomial. All candidates are checked against every equation.

namespace detail {

struct Row {
  int c1 = 0;
  int c2 = 0;
  Scalar r;
};

inline std::vector<Scalar> roots_of(Scalar value, int k) {
  // All t with t^k = value, k != 0.
  if (k < 0) {
    value = Scalar(1.0) / value;
    k = -k;
  }
  std::vector<Scalar> out;
  const double mag = std::pow(std::abs(value), 1.0 / k);
  const double arg = std::arg(value);
  for (int j = 0; j < k; ++j) out.push_back(std::polar(mag, (arg + 2.0 * std::numbers::pi * j) / k));
  return out;
}

inline bool satisfies(const std::vector<Row>& rows, Scalar d1, Scalar d2, double tol) {
  for (const Row& row : rows) {
    const Scalar lhs = power(d1, row.c1) * power(d2, row.c2);
    if (std::abs(lhs - row.r) > tol * std::abs(row.r)) return false;
  }
  return true;
}

inline int gcd_abs(int a, int b) { return std::gcd(std::abs(a), std::abs(b)); }

inline bool solvable(const std::vector<Row>& rows, double tol) {
  // Independent pair: finite candidate set.
  for (std::size_t x = 0; x < rows.size(); ++x)
    for (std::size_t y = x + 1; y < rows.size(); ++y) {
      const Row& p = rows[x];
      const Row& q = rows[y];
      const int delta = p.c1 * q.c2 - p.c2 * q.c1;
      if (delta == 0) continue;
      const Scalar v1 = power(p.r, q.c2) * power(q.r, -p.c2);
      const Scalar v2 = power(q.r, p.c1) * power(p.r, -q.c1);
      for (const Scalar& d1 : roots_of(v1, delta))
        for (const Scalar& d2 : roots_of(v2, delta))
          if (satisfies(rows, d1, d2, tol)) return true;
      return false;
    }
  // Rank <= 1: every nonzero row is an integer multiple of one primitive
  // exponent vector v; solvable iff some t = d^v fits all rows.
  const Row* base = nullptr;
  for (const Row& row : rows)
    if (row.c1 != 0 || row.c2 != 0) {
      base = &row;
      break;
    }
  if (base == nullptr) {
    return std::all_of(rows.begin(), rows.end(), [&](const Row& row) {
      return std::abs(row.r - Scalar(1.0)) <= tol;
    });
  }
  const int g = gcd_abs(base->c1, base->c2);
  const int v1 = base->c1 / g;
  const int v2 = base->c2 / g;
  auto multiple = [&](const Row& row) { return v1 != 0 ? row.c1 / v1 : row.c2 / v2; };
  for (const Scalar& t : roots_of(base->r, multiple(*base))) {
    bool ok = true;
    for (const Row& row : rows) {
      const int k = multiple(row);
      if (std::abs(power(t, k) - row.r) > tol * std::abs(row.r)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

inline bool oracle_similar(const Tensor& a, const Tensor& b, double tol = 1e-8) {
  const int n = a.dim();
  const int m = a.order();
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 0);
  do {
    bool fits = true;
    std::vector<detail::Row> rows;
    for (std::size_t o = 0; o < b.size() && fits; ++o) {
      std::vector<int> idx = digits(o, n, m);
      std::vector<int> mapped = idx;
      for (int& v : mapped) v = image[v];
      const Scalar av = a[undigits(mapped, n)];
      const Scalar bv = b[o];
      if ((av == Scalar(0.0)) != (bv == Scalar(0.0))) fits = false;
      if (!fits || bv == Scalar(0.0)) continue;
      std::vector<int> e(n, 0);
      e[mapped[0]] += 1 - m;
      for (int t = 1; t < m; ++t) e[mapped[t]] += 1;
      rows.push_back({n > 1 ? e[1] : 0, n > 2 ? e[2] : 0, bv / av});
    }
    if (fits && detail::solvable(rows, tol)) return true;
  } while (std::next_permutation(image.begin(), image.end()));
  return false;
}

}  // namespace tsim::testing

#endif  // TSIM_TESTS_SUPPORT_TEST_SUPPORT_HPP_
