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

#include "tsim/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "tsim/error.hpp"
#include "tsim/product.hpp"

namespace tsim {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= size() || seen[v]) {
      throw Error(Errc::kInvalidPermutation, "permutation image is not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> image(n);
  for (int i = 0; i < n; ++i) image[i] = i;
  return Permutation(std::move(image));
}

Permutation Permutation::from_one_based(std::span<const int> image) {
  std::vector<int> zero_based(image.begin(), image.end());
  for (int& v : zero_based) --v;
  return Permutation(std::move(zero_based));
}

std::vector<int> Permutation::one_based() const {
  std::vector<int> out = image_;
  for (int& v : out) ++v;
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (int i = 0; i < size(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

Matrix Permutation::matrix() const {
  Matrix r(size());
  for (int i = 0; i < size(); ++i) r(i, image_[i]) = 1.0;
  return r;
}

Permutation operator*(const Permutation& s, const Permutation& t) {
  if (s.size() != t.size()) {
    throw Error(Errc::kDimensionMismatch, "composing permutations of different sizes");
  }
  std::vector<int> image(s.size());
  for (int i = 0; i < s.size(); ++i) image[i] = s(t(i));
  return Permutation(std::move(image));
}

DiagonalScaling::DiagonalScaling(std::vector<Scalar> values)
    : values_(std::move(values)) {
  for (const Scalar& v : values_) {
    if (!(std::abs(v) > 1e-300)) {
      throw Error(Errc::kZeroDiagonal, "diagonal scaling has a zero entry");
    }
  }
}

DiagonalScaling DiagonalScaling::identity(int n) {
  return DiagonalScaling(std::vector<Scalar>(n, Scalar(1.0)));
}

DiagonalScaling DiagonalScaling::uniform(int n, Scalar c) {
  return DiagonalScaling(std::vector<Scalar>(n, c));
}

Matrix DiagonalScaling::power(int t) const {
  Matrix m(size());
  for (int i = 0; i < size(); ++i) m(i, i) = ipow(values_[i], t);
  return m;
}

DiagonalScaling operator*(const DiagonalScaling& a, const DiagonalScaling& b) {
  if (a.size() != b.size()) {
    throw Error(Errc::kDimensionMismatch, "scalings of different sizes");
  }
  std::vector<Scalar> v(a.size());
  for (int i = 0; i < a.size(); ++i) v[i] = a[i] * b[i];
  return DiagonalScaling(std::move(v));
}

double scaled_difference(const Tensor& x, const Tensor& y) {
  double scale = 1.0;
  for (const Scalar& v : y.entries()) scale = std::max(scale, std::abs(v));
  return max_abs_diff(x, y) / scale;
}

namespace {

void require_square_pair(const Witness& w) {
  if (w.p.dim() != w.q.dim() || w.p.dim() < 1) {
    throw Error(Errc::kShapeMismatch, "witness matrices must be square of equal size");
  }
}

void require_structure_order(int order) {
  if (order < 3) {
    throw Error(Errc::kInvalidOrder,
                "witness structure requires order >= 3 (got " +
                    std::to_string(order) + ")");
  }
}

}  // namespace

bool check_unit_preserving(const Witness& w, double tol) {
  require_square_pair(w);
  if (w.order < 2) {
    throw Error(Errc::kInvalidOrder, "unit preservation needs order >= 2");
  }
  const Tensor unit = unit_tensor(w.order, w.p.dim());
  const Tensor image = left_matrix_product(w.p, right_matrix_product(unit, w.q));
  return max_abs_diff(image, unit) <= tol;
}

Witness compose_witness(const StructuredWitness& s) {
  require_structure_order(s.order);
  if (s.sigma.size() != s.d.size()) {
    throw Error(Errc::kShapeMismatch, "sigma and D have different sizes");
  }
  const int n = s.sigma.size();
  Witness w{Matrix(n), Matrix(n), s.order};
  for (int i = 0; i < n; ++i) {
    w.q(i, s.sigma(i)) = s.d[i];
    w.p(s.sigma(i), i) = ipow(s.d[i], 1 - s.order);
  }
  return w;
}

StructuredWitness decompose_witness(const Witness& w, const Tolerances& tol) {
  require_structure_order(w.order);
  require_square_pair(w);
  if (!check_unit_preserving(w, tol.structural)) {
    throw Error(Errc::kNotUnitPreserving, "P I Q differs from the unit tensor");
  }
  const int n = w.q.dim();
  std::vector<int> image(n);
  std::vector<Scalar> diag(n);
  for (int i = 0; i < n; ++i) {
    int found = 0;
    for (int j = 0; j < n; ++j) {
      if (std::abs(w.q(i, j)) > tol.structural) {
        image[i] = j;
        ++found;
      }
    }
    if (found != 1) {
      throw Error(Errc::kMalformedWitness,
                  "row " + std::to_string(i + 1) + " of Q has " +
                      std::to_string(found) + " structural entries, expected 1");
    }
    diag[i] = w.q(i, image[i]);
  }
  std::vector<bool> hit(n, false);
  for (int j : image) {
    if (hit[j]) throw Error(Errc::kMalformedWitness, "Q has two entries in one column");
    hit[j] = true;
  }
  StructuredWitness s{Permutation(std::move(image)), DiagonalScaling(std::move(diag)),
                      w.order};
  const Witness rebuilt = compose_witness(s);
  if (scaled_difference(w.p, rebuilt.p) > tol.compare ||
      scaled_difference(w.q, rebuilt.q) > tol.compare) {
    throw Error(Errc::kWitnessMismatch, "P is not R^T D^{1-m} for the D, R read from Q");
  }
  return s;
}

Lemma21Report verify_lemma21(const Witness& w, double tol) {
  require_square_pair(w);
  Lemma21Report report;
  report.unit_preserving = check_unit_preserving(w, tol);

  const int n = w.q.dim();
  const Tensor a = right_matrix_product(unit_tensor(w.order, n), w.q);
  Index index(w.order, 0);
  std::size_t offset = 0;
  report.tail_check = true;
  do {
    const bool constant_tail =
        std::all_of(index.begin() + 1, index.end(), [&](int v) { return v == index[1]; });
    if (!constant_tail) {
      const double mag = std::abs(a[offset]);
      report.max_tail_entry = std::max(report.max_tail_entry, mag);
      if (mag > tol && report.tail_check) {
        report.tail_check = false;
        report.first_tail_violation = index;
      }
    }
    ++offset;
  } while (next_index(index, n));

  const Matrix product = w.p * majorization_matrix(a);
  report.left_inverse_error = max_abs_diff(product, Matrix::identity(n));
  report.left_inverse_check = report.left_inverse_error <= tol;
  return report;
}

Tensor permutation_transform(const Tensor& a, const Permutation& sigma) {
  if (sigma.size() != a.dim()) {
    throw Error(Errc::kShapeMismatch, "permutation size does not match dimension");
  }
  Tensor b(a.order(), a.dim());
  Index index(a.order(), 0);
  Index image(a.order());
  std::size_t offset = 0;
  do {
    for (int t = 0; t < a.order(); ++t) image[t] = sigma(index[t]);
    b[offset++] = a[a.offset_of(image)];
  } while (next_index(index, a.dim()));
  return b;
}

Tensor diagonal_transform(const Tensor& a, const DiagonalScaling& d) {
  if (d.size() != a.dim()) {
    throw Error(Errc::kShapeMismatch, "scaling size does not match dimension");
  }
  const int n = a.dim();
  const int m = a.order();
  // Indices sharing an identical value of d share one exponent slot.
  std::vector<int> slot(n);
  for (int i = 0; i < n; ++i) {
    slot[i] = i;
    for (int j = 0; j < i; ++j)
      if (d[j] == d[i]) {
        slot[i] = slot[j];
        break;
      }
  }

  Tensor b = a;
  std::vector<int> exponent(n, 0);
  Index index(m, 0);
  std::size_t offset = 0;
  do {
    exponent[slot[index[0]]] += 1 - m;
    for (int t = 1; t < m; ++t) exponent[slot[index[t]]] += 1;
    Scalar factor(1.0);
    bool scaled = false;
    for (int j = 0; j < n; ++j) {
      if (exponent[j] != 0) {
        factor *= ipow(d[j], exponent[j]);
        scaled = true;
        exponent[j] = 0;
      }
    }
    if (scaled) b[offset] *= factor;
    ++offset;
  } while (next_index(index, n));
  return b;
}

Tensor structured_transform(const Tensor& a, const StructuredWitness& s) {
  return permutation_transform(diagonal_transform(a, s.d), s.sigma.inverse());
}

Tensor general_transform(const Tensor& a, const Witness& w, double tol) {
  require_square_pair(w);
  if (w.p.dim() != a.dim()) {
    throw Error(Errc::kShapeMismatch, "witness size does not match tensor dimension");
  }
  if (w.order != a.order()) {
    throw Error(Errc::kShapeMismatch, "witness order does not match tensor order");
  }
  if (a.order() == 2) {
    if (max_abs_diff(w.p * w.q, Matrix::identity(a.dim())) > tol) {
      throw Error(Errc::kNotUnitPreserving, "order-2 witness needs P Q = I");
    }
  } else if (!check_unit_preserving(w, tol)) {
    throw Error(Errc::kNotUnitPreserving, "P I Q differs from the unit tensor");
  }
  return left_matrix_product(w.p, right_matrix_product(a, w.q));
}

Factorization factor_similarity(const Tensor& a, const Witness& w,
                                const Tolerances& tol) {
  StructuredWitness s = decompose_witness(w, tol);
  if (s.sigma.size() != a.dim() || s.order != a.order()) {
    throw Error(Errc::kShapeMismatch, "witness does not fit the tensor");
  }
  return {diagonal_transform(a, s.d), std::move(s.sigma), std::move(s.d)};
}

WitnessProducts witness_products(const Witness& w, const Tolerances& tol) {
  require_square_pair(w);
  WitnessProducts out{w.q * w.p, w.p * w.q};
  if (w.order >= 3) {
    const StructuredWitness s = decompose_witness(w, tol);
    if (scaled_difference(out.qp, s.d.power(2 - w.order)) > tol.compare) {
      throw Error(Errc::kWitnessMismatch, "QP differs from D^{2-m}");
    }
  }
  return out;
}

}  // namespace tsim
