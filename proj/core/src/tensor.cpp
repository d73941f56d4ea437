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

#include "tsim/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "tsim/error.hpp"

namespace tsim {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidOrder: return "invalid-order";
    case Errc::kDimensionMismatch: return "dimension-mismatch";
    case Errc::kShapeMismatch: return "shape-mismatch";
    case Errc::kSizeLimit: return "size-limit";
    case Errc::kIndexOutOfRange: return "index-out-of-range";
    case Errc::kInvalidPermutation: return "invalid-permutation";
    case Errc::kZeroDiagonal: return "zero-diagonal";
    case Errc::kNotUnitPreserving: return "not-unit-preserving";
    case Errc::kMalformedWitness: return "malformed-witness";
    case Errc::kWitnessMismatch: return "witness-mismatch";
    case Errc::kUnsupportedDimension: return "unsupported-dimension";
    case Errc::kSearchTooLarge: return "search-too-large";
    case Errc::kZeroVector: return "zero-vector";
    case Errc::kInterpolationFailure: return "interpolation-failure";
    case Errc::kParse: return "parse-error";
  }
  return "unknown";
}

std::size_t checked_entry_count(int order, int dim, std::size_t entry_limit) {
  if (order < 1 || dim < 1) {
    throw Error(Errc::kInvalidOrder,
                "tensor order and dimension must be positive (got order " +
                    std::to_string(order) + ", dim " + std::to_string(dim) + ")");
  }
  std::size_t count = 1;
  for (int t = 0; t < order; ++t) {
    if (count > entry_limit / static_cast<std::size_t>(dim)) {
      throw Error(Errc::kSizeLimit,
                  "order " + std::to_string(order) + " dim " + std::to_string(dim) +
                      " exceeds the entry limit of " + std::to_string(entry_limit));
    }
    count *= static_cast<std::size_t>(dim);
  }
  return count;
}

Tensor::Tensor(int order, int dim, std::size_t entry_limit)
    : order_(order),
      dim_(dim),
      entries_(checked_entry_count(order, dim, entry_limit)) {}

Tensor::Tensor(int order, int dim, std::vector<Scalar> entries,
               std::size_t entry_limit)
    : order_(order), dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != checked_entry_count(order, dim, entry_limit)) {
    throw Error(Errc::kShapeMismatch,
                "entry count " + std::to_string(entries_.size()) +
                    " does not match dim^order");
  }
}

void Tensor::check_index(std::span<const int> index) const {
  if (index.size() != static_cast<std::size_t>(order_)) {
    throw Error(Errc::kIndexOutOfRange, "multi-index length must equal the order");
  }
  for (int i : index) {
    if (i < 0 || i >= dim_) {
      throw Error(Errc::kIndexOutOfRange,
                  "index component " + std::to_string(i) + " out of range");
    }
  }
}

const Scalar& Tensor::at(std::span<const int> index) const {
  check_index(index);
  return entries_[offset_of(index)];
}

Scalar& Tensor::at(std::span<const int> index) {
  check_index(index);
  return entries_[offset_of(index)];
}

std::size_t Tensor::offset_of(std::span<const int> index) const noexcept {
  std::size_t offset = 0;
  for (int i : index) offset = offset * static_cast<std::size_t>(dim_) + i;
  return offset;
}

void Tensor::index_of(std::size_t offset, std::span<int> index) const noexcept {
  for (std::size_t t = index.size(); t-- > 0;) {
    index[t] = static_cast<int>(offset % dim_);
    offset /= dim_;
  }
}

Index Tensor::index_of(std::size_t offset) const {
  Index index(order_);
  index_of(offset, index);
  return index;
}

Scalar ipow(Scalar base, int exponent) {
  if (exponent < 0) {
    base = Scalar(1.0) / base;
    exponent = -exponent;
  }
  Scalar result(1.0);
  for (int k = 0; k < exponent; ++k) result *= base;
  return result;
}

Matrix::Matrix(Tensor tensor) : tensor_(std::move(tensor)) {
  if (tensor_.order() != 2) {
    throw Error(Errc::kInvalidOrder, "a matrix must be an order-2 tensor");
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Scalar> diag) {
  Matrix m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::from_rows(
    std::initializer_list<std::initializer_list<Scalar>> rows) {
  Matrix m(static_cast<int>(rows.size()));
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m.dim()) {
      throw Error(Errc::kShapeMismatch, "matrix rows must be square");
    }
    int j = 0;
    for (const Scalar& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

std::vector<Scalar> Matrix::row(int i) const {
  std::vector<Scalar> out(dim());
  for (int j = 0; j < dim(); ++j) out[j] = (*this)(i, j);
  return out;
}

std::vector<Scalar> Matrix::column(int j) const {
  std::vector<Scalar> out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(dim());
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(Errc::kDimensionMismatch, "matrix product of different sizes");
  }
  const int n = a.dim();
  Matrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar sum(0.0);
      for (int k = 0; k < n; ++k) sum += a(i, k) * b(k, j);
      c(i, j) = sum;
    }
  return c;
}

bool Matrix::is_permutation() const {
  const int n = dim();
  for (int i = 0; i < n; ++i) {
    int ones_in_row = 0;
    int ones_in_col = 0;
    for (int j = 0; j < n; ++j) {
      const Scalar r = (*this)(i, j);
      const Scalar c = (*this)(j, i);
      if (r == Scalar(1.0)) ++ones_in_row;
      else if (r != Scalar(0.0)) return false;
      if (c == Scalar(1.0)) ++ones_in_col;
    }
    if (ones_in_row != 1 || ones_in_col != 1) return false;
  }
  return true;
}

bool Matrix::is_diagonal_matrix() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (i != j && (*this)(i, j) != Scalar(0.0)) return false;
  return true;
}

bool Matrix::is_generalized_permutation(double tol) const {
  const int n = dim();
  for (int i = 0; i < n; ++i) {
    int in_row = 0;
    int in_col = 0;
    for (int j = 0; j < n; ++j) {
      if (std::abs((*this)(i, j)) > tol) ++in_row;
      if (std::abs((*this)(j, i)) > tol) ++in_col;
    }
    if (in_row != 1 || in_col != 1) return false;
  }
  return true;
}

bool Matrix::is_invertible(double tol) const {
  const int n = dim();
  std::vector<Scalar> a(tensor_.entries().begin(), tensor_.entries().end());
  double scale = 0.0;
  for (const Scalar& v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return false;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[pivot * n + k])) pivot = i;
    if (std::abs(a[pivot * n + k]) <= tol * scale) return false;
    if (pivot != k)
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[pivot * n + j]);
    for (int i = k + 1; i < n; ++i) {
      const Scalar f = a[i * n + k] / a[k * n + k];
      for (int j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return true;
}

Scalar determinant(std::vector<Scalar> a, int n) {
  Scalar det(1.0);
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[pivot * n + k])) pivot = i;
    if (a[pivot * n + k] == Scalar(0.0)) return Scalar(0.0);
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[pivot * n + j]);
      det = -det;
    }
    det *= a[k * n + k];
    for (int i = k + 1; i < n; ++i) {
      const Scalar f = a[i * n + k] / a[k * n + k];
      for (int j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

Tensor unit_tensor(int order, int dim) {
  Tensor t(order, dim);
  std::size_t stride = 0;  // offset step between (i,...,i) and (i+1,...,i+1)
  for (int k = 0; k < order; ++k) stride = stride * dim + 1;
  for (int i = 0; i < dim; ++i) t[i * stride] = 1.0;
  return t;
}

Matrix majorization_matrix(const Tensor& a) {
  if (a.order() < 2) {
    throw Error(Errc::kInvalidOrder, "majorization matrix needs order >= 2");
  }
  const int n = a.dim();
  Matrix m(n);
  Index index(a.order());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      index[0] = i;
      std::fill(index.begin() + 1, index.end(), j);
      m(i, j) = a[a.offset_of(index)];
    }
  return m;
}

Tensor zero_pattern(const Tensor& a) {
  Tensor z(a.order(), a.dim());
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != Scalar(0.0)) z[k] = 1.0;
  return z;
}

std::size_t nnz(const Tensor& a) {
  return static_cast<std::size_t>(std::count_if(
      a.entries().begin(), a.entries().end(),
      [](const Scalar& v) { return v != Scalar(0.0); }));
}

Tensor clean(const Tensor& a, double epsilon) {
  Tensor out = a;
  for (Scalar& v : out.entries())
    if (std::abs(v) < epsilon) v = 0.0;
  return out;
}

namespace {

void require_order2(const Tensor& a, const char* what) {
  if (a.order() < 2) {
    throw Error(Errc::kInvalidOrder, std::string(what) + " needs order >= 2");
  }
}

// True iff every nonzero entry's index satisfies `keep`.
template <typename Pred>
bool nonzeros_satisfy(const Tensor& a, Pred keep) {
  Index index(a.order(), 0);
  std::size_t offset = 0;
  do {
    if (a[offset] != Scalar(0.0) && !keep(index)) return false;
    ++offset;
  } while (next_index(index, a.dim()));
  return true;
}

}  // namespace

bool is_upper_triangular(const Tensor& a) {
  require_order2(a, "is_upper_triangular");
  return nonzeros_satisfy(a, [](const Index& idx) {
    return *std::min_element(idx.begin() + 1, idx.end()) >= idx[0];
  });
}

bool is_lower_triangular(const Tensor& a) {
  require_order2(a, "is_lower_triangular");
  return nonzeros_satisfy(a, [](const Index& idx) {
    return *std::max_element(idx.begin() + 1, idx.end()) <= idx[0];
  });
}

bool is_diagonal(const Tensor& a) {
  require_order2(a, "is_diagonal");
  return nonzeros_satisfy(a, [](const Index& idx) {
    return std::all_of(idx.begin(), idx.end(), [&](int i) { return i == idx[0]; });
  });
}

namespace {
void require_same_shape(const Tensor& a, const Tensor& b) {
  if (a.order() != b.order() || a.dim() != b.dim()) {
    throw Error(Errc::kShapeMismatch, "tensors have different shapes");
  }
}
}  // namespace

double max_abs_diff(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

Tensor operator+(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b);
  Tensor out = a;
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += b[k];
  return out;
}

Tensor operator*(Scalar c, const Tensor& a) {
  Tensor out = a;
  for (Scalar& v : out.entries()) v *= c;
  return out;
}

}  // namespace tsim
