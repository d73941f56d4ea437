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

#ifndef TSIM_TENSOR_HPP_
#define TSIM_TENSOR_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tsim {

using Scalar = std::complex<double>;

// Multi-indices are 0-based in the C++ API. File formats and the CLI use
// 1-based indices; the conversion happens in io.cpp and the CLI only.
using Index = std::vector<int>;

inline constexpr std::size_t kDefaultEntryLimit = 100'000'000;
inline constexpr double kDefaultCleanEpsilon = 1e-12;

// Dense order-m, dimension-n complex tensor. Entries are stored row-major with
// the first index most significant, so entry (i1, ..., im) lives at offset
// ((i1 * n + i2) * n + ...) + im.
class Tensor {
 public:
  Tensor() = default;
  // Zero tensor. Throws kInvalidOrder for order < 1 or dim < 1 and kSizeLimit
  // when dim^order exceeds `entry_limit`.
  Tensor(int order, int dim, std::size_t entry_limit = kDefaultEntryLimit);
  Tensor(int order, int dim, std::vector<Scalar> entries,
         std::size_t entry_limit = kDefaultEntryLimit);

  int order() const noexcept { return order_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return entries_.size(); }

  std::span<const Scalar> entries() const noexcept { return entries_; }
  std::span<Scalar> entries() noexcept { return entries_; }

  const Scalar& operator[](std::size_t offset) const { return entries_[offset]; }
  Scalar& operator[](std::size_t offset) { return entries_[offset]; }

  const Scalar& at(std::span<const int> index) const;
  Scalar& at(std::span<const int> index);
  const Scalar& at(std::initializer_list<int> index) const {
    return at(std::span<const int>(index.begin(), index.size()));
  }
  Scalar& at(std::initializer_list<int> index) {
    return at(std::span<const int>(index.begin(), index.size()));
  }

  // Unchecked linearization helpers.
  std::size_t offset_of(std::span<const int> index) const noexcept;
  void index_of(std::size_t offset, std::span<int> index) const noexcept;
  Index index_of(std::size_t offset) const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  void check_index(std::span<const int> index) const;

  int order_ = 0;
  int dim_ = 0;
  std::vector<Scalar> entries_;
};

// dim^order, or kSizeLimit if the count does not fit under `entry_limit`.
std::size_t checked_entry_count(int order, int dim,
                                std::size_t entry_limit = kDefaultEntryLimit);

// Odometer step over [0, dim)^k with the last position fastest. Returns false
// after wrapping back to all zeros.
inline bool next_index(std::span<int> index, int dim) noexcept {
  for (std::size_t t = index.size(); t-- > 0;) {
    if (++index[t] < dim) return true;
    index[t] = 0;
  }
  return false;
}

// Integer power by repeated multiplication; negative exponents multiply the
// reciprocal. No log/exp, so there is no branch-cut ambiguity.
Scalar ipow(Scalar base, int exponent);

// Square complex matrix, stored as an order-2 tensor.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : tensor_(2, n) {}
  // Throws kInvalidOrder unless `tensor` has order 2.
  explicit Matrix(Tensor tensor);

  static Matrix identity(int n);
  static Matrix diagonal(std::span<const Scalar> diag);
  static Matrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows);

  int dim() const noexcept { return tensor_.dim(); }

  const Scalar& operator()(int i, int j) const {
    return tensor_[static_cast<std::size_t>(i) * dim() + j];
  }
  Scalar& operator()(int i, int j) {
    return tensor_[static_cast<std::size_t>(i) * dim() + j];
  }

  const Tensor& tensor() const noexcept { return tensor_; }
  operator const Tensor&() const noexcept { return tensor_; }

  std::vector<Scalar> row(int i) const;
  std::vector<Scalar> column(int j) const;

  Matrix transpose() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  bool is_permutation() const;
  bool is_diagonal_matrix() const;
  // Exactly one entry with magnitude above `tol` in every row and column.
  bool is_generalized_permutation(double tol = 0.0) const;
  // Smallest pivot of partially pivoted LU, relative to the largest entry,
  // exceeds `tol`.
  bool is_invertible(double tol = 1e-12) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  Tensor tensor_;
};

// LU determinant with partial pivoting; `a` is row-major n x n.
Scalar determinant(std::vector<Scalar> a, int n);

Tensor unit_tensor(int order, int dim);

// (M(A))_{ij} = a_{ij...j}. Throws kInvalidOrder for order < 2.
Matrix majorization_matrix(const Tensor& a);

// 1 where the stored entry is nonzero (exact comparison), else 0.
Tensor zero_pattern(const Tensor& a);
std::size_t nnz(const Tensor& a);

// Zeroes every entry with magnitude below `epsilon`. Computed tensors go
// through this before any pattern query.
Tensor clean(const Tensor& a, double epsilon = kDefaultCleanEpsilon);

// Triangularity follows the min/max-of-trailing-indices convention: upper
// triangular means a_{i1...im} = 0 whenever min(i2..im) < i1, lower means
// zero whenever max(i2..im) > i1. All three require order >= 2.
bool is_upper_triangular(const Tensor& a);
bool is_lower_triangular(const Tensor& a);
bool is_diagonal(const Tensor& a);

// Largest elementwise |a - b|. Throws kShapeMismatch on differing shapes.
double max_abs_diff(const Tensor& a, const Tensor& b);

Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator*(Scalar c, const Tensor& a);

}  // namespace tsim

#endif  // TSIM_TENSOR_HPP_
