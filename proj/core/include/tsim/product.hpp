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

#ifndef TSIM_PRODUCT_HPP_
#define TSIM_PRODUCT_HPP_

#include <span>
#include <vector>

#include "tsim/tensor.hpp"

namespace tsim {

// General product of an order-m tensor A (m >= 2) with an order-k tensor B
// (k >= 1) of the same dimension n. The result has order (m-1)(k-1)+1 and
//
//   D[i, a1, ..., a_{m-1}] = sum_{i2..im} A[i, i2, ..., im]
//                                          * B[i2, a1] * ... * B[im, a_{m-1}]
//
// where every a_t ranges over [n]^{k-1}. Each output entry is accumulated in
// lexicographic order of (i2, ..., im) with no compensation, so results are
// bit-reproducible. There is no sparsity shortcut.
//
// Throws kDimensionMismatch if the dimensions differ, kInvalidOrder if
// A.order() < 2, kSizeLimit if the result would be too large.
Tensor general_product(const Tensor& a, const Tensor& b);

// P A: order of A is preserved.
Tensor left_matrix_product(const Matrix& p, const Tensor& a);
// A Q: order of A is preserved.
Tensor right_matrix_product(const Tensor& a, const Matrix& q);

// (A x^{m-1})_i = sum a_{i i2..im} x_{i2} ... x_{im}.
std::vector<Scalar> apply_to_vector(const Tensor& a, std::span<const Scalar> x);

}  // namespace tsim

#endif  // TSIM_PRODUCT_HPP_
