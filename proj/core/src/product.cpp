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

#include "tsim/product.hpp"

#include <algorithm>
#include <string>

#include "tsim/error.hpp"

namespace tsim {

namespace {

std::size_t ipow_size(std::size_t base, int exponent) {
  std::size_t r = 1;
  for (int t = 0; t < exponent; ++t) r *= base;
  return r;
}

}  // namespace

Tensor general_product(const Tensor& a, const Tensor& b) {
  if (a.order() < 2) {
    throw Error(Errc::kInvalidOrder,
                "general product needs the left factor to have order >= 2");
  }
  if (b.order() < 1) {
    throw Error(Errc::kInvalidOrder, "general product needs a right factor");
  }
  if (a.dim() != b.dim()) {
    throw Error(Errc::kDimensionMismatch,
                "general product of dimension " + std::to_string(a.dim()) +
                    " and " + std::to_string(b.dim()));
  }
  const int n = a.dim();
  const int m = a.order();
  const int k = b.order();
  const int tail = m - 1;
  Tensor d((m - 1) * (k - 1) + 1, n);

  // Contract the trailing slots of A one at a time. Before slot s the buffer
  // has shape [n * group^s] x [n] x [n^(tail-1-s)]; the middle axis is
  // replaced by the [n]^{k-1} group of B.
  const std::size_t group = ipow_size(n, k - 1);
  std::vector<Scalar> cur(a.entries().begin(), a.entries().end());
  std::vector<Scalar> next;
  std::size_t outer = n;
  for (int s = 0; s < tail; ++s) {
    const std::size_t inner = ipow_size(n, tail - 1 - s);
    next.assign(outer * group * inner, Scalar(0.0));
    for (std::size_t o = 0; o < outer; ++o) {
      for (int x = 0; x < n; ++x) {
        const Scalar* src = cur.data() + (o * n + x) * inner;
        const Scalar* b_row = b.entries().data() + static_cast<std::size_t>(x) * group;
        for (std::size_t g = 0; g < group; ++g) {
          const Scalar c = b_row[g];
          if (c == Scalar(0.0)) continue;
          Scalar* dst = next.data() + (o * group + g) * inner;
          for (std::size_t r = 0; r < inner; ++r) dst[r] += src[r] * c;
        }
      }
    }
    cur.swap(next);
    outer *= group;
  }
  std::copy(cur.begin(), cur.end(), d.entries().begin());
  return d;
}

Tensor left_matrix_product(const Matrix& p, const Tensor& a) {
  return general_product(p.tensor(), a);
}

Tensor right_matrix_product(const Tensor& a, const Matrix& q) {
  return general_product(a, q.tensor());
}

std::vector<Scalar> apply_to_vector(const Tensor& a, std::span<const Scalar> x) {
  if (x.size() != static_cast<std::size_t>(a.dim())) {
    throw Error(Errc::kDimensionMismatch,
                "vector length " + std::to_string(x.size()) +
                    " does not match tensor dimension " + std::to_string(a.dim()));
  }
  const Tensor v(1, a.dim(), std::vector<Scalar>(x.begin(), x.end()));
  const Tensor y = general_product(a, v);
  return {y.entries().begin(), y.entries().end()};
}

}  // namespace tsim
