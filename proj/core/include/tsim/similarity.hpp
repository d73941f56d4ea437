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

#ifndef TSIM_SIMILARITY_HPP_
#define TSIM_SIMILARITY_HPP_

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "tsim/tensor.hpp"

namespace tsim {

// Default thresholds. `structural` is the magnitude below which an entry of a
// computed matrix counts as zero and the elementwise slack of the unit
// preservation check; `compare` bounds the scaled elementwise error of
// equality checks between two computed objects.
struct Tolerances {
  double structural = 1e-10;
  double compare = 1e-9;
};

// Bijection on {0, ..., n-1}. Realized as the matrix R with R(i, sigma(i)) = 1.
class Permutation {
 public:
  Permutation() = default;
  // Throws kInvalidPermutation unless `image` is a bijection on [0, n).
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int n);
  // Image list written with 1-based labels.
  static Permutation from_one_based(std::span<const int> image);

  int size() const noexcept { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[i]; }
  std::span<const int> image() const noexcept { return image_; }
  std::vector<int> one_based() const;

  Permutation inverse() const;
  bool is_identity() const;
  Matrix matrix() const;

  // (s * t)(i) = s(t(i)).
  friend Permutation operator*(const Permutation& s, const Permutation& t);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

// diag(d_1, ..., d_n) with every |d_i| > 1e-300.
class DiagonalScaling {
 public:
  DiagonalScaling() = default;
  // Throws kZeroDiagonal if some entry is (numerically) zero.
  explicit DiagonalScaling(std::vector<Scalar> values);

  static DiagonalScaling identity(int n);
  static DiagonalScaling uniform(int n, Scalar c);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  const Scalar& operator[](int i) const { return values_[i]; }
  std::span<const Scalar> values() const noexcept { return values_; }

  Matrix matrix() const { return power(1); }
  // D^t, entries raised by repeated multiplication.
  Matrix power(int t) const;

  friend DiagonalScaling operator*(const DiagonalScaling& a,
                                   const DiagonalScaling& b);
  friend bool operator==(const DiagonalScaling&, const DiagonalScaling&) = default;

 private:
  std::vector<Scalar> values_;
};

// A pair (P, Q) claimed to satisfy P I Q = I for the unit tensor of `order`.
struct Witness {
  Matrix p;
  Matrix q;
  int order = 0;
};

// Canonical form of a unit-preserving pair for order >= 3:
// Q = D R_sigma and P = R_sigma^T D^{1-m}.
struct StructuredWitness {
  Permutation sigma;
  DiagonalScaling d;
  int order = 0;

  friend bool operator==(const StructuredWitness&,
                         const StructuredWitness&) = default;
};

// P (I Q) == I elementwise within `tol`. Throws kShapeMismatch or
// kInvalidOrder (order < 2).
bool check_unit_preserving(const Witness& w, double tol = Tolerances{}.structural);

// (P, Q) = (R^T D^{1-m}, D R). Throws kInvalidOrder for order < 3, where a
// unit-preserving pair need not factor this way.
Witness compose_witness(const StructuredWitness& s);

// Reads sigma and D off Q (the unique entry above tol.structural in each row),
// then verifies P against R^T D^{1-m}; P is never repaired.
//
// Throws kInvalidOrder (order < 3), kShapeMismatch, kNotUnitPreserving,
// kMalformedWitness (a row of Q without exactly one structural entry, or
// sigma not a bijection), kWitnessMismatch (P disagrees with the form implied
// by Q).
StructuredWitness decompose_witness(const Witness& w, const Tolerances& tol = {});

// For A = I Q: (i) entries whose trailing indices are not all equal vanish,
// (ii) P M(A) = I. Both checks are evaluated even when the pair is not unit
// preserving, so failing witnesses produce a useful report.
struct Lemma21Report {
  bool unit_preserving = false;
  bool tail_check = false;
  std::optional<Index> first_tail_violation;  // 0-based
  double max_tail_entry = 0.0;
  bool left_inverse_check = false;
  double left_inverse_error = 0.0;

  bool passed() const { return tail_check && left_inverse_check; }
};
Lemma21Report verify_lemma21(const Witness& w, double tol = Tolerances{}.structural);

// B = R_sigma A R_sigma^T, i.e. B[i1..im] = A[sigma(i1)..sigma(im)].
Tensor permutation_transform(const Tensor& a, const Permutation& sigma);

// B = D^{1-m} A D, i.e. B[i1..im] = A[i1..im] d_{i1}^{1-m} d_{i2} ... d_{im}.
// Exponents are accumulated per distinct value of d before any power is
// taken, so any scalar gauge D = cI returns A bit for bit and diagonal
// entries of A are never touched.
Tensor diagonal_transform(const Tensor& a, const DiagonalScaling& d);

// R_sigma^T (D^{1-m} A D) R_sigma via the closed forms; equals
// general_transform(a, compose_witness(s)) up to rounding.
Tensor structured_transform(const Tensor& a, const StructuredWitness& s);

// B = P (A Q). For order >= 3 the witness must be unit preserving; for
// order 2 it must satisfy P Q = I. Throws kNotUnitPreserving otherwise.
Tensor general_transform(const Tensor& a, const Witness& w,
                         double tol = Tolerances{}.structural);

struct Factorization {
  Tensor c;  // D^{1-m} A D
  Permutation sigma;
  DiagonalScaling d;
};

// Splits a similarity into its diagonal and permutational parts, so that
// general_transform(a, w) = R_sigma^T C R_sigma. Errors as decompose_witness.
Factorization factor_similarity(const Tensor& a, const Witness& w,
                                const Tolerances& tol = {});

struct WitnessProducts {
  Matrix qp;
  Matrix pq;
};

// For order >= 3 both products are diagonal, QP = D^{2-m} and
// PQ = R^T D^{2-m} R; the first identity is verified against the decomposed D.
// Order-2 witnesses are returned as computed (an inverse pair gives I, I).
WitnessProducts witness_products(const Witness& w, const Tolerances& tol = {});

// max |x - y| / max(1, max |y|) over matching entries.
double scaled_difference(const Tensor& x, const Tensor& y);

}  // namespace tsim

#endif  // TSIM_SIMILARITY_HPP_
