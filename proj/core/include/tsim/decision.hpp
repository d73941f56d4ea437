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

#ifndef TSIM_DECISION_HPP_
#define TSIM_DECISION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsim/similarity.hpp"
#include "tsim/tensor.hpp"

namespace tsim {

inline constexpr double kDecisionTolerance = 1e-8;
inline constexpr int kMaxTriangularSearchDim = 10;
inline constexpr int kMaxCanonicalHashDim = 8;

// Relabeling convention used throughout this header: a "pattern permutation"
// sigma maps B-labels to A-labels, B[i1..im] ~ A[sigma(i1)..sigma(im)], i.e.
// B = permutation_transform(C, sigma). The structured witness of such a pair
// carries sigma^{-1}.

// One multiplicative equation on the diagonal unknowns d_0..d_{n-1}:
//   prod_j d_j^{exponents[j]} = rhs.
struct DiagonalConstraint {
  std::vector<int> exponents;
  Scalar rhs;
  Index position;  // B-space position that produced it, 0-based
};

// The system obtained from every nonzero position i of B under a pattern
// permutation sigma: d_{sigma(i1)}^{1-m} d_{sigma(i2)} ... d_{sigma(im)} =
// b_i / a_{sigma(i)}. Exponent vectors always sum to zero, which is why a
// common scalar factor of d is never determined.
class PatternConstraintGraph {
 public:
  // Throws kShapeMismatch unless A and B share order and dimension. Positions
  // where b is nonzero but a_{sigma(i)} is zero are skipped; callers check the
  // patterns first.
  PatternConstraintGraph(const Tensor& a, const Tensor& b, const Permutation& sigma);

  int unknowns() const noexcept { return unknowns_; }
  const std::vector<DiagonalConstraint>& constraints() const noexcept {
    return constraints_;
  }
  // Connected components of the unknowns, linked when they co-occur in a
  // constraint. Unknowns in no constraint form singleton components.
  std::vector<std::vector<int>> components() const;

 private:
  int unknowns_;
  std::vector<DiagonalConstraint> constraints_;
};

// Resumable backtracking enumeration of pattern permutations, produced in
// lexicographic order of sigma. Candidates are pruned on two per-vertex
// counts (nonzeros led by the vertex, nonzero slots among trailing indices)
// and on every fully-assigned sub-block of the pattern.
class PatternMatcher {
 public:
  // Nonzero entries are taken as pattern ones, so raw tensors are accepted.
  PatternMatcher(const Tensor& za, const Tensor& zb);

  std::optional<Permutation> next();

 private:
  bool consistent(int depth) const;

  Tensor za_;
  Tensor zb_;
  int n_ = 0;
  int m_ = 0;
  std::vector<long> head_a_, tail_a_, head_b_, tail_b_;
  std::vector<int> sigma_;
  std::vector<int> cursor_;
  std::vector<bool> used_;
  int depth_ = 0;
  bool exhausted_ = false;
};

// All pattern permutations, lexicographically sorted.
std::vector<Permutation> pattern_permutations(const Tensor& za, const Tensor& zb);

struct DiagonalSolve {
  DiagonalScaling d;
  bool unconstrained = false;  // no constraint at all: every D works
  double residual = 0.0;       // max relative error over nonzero entries of B
};

// Finds D with B = permutation_transform(D^{1-m} A D, sigma) within `tol`
// relative on every nonzero entry of B, or nothing. The multiplicative system
// is brought to echelon form over the integers, carrying right-hand sides
// along as products of integer powers, and is then back-substituted with
// principal roots. A lattice basis of the exponent rows is kept, so any
// root choice satisfies every original equation whenever the system is
// consistent. The returned candidate is always checked against the full
// reconstruction; that check decides the result. Free unknowns (one per
// connected component at least) are pinned to 1.
//
// Throws kInvalidOrder for order < 3 and kShapeMismatch on shape mismatch.
std::optional<DiagonalSolve> solve_diagonal(const Tensor& a, const Tensor& b,
                                            const Permutation& sigma,
                                            double tol = kDecisionTolerance);

// First (in lexicographic order of the pattern permutation) structured
// witness s with general_transform(a, compose_witness(s)) = b, measured as
// max |x - b| / max(1, |b|) elementwise, within `tol`. Inputs must already be
// cleaned of floating noise. Throws kInvalidOrder for order < 3 and
// kShapeMismatch on shape mismatch.
std::optional<StructuredWitness> decide_similar(const Tensor& a, const Tensor& b,
                                                double tol = kDecisionTolerance);

// max |x - y| / max(1, |y|) over all entries.
double elementwise_relative_error(const Tensor& x, const Tensor& y);

// Lexicographically first sigma for which permutation_transform(Z(a), sigma)
// is upper triangular; nothing certifies that no tensor similar to `a` is
// upper triangular. Throws kInvalidOrder (order < 3) and kSearchTooLarge
// (dim > 10).
std::optional<Permutation> triangularizable_pattern(const Tensor& a);

struct RelabelingCheck {
  Permutation sigma;
  std::optional<Index> first_violation;  // 0-based, in the relabeled tensor
};

// Every sigma in S_n with the first entry of the relabeled pattern breaking
// upper triangularity. Exhaustive; throws kSearchTooLarge for dim > 8.
std::vector<RelabelingCheck> triangularity_certificate(const Tensor& a);

struct InvariantReport {
  int order = 0;
  int dim = 0;
  std::size_t nnz = 0;
  std::optional<std::string> pattern_hash;  // omitted for dim > 8
  bool diagonal = false;
  std::optional<bool> triangularizable;     // omitted for order < 3 or dim > 10

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

// Quantities preserved by similarity for order >= 3. The pattern hash is the
// FNV-1a digest of the lexicographically smallest relabeling of Z(a).
// Throws kInvalidOrder for order < 2.
InvariantReport similarity_invariants(const Tensor& a);

// Lexicographically smallest 0/1 encoding of Z(a) over all relabelings.
std::vector<std::uint8_t> canonical_pattern(const Tensor& a);

}  // namespace tsim

#endif  // TSIM_DECISION_HPP_
