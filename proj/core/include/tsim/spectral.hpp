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

#ifndef TSIM_SPECTRAL_HPP_
#define TSIM_SPECTRAL_HPP_

#include <span>
#include <vector>

#include "tsim/tensor.hpp"

namespace tsim {

// Characteristic polynomial of a dimension-2 tensor of order m: the resultant
// of the binary forms (A x^{m-1})_i - lambda x_i^{m-1}, i = 1, 2. Its degree is
// 2(m-1) and its leading coefficient is 1 for every tensor.
struct CharPoly {
  std::vector<Scalar> coeffs;  // lowest degree first
  bool normalized = false;     // leading coefficient scaled to 1

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Scalar operator()(Scalar lambda) const;
  // Divided by the coefficient of largest magnitude.
  CharPoly scaled_by_largest() const;
};

// Sylvester determinant of the two eigen-equation forms at a fixed lambda.
// Throws kUnsupportedDimension unless dim == 2, kInvalidOrder for order < 2.
Scalar resultant_at(const Tensor& a, Scalar lambda);

// The tensor is first balanced by an exact power-of-two diagonal similarity
// (which leaves the polynomial unchanged), then the resultant is sampled at
// 2m-1 points on the circle |lambda| = 1 + max|entry| and interpolated.
// Order 2 yields the ordinary matrix characteristic polynomial.
CharPoly char_poly_dim2(const Tensor& a);

struct Spectrum {
  std::vector<Scalar> roots;  // with multiplicity, sorted by (re, im)
  bool degenerate = false;    // polynomial identically zero
};

Spectrum spectrum_dim2(const Tensor& a);

// Roots of sum coeffs[i] z^i (lowest first, nonzero leading coefficient) as
// companion-matrix eigenvalues. Clusters that are numerically a single
// multiple root are collapsed onto it.
std::vector<Scalar> polynomial_roots(std::span<const Scalar> coeffs);

// || A x^{m-1} - lambda x^{[m-1]} ||_inf. Throws kZeroVector for x = 0.
double eigen_residual(const Tensor& a, Scalar lambda, std::span<const Scalar> x);

// Common projective root of the two eigen-equation forms at `lambda`,
// scaled to unit max-norm; the candidate with the smallest residual wins.
std::vector<Scalar> eigenvector_dim2(const Tensor& a, Scalar lambda);

struct SpectrumMatch {
  bool matched = false;
  double max_distance = 0.0;
  double total_cost = 0.0;
};

// Multiset comparison: greedy nearest matching over canonically sorted roots,
// accepted when every matched pair is within `tol`.
SpectrumMatch match_spectra(std::span<const Scalar> a, std::span<const Scalar> b,
                            double tol = 1e-6);

// Both polynomials are divided by their coefficients at the index where |p|
// is largest; returns the largest coefficient difference relative to that
// normalized scale (which is 1).
double char_poly_distance(const CharPoly& p, const CharPoly& q);

}  // namespace tsim

#endif  // TSIM_SPECTRAL_HPP_
