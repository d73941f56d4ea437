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

#include <gtest/gtest.h>

#include "support/gtest_helpers.hpp"
#include "support/test_support.hpp"
#include "tsim/tsim.hpp"

namespace tsim {
namespace {

using testing::expect_code;
using testing::Poly;
using testing::Rng;

double coeff_error(const CharPoly& got, const Poly& expected) {
  // Scale free: both sides are divided by the coefficient at the same pivot.
  return char_poly_distance(got, CharPoly{expected, false});
}

Tensor diagonal_tensor(int order, const std::vector<Scalar>& d) {
  Tensor t(order, static_cast<int>(d.size()));
  for (int i = 0; i < static_cast<int>(d.size()); ++i) t.at(Index(order, i)) = d[i];
  return t;
}

Tensor random_dim2(Rng& rng, int order) { return rng.dense_tensor(order, 2); }

TEST(CharPoly, UnitTensorIsLambdaMinusOneToTheFourth) {
  const CharPoly p = char_poly_dim2(unit_tensor(3, 2));
  EXPECT_EQ(p.degree(), 4);
  EXPECT_TRUE(p.normalized);
  const Poly expected = testing::poly_pow(Poly{-1.0, 1.0}, 4);
  EXPECT_LE(coeff_error(p, expected), 1e-12);
}

TEST(CharPoly, DiagonalTensorFactors) {
  const CharPoly p = char_poly_dim2(diagonal_tensor(3, {2.0, 3.0}));
  const Poly expected = testing::diagonal_char_poly({2.0, 3.0}, 3);
  EXPECT_LE(coeff_error(p, expected), 1e-12);
}

TEST(CharPoly, ZeroTensorIsLambdaToTheFourth) {
  const CharPoly p = char_poly_dim2(Tensor(3, 2));
  for (int k = 0; k < 4; ++k) EXPECT_LE(std::abs(p.coeffs[k]), 1e-14) << k;
  EXPECT_LE(std::abs(p.coeffs[4] - Scalar(1.0)), 1e-14);
}

TEST(CharPoly, MatrixCaseIsTheUsualCharacteristicPolynomial) {
  const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  const CharPoly p = char_poly_dim2(a);
  ASSERT_EQ(p.degree(), 2);
  // lambda^2 - 5 lambda - 2
  EXPECT_LE(coeff_error(p, Poly{-2.0, -5.0, 1.0}), 1e-12);
}

TEST(CharPoly, MatchesSymbolicResultantForOrderThree) {
  Rng rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const Tensor a = random_dim2(rng, 3);
    EXPECT_LE(coeff_error(char_poly_dim2(a), testing::order3_char_poly(a)), 1e-9)
        << "trial " << trial;
  }
}

TEST(CharPoly, DegreeIsTwiceOrderMinusOne) {
  Rng rng(72);
  for (int m = 3; m <= 5; ++m)
    for (int trial = 0; trial < 10; ++trial) {
      const CharPoly p = char_poly_dim2(random_dim2(rng, m));
      EXPECT_EQ(p.degree(), 2 * (m - 1));
      EXPECT_EQ(p.coeffs.size(), static_cast<std::size_t>(2 * m - 1));
      EXPECT_NE(p.coeffs.back(), Scalar(0.0));
    }
}

TEST(CharPoly, InterpolantAgreesWithDirectDeterminantAtFreshPoints) {
  Rng rng(73);
  for (int m = 3; m <= 5; ++m)
    for (int trial = 0; trial < 10; ++trial) {
      const Tensor a = random_dim2(rng, m);
      const CharPoly p = char_poly_dim2(a);
      for (int s = 0; s < 5; ++s) {
        const Scalar lambda = rng.gaussian() * 3.0;
        const Scalar direct = testing::oracle_determinant(testing::oracle_sylvester(a, lambda),
                                                          2 * (m - 1));
        const Scalar through_lib = resultant_at(a, lambda);
        const double scale = std::max(1.0, std::abs(direct));
        EXPECT_LE(std::abs(p(lambda) - direct) / scale, 1e-7);
        EXPECT_LE(std::abs(through_lib - direct) / scale, 1e-10);
      }
    }
}

TEST(CharPoly, InvariantUnderSimilarity) {
  Rng rng(74);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = rng.integer(3, 4);
    const Tensor a = random_dim2(rng, m);
    const Tensor b = general_transform(a, compose_witness(rng.structured_witness(2, m)));
    const CharPoly pa = char_poly_dim2(a).scaled_by_largest();
    const CharPoly pb = char_poly_dim2(b).scaled_by_largest();
    EXPECT_LE(testing::max_rel_diff(Tensor(1, static_cast<int>(pa.coeffs.size()), pa.coeffs),
                                    Tensor(1, static_cast<int>(pb.coeffs.size()), pb.coeffs)),
              1e-7)
        << "trial " << trial;
  }
}

TEST(CharPoly, Errors) {
  expect_code(Errc::kUnsupportedDimension, [] { char_poly_dim2(Tensor(3, 3)); });
  expect_code(Errc::kUnsupportedDimension, [] { spectrum_dim2(Tensor(4, 1)); });
  expect_code(Errc::kInvalidOrder, [] { char_poly_dim2(Tensor(1, 2)); });
}

TEST(CharPolyDistance, ScaleFreeComparison) {
  const CharPoly p{{1.0, 2.0, 4.0}, false};
  const CharPoly q{{-0.5, -1.0, -2.0}, false};
  EXPECT_LE(char_poly_distance(p, q), 1e-15);
  const CharPoly r{{1.0, 2.0}, false};
  EXPECT_TRUE(std::isinf(char_poly_distance(p, r)));
}

TEST(Spectrum, Examples) {
  const Spectrum unit = spectrum_dim2(unit_tensor(3, 2));
  ASSERT_EQ(unit.roots.size(), 4u);
  for (const Scalar& r : unit.roots) EXPECT_LE(std::abs(r - Scalar(1.0)), 1e-8);

  const Spectrum diag = spectrum_dim2(diagonal_tensor(3, {2.0, 3.0}));
  const std::vector<Scalar> want{2.0, 2.0, 3.0, 3.0};
  EXPECT_TRUE(match_spectra(diag.roots, want, 1e-8).matched);

  const Spectrum zero = spectrum_dim2(Tensor(3, 2));
  EXPECT_FALSE(zero.degenerate);
  ASSERT_EQ(zero.roots.size(), 4u);
  for (const Scalar& r : zero.roots) EXPECT_LE(std::abs(r), 1e-8);
}

TEST(Spectrum, DiagonalGroundTruth) {
  Rng rng(75);
  for (int m = 3; m <= 5; ++m)
    for (int trial = 0; trial < 15; ++trial) {
      const std::vector<Scalar> d{rng.gaussian() * 2.0, rng.gaussian() * 2.0};
      const Spectrum s = spectrum_dim2(diagonal_tensor(m, d));
      std::vector<Scalar> want;
      for (int k = 0; k < m - 1; ++k) want.insert(want.end(), d.begin(), d.end());
      const SpectrumMatch match = match_spectra(s.roots, want, 1e-8);
      EXPECT_TRUE(match.matched) << "m=" << m << " max distance " << match.max_distance;
    }
}

TEST(Spectrum, SortedCanonically) {
  Rng rng(76);
  const Spectrum s = spectrum_dim2(random_dim2(rng, 4));
  EXPECT_TRUE(std::is_sorted(s.roots.begin(), s.roots.end(), [](Scalar x, Scalar y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  }));
}

TEST(Spectrum, RootsAnnihilateTheDeterminant) {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = rng.integer(3, 5);
    const Tensor a = random_dim2(rng, m);
    const CharPoly p = char_poly_dim2(a);
    double scale = 0.0;
    for (const Scalar& c : p.coeffs) scale = std::max(scale, std::abs(c));
    for (const Scalar& r : spectrum_dim2(a).roots) {
      const double lift = std::pow(std::max(1.0, std::abs(r)), p.degree());
      EXPECT_LE(std::abs(p(r)) / (scale * lift), 1e-9);
    }
  }
}

TEST(Spectrum, SimilarTensorsShareSpectra) {
  Rng rng(78);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = rng.integer(3, 4);
    const Tensor a = random_dim2(rng, m);
    const Tensor b = general_transform(a, compose_witness(rng.structured_witness(2, m, 0.5, 2.0)));
    const SpectrumMatch match = match_spectra(spectrum_dim2(a).roots, spectrum_dim2(b).roots);
    EXPECT_TRUE(match.matched) << "trial " << trial << " max distance " << match.max_distance;
  }
}

TEST(EigenResidual, Examples) {
  const std::vector<Scalar> ones{1.0, 1.0};
  EXPECT_EQ(eigen_residual(unit_tensor(3, 2), 1.0, ones), 0.0);
  const std::vector<Scalar> e1{1.0, 0.0};
  EXPECT_EQ(eigen_residual(diagonal_tensor(3, {2.0, 3.0}), 2.0, e1), 0.0);
  const std::vector<Scalar> zero{0.0, 0.0};
  expect_code(Errc::kZeroVector, [&] { eigen_residual(unit_tensor(3, 2), 1.0, zero); });
}

TEST(EigenResidual, RecoveredEigenvectorsSatisfyTheEquation) {
  Rng rng(79);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = rng.integer(3, 4);
    const Tensor a = random_dim2(rng, m);
    for (const Scalar& lambda : spectrum_dim2(a).roots) {
      const std::vector<Scalar> x = eigenvector_dim2(a, lambda);
      ASSERT_EQ(x.size(), 2u);
      EXPECT_GT(std::max(std::abs(x[0]), std::abs(x[1])), 0.5);
      EXPECT_LT(eigen_residual(a, lambda, x), 1e-6) << "trial " << trial;
    }
  }
}

TEST(MatchSpectra, Behaviour) {
  const std::vector<Scalar> a{1.0, Scalar(0.0, 1.0), 2.0};
  const std::vector<Scalar> b{2.0, 1.0 + 1e-9, Scalar(0.0, 1.0)};
  const SpectrumMatch ok = match_spectra(a, b);
  EXPECT_TRUE(ok.matched);
  EXPECT_LE(ok.max_distance, 2e-9);
  const std::vector<Scalar> c{2.0, 1.1, Scalar(0.0, 1.0)};
  EXPECT_FALSE(match_spectra(a, c).matched);
  const std::vector<Scalar> d{2.0, 1.0};
  EXPECT_FALSE(match_spectra(a, d).matched);
}

TEST(PolynomialRoots, RepeatedRootsCollapse) {
  // (z - 1)^3 (z + 2)
  const Poly p = testing::poly_mul(testing::poly_pow(Poly{-1.0, 1.0}, 3), Poly{2.0, 1.0});
  const std::vector<Scalar> roots = polynomial_roots(p);
  const std::vector<Scalar> want{-2.0, 1.0, 1.0, 1.0};
  EXPECT_TRUE(match_spectra(roots, want, 1e-8).matched);
}

}  // namespace
}  // namespace tsim
