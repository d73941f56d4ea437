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

#include "tsim/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "tsim/error.hpp"
#include "tsim/product.hpp"

namespace tsim {

namespace {

void require_dim2(const Tensor& a) {
  if (a.dim() != 2) {
    throw Error(Errc::kUnsupportedDimension,
                "characteristic polynomials are only supported for dim 2 (got " +
                    std::to_string(a.dim()) + ")");
  }
  if (a.order() < 2) {
    throw Error(Errc::kInvalidOrder, "characteristic polynomial needs order >= 2");
  }
}

// Coefficients of (A x^{m-1})_i in the monomials x1^{d-k} x2^k, k = 0..d.
std::vector<std::vector<Scalar>> form_coefficients(const Tensor& a) {
  const int d = a.order() - 1;
  std::vector<std::vector<Scalar>> c(2, std::vector<Scalar>(d + 1));
  Index index(a.order(), 0);
  std::size_t offset = 0;
  do {
    const int k = static_cast<int>(std::count(index.begin() + 1, index.end(), 1));
    c[index[0]][k] += a[offset++];
  } while (next_index(index, 2));
  return c;
}

Scalar sylvester_determinant(const std::vector<std::vector<Scalar>>& forms,
                             Scalar lambda) {
  const int d = static_cast<int>(forms[0].size()) - 1;
  std::vector<Scalar> f = forms[0];
  std::vector<Scalar> g = forms[1];
  f[0] -= lambda;
  g[d] -= lambda;
  const int size = 2 * d;
  std::vector<Scalar> s(static_cast<std::size_t>(size) * size);
  for (int r = 0; r < d; ++r)
    for (int k = 0; k <= d; ++k) {
      s[r * size + r + k] = f[k];
      s[(d + r) * size + r + k] = g[k];
    }
  return determinant(std::move(s), size);
}

// Power-of-two diagonal similarity with d = (1, 2^t) minimizing the largest
// entry magnitude. Entry (i1, ...) scales by 2^{t w}, w = #(trailing 1s) minus
// (m-1) when i1 = 1, so the scaled tensor is exact.
Tensor balance_dim2(const Tensor& a) {
  const int m = a.order();
  struct Weighted {
    double log_mag;
    int weight;
  };
  // The virtual weight-0 line at 0 stands for lambda itself: scaling stops
  // once every entry is at most of order one.
  std::vector<Weighted> entries{{0.0, 0}};
  std::vector<int> weight(a.size());
  Index index(m, 0);
  std::size_t offset = 0;
  do {
    int w = static_cast<int>(std::count(index.begin() + 1, index.end(), 1));
    if (index[0] == 1) w -= m - 1;
    weight[offset] = w;
    const double mag = std::abs(a[offset]);
    if (mag > 0.0 && std::isfinite(mag)) entries.push_back({std::log2(mag), w});
    ++offset;
  } while (next_index(index, 2));

  auto objective = [&](int t) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Weighted& e : entries) worst = std::max(worst, e.log_mag + e.weight * t);
    return worst;
  };
  int best_t = 0;
  double best = objective(0);
  // The optimum of a max of lines in t lies where two of them cross.
  for (std::size_t x = 0; x < entries.size(); ++x)
    for (std::size_t y = x + 1; y < entries.size(); ++y) {
      if (entries[x].weight == entries[y].weight) continue;
      const double cross = (entries[y].log_mag - entries[x].log_mag) /
                           (entries[x].weight - entries[y].weight);
      if (!(std::abs(cross) < 1000.0)) continue;
      for (int t : {static_cast<int>(std::floor(cross)), static_cast<int>(std::ceil(cross))}) {
        const double value = objective(t);
        if (value < best || (value == best && std::abs(t) < std::abs(best_t))) {
          best = value;
          best_t = t;
        }
      }
    }
  Tensor out = a;
  if (best_t == 0) return out;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const int e = weight[k] * best_t;
    out[k] = Scalar(std::ldexp(a[k].real(), e), std::ldexp(a[k].imag(), e));
  }
  return out;
}

std::vector<Scalar> derivative(std::span<const Scalar> p) {
  if (p.size() <= 1) return {Scalar(0.0)};
  std::vector<Scalar> out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<double>(i);
  return out;
}

Scalar horner(std::span<const Scalar> p, Scalar z) {
  Scalar acc(0.0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
  return acc;
}

double horner_scale(std::span<const Scalar> p, double r) {
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * r + std::abs(p[i]);
  return acc;
}

bool root_order(const Scalar& x, const Scalar& y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

// Tests whether `group` is a perturbed k-fold root; on success returns the
// refined common value.
std::optional<Scalar> collapse_cluster(std::span<const Scalar> p,
                                       const std::vector<Scalar>& group) {
  const std::size_t k = group.size();
  Scalar c(0.0);
  for (const Scalar& z : group) c += z;
  c /= static_cast<double>(k);

  std::vector<std::vector<Scalar>> derivs{std::vector<Scalar>(p.begin(), p.end())};
  for (std::size_t j = 1; j <= k; ++j) derivs.push_back(derivative(derivs.back()));
  // c is a simple root of the (k-1)-th derivative.
  for (int iter = 0; iter < 30; ++iter) {
    const Scalar den = horner(derivs[k], c);
    if (den == Scalar(0.0)) break;
    const Scalar step = horner(derivs[k - 1], c) / den;
    c -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(c))) break;
  }
  for (std::size_t j = 0; j < k; ++j) {
    const double scale = horner_scale(derivs[j], std::abs(c));
    if (std::abs(horner(derivs[j], c)) > 1e-9 * std::max(scale, 1e-300)) {
      return std::nullopt;
    }
  }
  return c;
}

void resolve_clusters(std::span<const Scalar> p, std::vector<Scalar> roots,
                      double radius, std::vector<Scalar>& out) {
  // Single-linkage groups at the current radius.
  const std::size_t count = roots.size();
  std::vector<int> group(count, -1);
  int groups = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (group[i] >= 0) continue;
    group[i] = groups;
    std::vector<std::size_t> frontier{i};
    while (!frontier.empty()) {
      const std::size_t x = frontier.back();
      frontier.pop_back();
      for (std::size_t y = 0; y < count; ++y) {
        if (group[y] >= 0) continue;
        const double scale = std::max({1.0, std::abs(roots[x]), std::abs(roots[y])});
        if (std::abs(roots[x] - roots[y]) <= radius * scale) {
          group[y] = groups;
          frontier.push_back(y);
        }
      }
    }
    ++groups;
  }
  for (int g = 0; g < groups; ++g) {
    std::vector<Scalar> members;
    for (std::size_t i = 0; i < count; ++i)
      if (group[i] == g) members.push_back(roots[i]);
    if (members.size() == 1) {
      out.push_back(members[0]);
      continue;
    }
    if (auto c = collapse_cluster(p, members)) {
      out.insert(out.end(), members.size(), *c);
    } else if (radius > 1e-6) {
      resolve_clusters(p, std::move(members), radius / 4.0, out);
    } else {
      out.insert(out.end(), members.begin(), members.end());
    }
  }
}

}  // namespace

Scalar CharPoly::operator()(Scalar lambda) const { return horner(coeffs, lambda); }

CharPoly CharPoly::scaled_by_largest() const {
  CharPoly out = *this;
  std::size_t best = 0;
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    if (std::abs(coeffs[i]) > std::abs(coeffs[best])) best = i;
  if (coeffs.empty() || coeffs[best] == Scalar(0.0)) return out;
  const Scalar pivot = coeffs[best];
  for (Scalar& c : out.coeffs) c /= pivot;
  return out;
}

Scalar resultant_at(const Tensor& a, Scalar lambda) {
  require_dim2(a);
  return sylvester_determinant(form_coefficients(a), lambda);
}

CharPoly char_poly_dim2(const Tensor& a) {
  require_dim2(a);
  const Tensor balanced = balance_dim2(a);
  const auto forms = form_coefficients(balanced);
  const int degree = 2 * (a.order() - 1);
  const int samples = degree + 1;

  double max_entry = 0.0;
  for (const Scalar& v : balanced.entries()) max_entry = std::max(max_entry, std::abs(v));
  const double radius = 1.0 + max_entry;
  if (!std::isfinite(radius)) {
    throw Error(Errc::kInterpolationFailure, "sample radius is not finite");
  }

  std::vector<Scalar> values(samples);
  for (int k = 0; k < samples; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / samples;
    values[k] = sylvester_determinant(forms, std::polar(radius, angle));
  }
  // The samples are radius * w^k for the primitive root of unity w, so the
  // Vandermonde inverse is a scaled inverse DFT.
  CharPoly poly;
  poly.coeffs.resize(samples);
  double inv_power = 1.0;
  for (int j = 0; j < samples; ++j) {
    Scalar sum(0.0);
    for (int k = 0; k < samples; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % samples) /
                           samples;
      sum += values[k] * std::polar(1.0, angle);
    }
    poly.coeffs[j] = sum * (inv_power / samples);
    inv_power /= radius;
  }
  for (const Scalar& c : poly.coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(Errc::kInterpolationFailure, "interpolated coefficient is not finite");
    }
  }
  // Flush coefficients that sit at the rounding floor of the transform.
  double floor_mag = 0.0;
  double power = 1.0;
  std::vector<double> weighted(samples);
  for (int j = 0; j < samples; ++j) {
    weighted[j] = std::abs(poly.coeffs[j]) * power;
    floor_mag = std::max(floor_mag, weighted[j]);
    power *= radius;
  }
  floor_mag *= 64.0 * std::numeric_limits<double>::epsilon();
  for (int j = 0; j < samples; ++j)
    if (weighted[j] < floor_mag) poly.coeffs[j] = 0.0;
  const Scalar lead = poly.coeffs.back();
  if (lead != Scalar(0.0)) {
    for (Scalar& c : poly.coeffs) c /= lead;
    poly.normalized = true;
  }
  return poly;
}

std::vector<Scalar> polynomial_roots(std::span<const Scalar> coeffs) {
  std::size_t degree = coeffs.size();
  while (degree > 0 && coeffs[degree - 1] == Scalar(0.0)) --degree;
  if (degree <= 1) return {};
  --degree;
  const std::span<const Scalar> p = coeffs.first(degree + 1);
  const Scalar lead = p[degree];

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < degree; ++i) companion(i, degree - 1) = -p[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Scalar> raw(degree);
  for (std::size_t i = 0; i < degree; ++i) raw[i] = solver.eigenvalues()[i];
  std::sort(raw.begin(), raw.end(), root_order);

  std::vector<Scalar> roots;
  resolve_clusters(p, std::move(raw), 0.1, roots);
  std::sort(roots.begin(), roots.end(), root_order);
  return roots;
}

Spectrum spectrum_dim2(const Tensor& a) {
  const CharPoly poly = char_poly_dim2(a);
  Spectrum out;
  out.degenerate = std::all_of(poly.coeffs.begin(), poly.coeffs.end(),
                               [](const Scalar& c) { return c == Scalar(0.0); });
  if (!out.degenerate) out.roots = polynomial_roots(poly.coeffs);
  return out;
}

double eigen_residual(const Tensor& a, Scalar lambda, std::span<const Scalar> x) {
  if (std::all_of(x.begin(), x.end(), [](const Scalar& v) { return v == Scalar(0.0); })) {
    throw Error(Errc::kZeroVector, "eigen residual needs a nonzero vector");
  }
  const std::vector<Scalar> ax = apply_to_vector(a, x);
  double worst = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    worst = std::max(worst, std::abs(ax[i] - lambda * ipow(x[i], a.order() - 1)));
  }
  return worst;
}

std::vector<Scalar> eigenvector_dim2(const Tensor& a, Scalar lambda) {
  require_dim2(a);
  auto forms = form_coefficients(a);
  const int d = a.order() - 1;
  forms[0][0] -= lambda;
  forms[1][d] -= lambda;

  std::vector<std::vector<Scalar>> candidates{{Scalar(1.0), Scalar(0.0)},
                                              {Scalar(0.0), Scalar(1.0)}};
  for (const auto& form : forms) {
    // x = (t, 1): the form is sum_k form[k] t^{d-k}.
    std::vector<Scalar> in_t(form.rbegin(), form.rend());
    for (const Scalar& t : polynomial_roots(in_t)) {
      const double scale = std::max(1.0, std::abs(t));
      candidates.push_back({t / scale, Scalar(1.0) / scale});
    }
  }
  std::vector<Scalar> best;
  double best_residual = std::numeric_limits<double>::infinity();
  for (const auto& x : candidates) {
    const double r = eigen_residual(a, lambda, x);
    if (r < best_residual) {
      best_residual = r;
      best = x;
    }
  }
  return best;
}

SpectrumMatch match_spectra(std::span<const Scalar> a, std::span<const Scalar> b,
                            double tol) {
  SpectrumMatch out;
  if (a.size() != b.size()) return out;
  std::vector<Scalar> xs(a.begin(), a.end());
  std::vector<Scalar> ys(b.begin(), b.end());
  std::sort(xs.begin(), xs.end(), root_order);
  std::sort(ys.begin(), ys.end(), root_order);
  std::vector<bool> used(ys.size(), false);
  for (const Scalar& x : xs) {
    std::size_t pick = ys.size();
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (!used[j] && std::abs(x - ys[j]) < dist) {
        dist = std::abs(x - ys[j]);
        pick = j;
      }
    }
    used[pick] = true;
    out.max_distance = std::max(out.max_distance, dist);
    out.total_cost += dist;
  }
  out.matched = out.max_distance <= tol &&
                out.total_cost <= tol * static_cast<double>(xs.size());
  return out;
}

double char_poly_distance(const CharPoly& p, const CharPoly& q) {
  if (p.coeffs.size() != q.coeffs.size()) return std::numeric_limits<double>::infinity();
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < p.coeffs.size(); ++i)
    if (std::abs(p.coeffs[i]) > std::abs(p.coeffs[pivot])) pivot = i;
  if (p.coeffs[pivot] == Scalar(0.0) || q.coeffs[pivot] == Scalar(0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    worst = std::max(worst, std::abs(p.coeffs[i] / p.coeffs[pivot] -
                                     q.coeffs[i] / q.coeffs[pivot]));
  }
  return worst;
}

}  // namespace tsim
