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

#include "tsim/decision.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "tsim/error.hpp"

namespace tsim {

namespace {

void require_same_shape(const Tensor& a, const Tensor& b) {
  if (a.order() != b.order() || a.dim() != b.dim()) {
    throw Error(Errc::kShapeMismatch, "tensors must share order and dimension");
  }
}

void require_decision_order(int order) {
  if (order < 3) {
    throw Error(Errc::kInvalidOrder,
                "similarity decision requires order >= 3 (got " +
                    std::to_string(order) + ")");
  }
}

// Row of the multiplicative system during integer elimination.
struct LatticeRow {
  std::vector<long long> coeff;
  Scalar rhs;
};

Scalar ipow_ll(Scalar base, long long e) {
  return ipow(base, static_cast<int>(e));
}

// g = gcd(a, b) > 0 with u a + v b = g.
std::tuple<long long, long long, long long> extended_gcd(long long a, long long b) {
  long long old_r = a, r = b;
  long long old_u = 1, u = 0;
  long long old_v = 0, v = 1;
  while (r != 0) {
    const long long q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_u, u) = std::make_pair(u, old_u - q * u);
    std::tie(old_v, v) = std::make_pair(v, old_v - q * v);
  }
  if (old_r < 0) return {-old_r, -old_u, -old_v};
  return {old_r, old_u, old_v};
}

LatticeRow combine(long long x, const LatticeRow& r1, long long y, const LatticeRow& r2) {
  LatticeRow out{std::vector<long long>(r1.coeff.size()), Scalar(1.0)};
  for (std::size_t j = 0; j < r1.coeff.size(); ++j)
    out.coeff[j] = x * r1.coeff[j] + y * r2.coeff[j];
  out.rhs = ipow_ll(r1.rhs, x) * ipow_ll(r2.rhs, y);
  return out;
}

// Echelon basis of the exponent lattice. A row that reduces to zero states
// rhs == 1; the worst such violation is tracked for early rejection.
class LatticeEliminator {
 public:
  explicit LatticeEliminator(int n) : n_(n), basis_(n) {}

  void insert(LatticeRow row) {
    for (int p = 0; p < n_; ++p) {
      if (row.coeff[p] == 0) continue;
      if (!basis_[p]) {
        if (row.coeff[p] < 0) {
          for (long long& c : row.coeff) c = -c;
          row.rhs = Scalar(1.0) / row.rhs;
        }
        basis_[p] = std::move(row);
        return;
      }
      const LatticeRow& pivot = *basis_[p];
      const long long h = pivot.coeff[p];
      const long long c = row.coeff[p];
      const auto [g, u, v] = extended_gcd(h, c);
      LatticeRow reduced = combine(c / g, pivot, -(h / g), row);
      basis_[p] = combine(u, pivot, v, row);
      row = std::move(reduced);
    }
    inconsistency_ = std::max(inconsistency_, std::abs(row.rhs - Scalar(1.0)));
  }

  double inconsistency() const { return inconsistency_; }

  std::vector<Scalar> back_substitute() const {
    std::vector<Scalar> d(n_, Scalar(1.0));
    for (int p = n_ - 1; p >= 0; --p) {
      if (!basis_[p]) continue;
      const LatticeRow& row = *basis_[p];
      Scalar rest(1.0);
      for (int j = p + 1; j < n_; ++j)
        if (row.coeff[j] != 0) rest *= ipow_ll(d[j], row.coeff[j]);
      const Scalar target = row.rhs / rest;
      const double h = static_cast<double>(row.coeff[p]);
      if (row.coeff[p] == 1) {
        d[p] = target;
      } else if (target.imag() == 0.0 && target.real() > 0.0) {
        d[p] = std::pow(target.real(), 1.0 / h);
      } else {
        d[p] = std::polar(std::pow(std::abs(target), 1.0 / h), std::arg(target) / h);
      }
    }
    return d;
  }

 private:
  int n_;
  std::vector<std::optional<LatticeRow>> basis_;
  double inconsistency_ = 0.0;
};

// Rows whose right-hand side is inconsistent by more than this are rejected
// before back-substitution. The reconstruction check remains authoritative.
constexpr double kEarlyRejectTolerance = 1e-6;

std::optional<DiagonalSolve> solve_matched(const Tensor& a, const Tensor& b,
                                           const Permutation& sigma, double tol) {
  const PatternConstraintGraph graph(a, b, sigma);
  const int n = graph.unknowns();
  DiagonalSolve solve{DiagonalScaling::identity(n), graph.constraints().empty(), 0.0};

  if (!solve.unconstrained) {
    // Identical exponent rows must carry identical right-hand sides.
    std::map<std::vector<int>, Scalar> rows;
    for (const DiagonalConstraint& c : graph.constraints()) {
      auto [it, inserted] = rows.emplace(c.exponents, c.rhs);
      if (!inserted && std::abs(c.rhs / it->second - Scalar(1.0)) > kEarlyRejectTolerance) {
        return std::nullopt;
      }
    }
    LatticeEliminator lattice(n);
    for (const auto& [exponents, rhs] : rows) {
      lattice.insert({std::vector<long long>(exponents.begin(), exponents.end()), rhs});
      if (lattice.inconsistency() > kEarlyRejectTolerance) return std::nullopt;
    }
    std::vector<Scalar> d = lattice.back_substitute();
    for (const Scalar& v : d) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || !(std::abs(v) > 1e-300)) {
        return std::nullopt;
      }
    }
    solve.d = DiagonalScaling(std::move(d));
  }

  const Tensor rebuilt = permutation_transform(diagonal_transform(a, solve.d), sigma);
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k] == Scalar(0.0)) {
      if (rebuilt[k] != Scalar(0.0)) return std::nullopt;
      continue;
    }
    const double rel = std::abs(rebuilt[k] - b[k]) / std::abs(b[k]);
    if (!(rel <= tol)) return std::nullopt;
    solve.residual = std::max(solve.residual, rel);
  }
  return solve;
}

}  // namespace

PatternConstraintGraph::PatternConstraintGraph(const Tensor& a, const Tensor& b,
                                               const Permutation& sigma)
    : unknowns_(a.dim()) {
  require_same_shape(a, b);
  if (sigma.size() != a.dim()) {
    throw Error(Errc::kShapeMismatch, "permutation size does not match dimension");
  }
  const int m = a.order();
  Index index(m, 0);
  Index image(m);
  std::size_t offset = 0;
  do {
    const Scalar bv = b[offset++];
    if (bv == Scalar(0.0)) continue;
    for (int t = 0; t < m; ++t) image[t] = sigma(index[t]);
    const Scalar av = a[a.offset_of(image)];
    if (av == Scalar(0.0)) continue;
    DiagonalConstraint c{std::vector<int>(unknowns_, 0), bv == av ? Scalar(1.0) : bv / av, index};
    c.exponents[image[0]] += 1 - m;
    for (int t = 1; t < m; ++t) c.exponents[image[t]] += 1;
    if (std::accumulate(c.exponents.begin(), c.exponents.end(), 0) != 0) {
      throw std::logic_error("diagonal constraint exponents must sum to zero");
    }
    constraints_.push_back(std::move(c));
  } while (next_index(index, a.dim()));
}

std::vector<std::vector<int>> PatternConstraintGraph::components() const {
  std::vector<int> parent(unknowns_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const DiagonalConstraint& c : constraints_) {
    int first = -1;
    for (int j = 0; j < unknowns_; ++j) {
      if (c.exponents[j] == 0) continue;
      if (first < 0) first = j;
      else parent[find(j)] = find(first);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int j = 0; j < unknowns_; ++j) groups[find(j)].push_back(j);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

PatternMatcher::PatternMatcher(const Tensor& za, const Tensor& zb)
    : za_(zero_pattern(za)), zb_(zero_pattern(zb)), n_(za.dim()), m_(za.order()) {
  require_same_shape(za, zb);
  head_a_.assign(n_, 0);
  tail_a_.assign(n_, 0);
  head_b_.assign(n_, 0);
  tail_b_.assign(n_, 0);
  auto tally = [&](const Tensor& z, std::vector<long>& head, std::vector<long>& tail) {
    Index index(m_, 0);
    std::size_t offset = 0;
    do {
      if (z[offset++] != Scalar(0.0)) {
        ++head[index[0]];
        for (int t = 1; t < m_; ++t) ++tail[index[t]];
      }
    } while (next_index(index, n_));
  };
  tally(za_, head_a_, tail_a_);
  tally(zb_, head_b_, tail_b_);
  sigma_.assign(n_, -1);
  cursor_.assign(n_, 0);
  used_.assign(n_, false);
  exhausted_ = nnz(za_) != nnz(zb_);
}

bool PatternMatcher::consistent(int depth) const {
  // Every index over labels {0..depth} that uses `depth` is now fully mapped.
  Index index(m_, 0);
  Index image(m_);
  do {
    if (std::find(index.begin(), index.end(), depth) == index.end()) continue;
    for (int t = 0; t < m_; ++t) image[t] = sigma_[index[t]];
    if (zb_[zb_.offset_of(index)] != za_[za_.offset_of(image)]) return false;
  } while (next_index(index, depth + 1));
  return true;
}

std::optional<Permutation> PatternMatcher::next() {
  if (exhausted_) return std::nullopt;
  if (depth_ == n_) {
    --depth_;
    used_[sigma_[depth_]] = false;
  }
  while (depth_ >= 0) {
    bool placed = false;
    while (cursor_[depth_] < n_) {
      const int u = cursor_[depth_]++;
      if (used_[u] || head_a_[u] != head_b_[depth_] || tail_a_[u] != tail_b_[depth_]) {
        continue;
      }
      sigma_[depth_] = u;
      used_[u] = true;
      if (consistent(depth_)) {
        placed = true;
        break;
      }
      used_[u] = false;
    }
    if (placed) {
      if (++depth_ == n_) return Permutation(sigma_);
      cursor_[depth_] = 0;
    } else if (--depth_ >= 0) {
      used_[sigma_[depth_]] = false;
    }
  }
  exhausted_ = true;
  return std::nullopt;
}

std::vector<Permutation> pattern_permutations(const Tensor& za, const Tensor& zb) {
  std::vector<Permutation> out;
  PatternMatcher matcher(za, zb);
  while (auto sigma = matcher.next()) out.push_back(std::move(*sigma));
  return out;
}

std::optional<DiagonalSolve> solve_diagonal(const Tensor& a, const Tensor& b,
                                            const Permutation& sigma, double tol) {
  require_same_shape(a, b);
  require_decision_order(a.order());
  if (sigma.size() != a.dim()) {
    throw Error(Errc::kShapeMismatch, "permutation size does not match dimension");
  }
  if (zero_pattern(b) != zero_pattern(permutation_transform(a, sigma))) {
    return std::nullopt;
  }
  return solve_matched(a, b, sigma, tol);
}

double elementwise_relative_error(const Tensor& x, const Tensor& y) {
  if (x.order() != y.order() || x.dim() != y.dim()) {
    throw Error(Errc::kShapeMismatch, "tensors have different shapes");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k)
    worst = std::max(worst, std::abs(x[k] - y[k]) / std::max(1.0, std::abs(y[k])));
  return worst;
}

std::optional<StructuredWitness> decide_similar(const Tensor& a, const Tensor& b,
                                                double tol) {
  require_same_shape(a, b);
  require_decision_order(a.order());
  if (nnz(a) != nnz(b)) return std::nullopt;
  PatternMatcher matcher(a, b);
  while (auto sigma = matcher.next()) {
    auto solve = solve_matched(a, b, *sigma, tol);
    if (!solve) continue;
    StructuredWitness s{sigma->inverse(), std::move(solve->d), a.order()};
    const Tensor image = general_transform(a, compose_witness(s));
    if (elementwise_relative_error(image, b) <= tol) return s;
  }
  return std::nullopt;
}

std::optional<Permutation> triangularizable_pattern(const Tensor& a) {
  require_decision_order(a.order());
  const int n = a.dim();
  if (n > kMaxTriangularSearchDim) {
    throw Error(Errc::kSearchTooLarge,
                "triangular relabeling search is limited to dim <= " +
                    std::to_string(kMaxTriangularSearchDim));
  }
  // A nonzero at (j1, ..., jm) needs j1 placed no later than every j_t.
  std::vector<unsigned> before(n, 0);  // bitmask of labels that must precede
  Index index(a.order(), 0);
  std::size_t offset = 0;
  do {
    if (a[offset++] == Scalar(0.0)) continue;
    for (int t = 1; t < a.order(); ++t)
      if (index[t] != index[0]) before[index[t]] |= 1u << index[0];
  } while (next_index(index, n));

  // Depth-first over positions in lexicographic order of sigma; a set of
  // placed labels that once failed fails again, so it is remembered.
  std::vector<int> sigma(n);
  std::vector<bool> dead(std::size_t{1} << n, false);
  auto search = [&](auto&& self, int pos, unsigned placed) -> bool {
    if (pos == n) return true;
    if (dead[placed]) return false;
    for (int v = 0; v < n; ++v) {
      if ((placed >> v) & 1u) continue;
      if ((before[v] & ~placed) != 0) continue;
      sigma[pos] = v;
      if (self(self, pos + 1, placed | (1u << v))) return true;
    }
    dead[placed] = true;
    return false;
  };
  if (!search(search, 0, 0u)) return std::nullopt;
  return Permutation(std::move(sigma));
}

std::vector<RelabelingCheck> triangularity_certificate(const Tensor& a) {
  require_decision_order(a.order());
  const int n = a.dim();
  if (n > kMaxCanonicalHashDim) {
    throw Error(Errc::kSearchTooLarge, "exhaustive certificate is limited to dim <= 8");
  }
  std::vector<RelabelingCheck> out;
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 0);
  do {
    Permutation sigma(image);
    const Tensor relabeled = permutation_transform(a, sigma);
    RelabelingCheck check{sigma, std::nullopt};
    Index index(a.order(), 0);
    std::size_t offset = 0;
    do {
      if (relabeled[offset++] != Scalar(0.0) &&
          *std::min_element(index.begin() + 1, index.end()) < index[0]) {
        check.first_violation = index;
        break;
      }
    } while (next_index(index, n));
    out.push_back(std::move(check));
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

std::vector<std::uint8_t> canonical_pattern(const Tensor& a) {
  const int n = a.dim();
  const int m = a.order();
  const Tensor z = zero_pattern(a);
  std::vector<std::uint8_t> best;
  std::vector<std::uint8_t> candidate(z.size());
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 0);
  Index index(m);
  Index mapped(m);
  do {
    std::fill(index.begin(), index.end(), 0);
    bool smaller = best.empty();
    bool abandoned = false;
    std::size_t k = 0;
    do {
      for (int t = 0; t < m; ++t) mapped[t] = image[index[t]];
      const std::uint8_t bit = z[z.offset_of(mapped)] != Scalar(0.0) ? 1 : 0;
      if (!smaller) {
        if (bit > best[k]) {
          abandoned = true;
          break;
        }
        if (bit < best[k]) smaller = true;
      }
      candidate[k++] = bit;
    } while (next_index(index, n));
    if (!abandoned && smaller) best = candidate;
  } while (std::next_permutation(image.begin(), image.end()));
  return best;
}

InvariantReport similarity_invariants(const Tensor& a) {
  if (a.order() < 2) {
    throw Error(Errc::kInvalidOrder, "similarity invariants need order >= 2");
  }
  InvariantReport report;
  report.order = a.order();
  report.dim = a.dim();
  report.nnz = nnz(a);
  report.diagonal = is_diagonal(a);
  if (a.dim() <= kMaxCanonicalHashDim) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t byte) {
      h ^= byte;
      h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(a.order()));
    mix(static_cast<std::uint64_t>(a.dim()));
    for (std::uint8_t bit : canonical_pattern(a)) mix(bit);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    report.pattern_hash = buf;
  }
  if (a.order() >= 3 && a.dim() <= kMaxTriangularSearchDim) {
    report.triangularizable = triangularizable_pattern(a).has_value();
  }
  return report;
}

}  // namespace tsim
