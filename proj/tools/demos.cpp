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

#include <sstream>

#include "cli.hpp"
#include "tsim/tsim.hpp"

namespace tsim::cli {

namespace {

using io::Json;

Json rows(const Matrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(io::scalar_to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix as_matrix(const Tensor& t) { return Matrix(t); }

// Order-2 pair with a matrix similarity that changes the nonzero count.
DemoResult remark_3_4() {
  const Matrix a = Matrix::from_rows({{0, 1}, {0, 0}});
  const Matrix p = Matrix::from_rows({{1, 0}, {1, 1}});
  const Matrix q = Matrix::from_rows({{1, 0}, {-1, 1}});
  const Matrix pq = p * q;
  const bool exact_inverse = pq == Matrix::identity(2);
  const Matrix b = as_matrix(general_transform(a, Witness{p, q, 2}));

  // A pair that looks plausible but is not inverse; it is rejected.
  const Matrix p_bad = Matrix::from_rows({{1, 1}, {1, 0}});
  const Matrix q_bad = Matrix::from_rows({{1, -1}, {1, 0}});
  const Matrix pq_bad = p_bad * q_bad;

  DemoResult r;
  Json& doc = r.doc;
  doc["demo"] = "remark-3-4";
  doc["m"] = 2;
  doc["A"] = rows(a);
  doc["P"] = rows(p);
  doc["Q"] = rows(q);
  doc["PQ"] = rows(pq);
  doc["PQ_is_identity"] = exact_inverse;
  doc["B"] = rows(b);
  doc["nnz_A"] = nnz(a);
  doc["nnz_B"] = nnz(b);
  Json rejected;
  rejected["P"] = rows(p_bad);
  rejected["Q"] = rows(q_bad);
  rejected["PQ"] = rows(pq_bad);
  rejected["PQ_is_identity"] = pq_bad == Matrix::identity(2);
  doc["rejected_pair"] = std::move(rejected);

  const bool shown = exact_inverse && nnz(a) == 1 && nnz(b) == 4;
  std::ostringstream s;
  s << "remark-3-4: B = P A Q with P Q = I (exact: " << (exact_inverse ? "yes" : "no")
    << "), N(A) = " << nnz(a) << ", N(B) = " << nnz(b) << "\n";
  r.summary = s.str();
  r.exit_code = shown ? kSuccess : kNumeric;
  return r;
}

// Matrices: a symmetric matrix is similar to a diagonal one. Order 3: any
// similarity keeps a diagonal tensor diagonal and preserves the nonzero count,
// so a symmetric tensor with off-diagonal entries is never similar to a
// diagonal tensor.
DemoResult remark_3_7() {
  const Matrix s = Matrix::from_rows({{2, 1}, {1, 2}});
  const Matrix q = Matrix::from_rows({{1, 1}, {1, -1}});
  const Matrix p = Matrix::from_rows({{0.5, 0.5}, {0.5, -0.5}});
  const Matrix image = as_matrix(general_transform(s, Witness{p, q, 2}));
  const bool matrix_ok = p * q == Matrix::identity(2) && image.is_diagonal_matrix();

  Tensor diag_tensor(3, 2);
  diag_tensor.at({0, 0, 0}) = 3.0;
  diag_tensor.at({1, 1, 1}) = 1.0;
  const StructuredWitness w{Permutation({1, 0}), DiagonalScaling({2.0, 4.0}), 3};
  const Tensor moved = clean(general_transform(diag_tensor, compose_witness(w)));
  const bool stays_diagonal = is_diagonal(moved);

  Tensor sym(3, 2);
  sym.at({0, 0, 0}) = 2.0;
  sym.at({1, 1, 1}) = 2.0;
  sym.at({0, 0, 1}) = 1.0;
  sym.at({0, 1, 0}) = 1.0;
  sym.at({1, 0, 0}) = 1.0;
  // Every diagonal tensor of dimension 2 has at most 2 nonzeros.
  const bool sym_excluded = nnz(sym) > static_cast<std::size_t>(sym.dim());

  DemoResult r;
  Json& doc = r.doc;
  doc["demo"] = "remark-3-7";
  Json mc;
  mc["m"] = 2;
  mc["S"] = rows(s);
  mc["P"] = rows(p);
  mc["Q"] = rows(q);
  mc["PQ_is_identity"] = p * q == Matrix::identity(2);
  mc["PSQ"] = rows(image);
  mc["PSQ_is_diagonal"] = image.is_diagonal_matrix();
  doc["matrix_case"] = std::move(mc);

  Json tc;
  tc["m"] = 3;
  tc["diagonal_tensor"] = io::tensor_to_sparse_json(diag_tensor);
  tc["witness"] = io::structured_witness_to_json(w);
  tc["image"] = io::tensor_to_sparse_json(moved);
  tc["image_is_diagonal"] = stays_diagonal;
  tc["symmetric_tensor"] = io::tensor_to_sparse_json(sym);
  tc["symmetric_tensor_nnz"] = nnz(sym);
  tc["max_diagonal_nnz"] = sym.dim();
  tc["symmetric_similar_to_diagonal"] = !sym_excluded;
  doc["tensor_case"] = std::move(tc);

  std::ostringstream out;
  out << "remark-3-7: symmetric matrix diagonalized (" << (matrix_ok ? "yes" : "no")
      << "); order-3 diagonal tensor stays diagonal (" << (stays_diagonal ? "yes" : "no")
      << "); symmetric order-3 tensor has nnz " << nnz(sym)
      << " > 2, so it is similar to no diagonal tensor\n";
  r.summary = out.str();
  r.exit_code = matrix_ok && stays_diagonal && sym_excluded ? kSuccess : kNumeric;
  return r;
}

// An order-3 pattern with no triangular relabeling, certified over all of S_2.
DemoResult remark_3_10() {
  Tensor a(3, 2);
  a.at({0, 1, 1}) = 1.0;
  a.at({1, 0, 0}) = 1.0;
  const std::vector<RelabelingCheck> cert = triangularity_certificate(a);
  bool none_triangular = true;
  Json checks = Json::array();
  for (const RelabelingCheck& c : cert) {
    Json item;
    item["sigma"] = c.sigma.one_based();
    if (c.first_violation) {
      Json idx = Json::array();
      for (int v : *c.first_violation) idx.push_back(v + 1);
      item["violation"] = std::move(idx);
    } else {
      item["violation"] = nullptr;
      none_triangular = false;
    }
    checks.push_back(std::move(item));
  }

  DemoResult r;
  Json& doc = r.doc;
  doc["demo"] = "remark-3-10";
  doc["tensor"] = io::tensor_to_sparse_json(a);
  doc["relabelings_checked"] = cert.size();
  doc["exhaustive"] = true;
  doc["certificate"] = std::move(checks);
  doc["triangularizable"] = !none_triangular;

  std::ostringstream out;
  out << "remark-3-10: " << cert.size() << " relabelings checked, "
      << (none_triangular ? "none" : "some") << " upper triangular\n";
  r.summary = out.str();
  r.exit_code = none_triangular ? kSuccess : kNumeric;
  return r;
}

}  // namespace

std::vector<std::string> demo_names() { return {"remark-3-4", "remark-3-7", "remark-3-10"}; }

DemoResult run_demo(std::string_view name) {
  if (name == "remark-3-4") return remark_3_4();
  if (name == "remark-3-7") return remark_3_7();
  if (name == "remark-3-10") return remark_3_10();
  throw Error(Errc::kParse, "unknown demo \"" + std::string(name) + "\"");
}

}  // namespace tsim::cli
