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

#include "tsim/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "tsim/error.hpp"

namespace tsim::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::kParse, what); }

int get_int(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer()) {
    fail(std::string("expected integer field \"") + key + "\"");
  }
  return j.at(key).get<int>();
}

void fill_dense(const Json& node, int depth, int order, int dim, Tensor& t,
                std::size_t& offset) {
  if (depth == order) {
    t[offset++] = scalar_from_json(node);
    return;
  }
  if (!node.is_array() || node.size() != static_cast<std::size_t>(dim)) {
    fail("dense data must be nested arrays of length dim at every level");
  }
  for (const Json& child : node) fill_dense(child, depth + 1, order, dim, t, offset);
}

Json dense_node(const Tensor& t, int depth, std::size_t& offset) {
  if (depth == t.order()) return scalar_to_json(t[offset++]);
  Json arr = Json::array();
  for (int i = 0; i < t.dim(); ++i) arr.push_back(dense_node(t, depth + 1, offset));
  return arr;
}

Json matrix_rows(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Scalar scalar_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail("scalar must be a number or a [re, im] pair");
}

Json scalar_to_json(Scalar v) {
  if (v.imag() == 0.0) return v.real();
  return complex_pair(v);
}

Json complex_pair(Scalar v) { return Json::array({v.real(), v.imag()}); }

Tensor tensor_from_json(const Json& j, std::size_t entry_limit) {
  const int order = get_int(j, "order");
  const int dim = get_int(j, "dim");
  if (order < 1 || dim < 1) fail("order and dim must be positive");
  if (!j.contains("format") || !j.at("format").is_string()) {
    fail("expected string field \"format\"");
  }
  const std::string format = j.at("format").get<std::string>();
  Tensor t(order, dim, entry_limit);
  if (format == "dense") {
    if (!j.contains("data")) fail("dense tensor needs a \"data\" field");
    std::size_t offset = 0;
    fill_dense(j.at("data"), 0, order, dim, t, offset);
    return t;
  }
  if (format == "sparse") {
    if (!j.contains("entries") || !j.at("entries").is_array()) {
      fail("sparse tensor needs an \"entries\" array");
    }
    std::set<std::size_t> seen;
    Index index(order);
    for (const Json& e : j.at("entries")) {
      if (!e.is_object() || !e.contains("idx") || !e.contains("val")) {
        fail("sparse entry needs \"idx\" and \"val\"");
      }
      const Json& idx = e.at("idx");
      if (!idx.is_array() || idx.size() != static_cast<std::size_t>(order)) {
        fail("sparse index length must equal the order");
      }
      for (int t_pos = 0; t_pos < order; ++t_pos) {
        if (!idx[t_pos].is_number_integer()) fail("sparse index must be integers");
        const int v = idx[t_pos].get<int>();
        if (v < 1 || v > dim) fail("sparse index out of range (indices are 1-based)");
        index[t_pos] = v - 1;
      }
      const std::size_t offset = t.offset_of(index);
      if (!seen.insert(offset).second) fail("duplicate sparse index");
      t[offset] = scalar_from_json(e.at("val"));
    }
    return t;
  }
  fail("unknown tensor format \"" + format + "\"");
}

Json tensor_to_json(const Tensor& t) {
  Json j;
  j["order"] = t.order();
  j["dim"] = t.dim();
  j["format"] = "dense";
  std::size_t offset = 0;
  j["data"] = dense_node(t, 0, offset);
  return j;
}

Json tensor_to_sparse_json(const Tensor& t) {
  Json j;
  j["order"] = t.order();
  j["dim"] = t.dim();
  j["format"] = "sparse";
  Json entries = Json::array();
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] == Scalar(0.0)) continue;
    Index index = t.index_of(k);
    for (int& v : index) ++v;
    entries.push_back(Json{{"idx", index}, {"val", scalar_to_json(t[k])}});
  }
  j["entries"] = std::move(entries);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  if (j.is_object()) {
    Tensor t = tensor_from_json(j);
    if (t.order() != 2) fail("matrix document must have order 2");
    return Matrix(std::move(t));
  }
  if (!j.is_array() || j.empty()) fail("matrix must be a tensor document or rows");
  const int n = static_cast<int>(j.size());
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != static_cast<std::size_t>(n)) {
      fail("matrix rows must form a square array");
    }
    for (int k = 0; k < n; ++k) m(i, k) = scalar_from_json(j[i][k]);
  }
  return m;
}

Witness witness_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("P") || !j.contains("Q")) {
    fail("witness needs \"m\", \"P\" and \"Q\"");
  }
  return {matrix_from_json(j.at("P")), matrix_from_json(j.at("Q")), get_int(j, "m")};
}

Json witness_to_json(const Witness& w) {
  Json j;
  j["m"] = w.order;
  j["P"] = matrix_rows(w.p);
  j["Q"] = matrix_rows(w.q);
  return j;
}

StructuredWitness structured_witness_from_json(const Json& j) {
  const int m = get_int(j, "m");
  if (!j.contains("sigma") || !j.at("sigma").is_array() || !j.contains("d") ||
      !j.at("d").is_array()) {
    fail("structured witness needs \"sigma\" and \"d\" arrays");
  }
  std::vector<int> image;
  for (const Json& v : j.at("sigma")) {
    if (!v.is_number_integer()) fail("sigma entries must be integers");
    image.push_back(v.get<int>());
  }
  std::vector<Scalar> d;
  for (const Json& v : j.at("d")) d.push_back(scalar_from_json(v));
  return {Permutation::from_one_based(image), DiagonalScaling(std::move(d)), m};
}

Json structured_witness_to_json(const StructuredWitness& s) {
  Json j;
  j["m"] = s.order;
  j["sigma"] = s.sigma.one_based();
  Json d = Json::array();
  for (const Scalar& v : s.d.values()) d.push_back(complex_pair(v));
  j["d"] = std::move(d);
  return j;
}

Json char_poly_to_json(const CharPoly& p) {
  Json j;
  j["degree"] = p.degree();
  Json coeffs = Json::array();
  for (const Scalar& c : p.coeffs) coeffs.push_back(complex_pair(c));
  j["coeffs"] = std::move(coeffs);
  return j;
}

CharPoly char_poly_from_json(const Json& j) {
  const int degree = get_int(j, "degree");
  if (!j.contains("coeffs") || !j.at("coeffs").is_array() ||
      j.at("coeffs").size() != static_cast<std::size_t>(degree) + 1) {
    fail("coeffs must list degree + 1 scalars");
  }
  CharPoly p;
  for (const Json& c : j.at("coeffs")) p.coeffs.push_back(scalar_from_json(c));
  p.normalized = !p.coeffs.empty() && p.coeffs.back() == Scalar(1.0);
  return p;
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

Tensor read_tensor(const std::filesystem::path& path) {
  return tensor_from_json(read_file(path));
}

Matrix read_matrix(const std::filesystem::path& path) {
  return matrix_from_json(read_file(path));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path.string());
  out << dump(j);
}

}  // namespace tsim::io
