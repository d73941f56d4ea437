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

#ifndef TSIM_IO_HPP_
#define TSIM_IO_HPP_

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "tsim/similarity.hpp"
#include "tsim/spectral.hpp"
#include "tsim/tensor.hpp"

// JSON interchange. All indices in documents are 1-based.
//
// Tensor:     {"order": m, "dim": n, "format": "dense", "data": nested arrays}
//             {"order": m, "dim": n, "format": "sparse",
//              "entries": [{"idx": [i1, ..., im], "val": v}, ...]}
//             A scalar v is a number (real) or a pair [re, im].
// Witness:    {"m": int, "P": matrix, "Q": matrix}, where a matrix is either
//             an order-2 tensor document or a bare nested 2-D array.
// Structured: {"m": int, "sigma": [sigma(1), ...], "d": [[re, im], ...]}
// CharPoly:   {"degree": int, "coeffs": [[re, im], ...]}, lowest degree first.
namespace tsim::io {

using Json = nlohmann::ordered_json;

Scalar scalar_from_json(const Json& j);
// A plain number when the imaginary part is zero, else [re, im].
Json scalar_to_json(Scalar v);
// Always [re, im].
Json complex_pair(Scalar v);

Tensor tensor_from_json(const Json& j, std::size_t entry_limit = kDefaultEntryLimit);
Json tensor_to_json(const Tensor& t);
Json tensor_to_sparse_json(const Tensor& t);

Matrix matrix_from_json(const Json& j);

Witness witness_from_json(const Json& j);
Json witness_to_json(const Witness& w);

StructuredWitness structured_witness_from_json(const Json& j);
Json structured_witness_to_json(const StructuredWitness& s);

Json char_poly_to_json(const CharPoly& p);
CharPoly char_poly_from_json(const Json& j);

Json parse(std::string_view text);
Json read_file(const std::filesystem::path& path);
Tensor read_tensor(const std::filesystem::path& path);
Matrix read_matrix(const std::filesystem::path& path);

// Canonical text form: two-space indent, trailing newline. Doubles are
// printed in shortest round-trip form.
std::string dump(const Json& j);
void write_file(const std::filesystem::path& path, const Json& j);

}  // namespace tsim::io

#endif  // TSIM_IO_HPP_
