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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <exception>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include "tsim/tsim.hpp"

namespace tsim::cli {

namespace {

using io::Json;

int exit_for(Errc code) {
  switch (code) {
    case Errc::kNotUnitPreserving:
    case Errc::kMalformedWitness:
    case Errc::kWitnessMismatch:
      return kNegative;
    case Errc::kInterpolationFailure:
      return kNumeric;
    default:
      return kUsage;
  }
}

Json error_doc(std::string_view code, std::string_view message) {
  Json j;
  j["status"] = "error";
  j["code"] = code;
  j["message"] = message;
  return j;
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Json one_based(const Index& index) {
  Json j = Json::array();
  for (int v : index) j.push_back(v + 1);
  return j;
}

Json pair_list(std::span<const Scalar> values) {
  Json j = Json::array();
  for (const Scalar& v : values) j.push_back(io::complex_pair(v));
  return j;
}

std::string describe(Scalar v) {
  std::ostringstream s;
  s.precision(6);
  s << v.real();
  if (v.imag() != 0.0) s << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
  return s.str();
}

// Settings shared by every subcommand.
struct Settings {
  Tolerances tol;
  double tol_decision = kDecisionTolerance;
};

struct Outcome {
  Json doc;
  int code = kSuccess;
};

Outcome cmd_product(const std::string& path_a, const std::string& path_b,
                    const std::string& out_path, std::ostream& err) {
  const Tensor a = io::read_tensor(path_a);
  const Tensor b = io::read_tensor(path_b);
  const Tensor c = general_product(a, b);
  Json doc = io::tensor_to_json(c);
  if (!out_path.empty()) io::write_file(out_path, doc);
  err << "product: order " << a.order() << " x order " << b.order() << " -> order "
      << c.order() << ", dim " << c.dim() << "\n";
  return {std::move(doc)};
}

StructuredWitness witness_for_transform(const std::string& path) {
  const Json j = io::read_file(path);
  if (j.is_object() && j.contains("witness")) {
    if (j.at("witness").is_null()) {
      throw Error(Errc::kParse, "the decision document carries no witness");
    }
    return io::structured_witness_from_json(j.at("witness"));
  }
  return io::structured_witness_from_json(j);
}

Outcome cmd_transform(const std::string& path_a, const std::string& perm,
                      const std::string& diag, const std::string& witness_path,
                      const std::string& out_path, std::ostream& err) {
  const Tensor a = io::read_tensor(path_a);
  StructuredWitness s{Permutation::identity(a.dim()), DiagonalScaling::identity(a.dim()),
                      a.order()};
  if (!witness_path.empty()) {
    s = witness_for_transform(witness_path);
    if (s.order != a.order()) {
      throw Error(Errc::kShapeMismatch, "witness order does not match the tensor order");
    }
  }
  if (!perm.empty()) s.sigma = Permutation::from_one_based(parse_perm_list(perm));
  if (!diag.empty()) s.d = DiagonalScaling(parse_diag_list(diag));
  if (s.sigma.size() != a.dim() || s.d.size() != a.dim()) {
    throw Error(Errc::kShapeMismatch, "permutation and scaling must have length dim");
  }
  const Tensor b = structured_transform(a, s);
  Json doc = io::tensor_to_json(b);
  if (!out_path.empty()) io::write_file(out_path, doc);
  err << "transform: order " << a.order() << ", dim " << a.dim() << ", nnz " << nnz(a)
      << " -> " << nnz(b) << "\n";
  return {std::move(doc)};
}

Witness read_witness(const std::string& path_p, const std::string& path_q, int m) {
  return {io::read_matrix(path_p), io::read_matrix(path_q), m};
}

Outcome cmd_check_witness(const std::string& path_p, const std::string& path_q, int m,
                          const Settings& settings, std::ostream& err) {
  const Witness w = read_witness(path_p, path_q, m);
  const Lemma21Report report = verify_lemma21(w, settings.tol.structural);
  const Tensor unit = unit_tensor(m, w.p.dim());
  const double unit_error =
      max_abs_diff(left_matrix_product(w.p, right_matrix_product(unit, w.q)), unit);
  const bool passed = report.unit_preserving && report.passed();

  Json doc;
  doc["m"] = m;
  doc["passed"] = passed;
  doc["unit_preserving"] = report.unit_preserving;
  doc["unit_error"] = unit_error;
  Json structure;
  structure["tail_check"] = report.tail_check;
  structure["max_tail_entry"] = report.max_tail_entry;
  structure["first_tail_violation"] =
      report.first_tail_violation ? one_based(*report.first_tail_violation) : Json(nullptr);
  structure["left_inverse_check"] = report.left_inverse_check;
  structure["left_inverse_error"] = report.left_inverse_error;
  doc["structure"] = std::move(structure);
  doc["P_generalized_permutation"] = w.p.is_generalized_permutation(settings.tol.structural);
  doc["Q_generalized_permutation"] = w.q.is_generalized_permutation(settings.tol.structural);

  err << "check-witness: " << (passed ? "passed" : "FAILED")
      << " (unit error " << unit_error << ", left-inverse error "
      << report.left_inverse_error << ")\n";
  return {std::move(doc), passed ? kSuccess : kNegative};
}

Outcome cmd_decompose(const std::string& path_p, const std::string& path_q, int m,
                      const Settings& settings, std::ostream& err) {
  const StructuredWitness s = decompose_witness(read_witness(path_p, path_q, m), settings.tol);
  err << "decompose: sigma =";
  for (int v : s.sigma.one_based()) err << ' ' << v;
  err << ", d =";
  for (const Scalar& v : s.d.values()) err << ' ' << describe(v);
  err << "\n";
  return {io::structured_witness_to_json(s)};
}

Outcome cmd_decide(const std::string& path_a, const std::string& path_b,
                   const std::string& out_path, const Settings& settings,
                   std::ostream& err) {
  const Tensor a = io::read_tensor(path_a);
  const Tensor b = io::read_tensor(path_b);
  const std::optional<StructuredWitness> s = decide_similar(a, b, settings.tol_decision);
  Json doc;
  doc["similar"] = s.has_value();
  if (!s) {
    doc["witness"] = nullptr;
    err << "decide: not similar\n";
    return {std::move(doc), kNegative};
  }
  const double residual =
      elementwise_relative_error(general_transform(a, compose_witness(*s)), b);
  doc["witness"] = io::structured_witness_to_json(*s);
  doc["residual"] = residual;
  if (!out_path.empty()) io::write_file(out_path, doc["witness"]);
  err << "decide: similar, reconstruction error " << residual << "\n";
  return {std::move(doc)};
}

Outcome cmd_invariants(const std::string& path_a, std::ostream& err) {
  const Tensor a = io::read_tensor(path_a);
  const InvariantReport r = similarity_invariants(a);
  Json doc;
  doc["order"] = r.order;
  doc["dim"] = r.dim;
  doc["nnz"] = r.nnz;
  if (r.pattern_hash) doc["pattern_hash"] = *r.pattern_hash;
  doc["diagonal"] = r.diagonal;
  if (r.triangularizable) doc["triangularizable"] = *r.triangularizable;
  err << "invariants: nnz " << r.nnz << (r.diagonal ? ", diagonal" : ", not diagonal")
      << "\n";
  return {std::move(doc)};
}

Outcome cmd_charpoly(const std::string& path_a, std::ostream& err) {
  const Tensor a = io::read_tensor(path_a);
  const CharPoly p = char_poly_dim2(a);
  const Spectrum sp = spectrum_dim2(a);
  Json doc;
  doc["order"] = a.order();
  doc["charpoly"] = io::char_poly_to_json(p);
  doc["degenerate"] = sp.degenerate;
  doc["spectrum"] = pair_list(sp.roots);
  if (sp.degenerate) {
    err << "charpoly: polynomial vanishes identically\n";
    return {std::move(doc), kNumeric};
  }
  Json pairs = Json::array();
  for (std::size_t k = 0; k < sp.roots.size(); ++k) {
    if (k > 0 && sp.roots[k] == sp.roots[k - 1]) continue;
    const std::vector<Scalar> x = eigenvector_dim2(a, sp.roots[k]);
    Json e;
    e["lambda"] = io::complex_pair(sp.roots[k]);
    e["x"] = pair_list(x);
    e["residual"] = eigen_residual(a, sp.roots[k], x);
    pairs.push_back(std::move(e));
  }
  doc["eigenpairs"] = std::move(pairs);
  err << "charpoly: degree " << p.degree() << ", roots:";
  for (const Scalar& r : sp.roots) err << ' ' << describe(r);
  err << "\n";
  return {std::move(doc)};
}

}  // namespace

std::vector<Scalar> parse_diag_list(std::string_view text) {
  static const std::regex literal(
      R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?:([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?)");
  std::vector<Scalar> out;
  for (std::string_view part : split_commas(text)) {
    const std::string token(trim(part));
    std::smatch match;
    if (!std::regex_match(token, match, literal)) {
      throw Error(Errc::kParse, "bad diagonal literal \"" + token + "\" (use re or re+imi)");
    }
    const double re = std::stod(match[1].str());
    const double im = match[2].matched ? std::stod(match[2].str()) : 0.0;
    out.emplace_back(re, im);
  }
  return out;
}

std::vector<int> parse_perm_list(std::string_view text) {
  std::vector<int> out;
  for (std::string_view part : split_commas(text)) {
    const std::string_view token = trim(part);
    int v = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || end != token.data() + token.size() || token.empty()) {
      throw Error(Errc::kParse, "bad permutation entry \"" + std::string(token) + "\"");
    }
    out.push_back(v);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tensor similarity toolkit. Writes one JSON document to stdout.", "tsim"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Settings settings;
  app.add_option("--tol-structural", settings.tol.structural,
                 "Entries below this count as structural zeros")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-compare", settings.tol.compare,
                 "Scaled elementwise tolerance for comparisons")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-decision", settings.tol_decision,
                 "Relative reconstruction tolerance of the similarity decision")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::string path_a, path_b, path_p, path_q, out_path, perm, diag, witness_path, demo;
  int m = 0;

  CLI::App* product = app.add_subcommand("product", "General product A B of two tensor files");
  product->add_option("A", path_a, "Tensor file")->required();
  product->add_option("B", path_b, "Tensor file")->required();
  product->add_option("-o,--out", out_path, "Also write the result to this file");

  CLI::App* transform = app.add_subcommand(
      "transform",
      "Apply B = R^T (D^{1-m} A D) R: the diagonal part first, then the permutation");
  transform->add_option("A", path_a, "Tensor file")->required();
  CLI::Option* perm_opt = transform->add_option(
      "--perm", perm, "Permutation as the 1-based image list s(1),s(2),...; "
                      "B[s(i1),...,s(im)] = C[i1,...,im]");
  CLI::Option* diag_opt = transform->add_option(
      "--diag", diag, "Diagonal of D as comma separated re or re+imi literals");
  transform
      ->add_option("--witness", witness_path,
                   "Structured witness file, or the output of the decide command")
      ->excludes(perm_opt)
      ->excludes(diag_opt);
  transform->add_option("-o,--out", out_path, "Also write the result to this file");

  CLI::App* check = app.add_subcommand(
      "check-witness", "Check that (P, Q) preserves the unit tensor of order m");
  check->add_option("P", path_p, "Matrix file")->required();
  check->add_option("Q", path_q, "Matrix file")->required();
  check->add_option("-m,--m", m, "Tensor order")->required()->check(CLI::Range(2, 64));

  CLI::App* decompose = app.add_subcommand(
      "decompose", "Factor a unit-preserving pair (P, Q) into a permutation and a diagonal");
  decompose->add_option("P", path_p, "Matrix file")->required();
  decompose->add_option("Q", path_q, "Matrix file")->required();
  decompose->add_option("-m,--m", m, "Tensor order (>= 3)")->required()->check(CLI::Range(2, 64));

  CLI::App* decide = app.add_subcommand("decide", "Decide whether B is similar to A");
  decide->add_option("A", path_a, "Tensor file")->required();
  decide->add_option("B", path_b, "Tensor file")->required();
  decide->add_option("-o,--out", out_path, "Write the structured witness to this file");

  CLI::App* invariants =
      app.add_subcommand("invariants", "Similarity invariants of a tensor");
  invariants->add_option("A", path_a, "Tensor file")->required();

  CLI::App* charpoly = app.add_subcommand(
      "charpoly", "Characteristic polynomial and spectrum of a dimension-2 tensor");
  charpoly->add_option("A", path_a, "Tensor file")->required();

  CLI::App* demo_cmd = app.add_subcommand("demo", "Self-contained worked examples");
  demo_cmd->add_option("name", demo, "Demo name")
      ->required()
      ->check(CLI::IsMember(demo_names()));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, err, err);
    if (status == 0) {
      Json doc;
      doc["status"] = "help";
      out << io::dump(doc);
      return kSuccess;
    }
    out << io::dump(error_doc("usage", e.what()));
    return kUsage;
  }

  try {
    Outcome result;
    if (product->parsed()) {
      result = cmd_product(path_a, path_b, out_path, err);
    } else if (transform->parsed()) {
      result = cmd_transform(path_a, perm, diag, witness_path, out_path, err);
    } else if (check->parsed()) {
      result = cmd_check_witness(path_p, path_q, m, settings, err);
    } else if (decompose->parsed()) {
      result = cmd_decompose(path_p, path_q, m, settings, err);
    } else if (decide->parsed()) {
      result = cmd_decide(path_a, path_b, out_path, settings, err);
    } else if (invariants->parsed()) {
      result = cmd_invariants(path_a, err);
    } else if (charpoly->parsed()) {
      result = cmd_charpoly(path_a, err);
    } else {
      DemoResult d = run_demo(demo);
      err << d.summary;
      result = {std::move(d.doc), d.exit_code};
    }
    out << io::dump(result.doc);
    return result.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    out << io::dump(error_doc(errc_name(e.code()), e.what()));
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    out << io::dump(error_doc("internal", e.what()));
    return kNumeric;
  }
}

}  // namespace tsim::cli
