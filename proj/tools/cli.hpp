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

#ifndef TSIM_TOOLS_CLI_HPP_
#define TSIM_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tsim/io.hpp"

namespace tsim::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,
  kUsage = 2,
  kNumeric = 3,
};

// Runs one command line (without the program name). Exactly one JSON
// document is written to `out`; human-readable text goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses a comma separated list of "re" or "re+imi" literals.
std::vector<Scalar> parse_diag_list(std::string_view text);
// Parses a comma separated one-line image list with 1-based labels.
std::vector<int> parse_perm_list(std::string_view text);

// Self-contained demo documents. Each returns the exit code it would report.
struct DemoResult {
  io::Json doc;
  std::string summary;
  int exit_code = kSuccess;
};
std::vector<std::string> demo_names();
DemoResult run_demo(std::string_view name);

}  // namespace tsim::cli

#endif  // TSIM_TOOLS_CLI_HPP_
