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

#ifndef TSIM_ERROR_HPP_
#define TSIM_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsim {

enum class Errc {
  kInvalidOrder,
  kDimensionMismatch,
  kShapeMismatch,
  kSizeLimit,
  kIndexOutOfRange,
  kInvalidPermutation,
  kZeroDiagonal,
  kNotUnitPreserving,
  kMalformedWitness,
  kWitnessMismatch,
  kUnsupportedDimension,
  kSearchTooLarge,
  kZeroVector,
  kInterpolationFailure,
  kParse,
};

std::string_view errc_name(Errc code);

// All library failures are reported through this type. The code is stable and
// is what the CLI maps onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tsim

#endif  // TSIM_ERROR_HPP_
