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

#ifndef TSIM_TESTS_SUPPORT_GTEST_HELPERS_HPP_
#define TSIM_TESTS_SUPPORT_GTEST_HELPERS_HPP_

#include <gtest/gtest.h>

#include <functional>

#include "tsim/error.hpp"

namespace tsim::testing {

inline void expect_code(Errc code, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "expected error " << errc_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace tsim::testing

#endif  // TSIM_TESTS_SUPPORT_GTEST_HELPERS_HPP_
