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

#ifndef TSIM_TSIM_HPP_
#define TSIM_TSIM_HPP_

#include "tsim/decision.hpp"
#include "tsim/error.hpp"
#include "tsim/io.hpp"
#include "tsim/product.hpp"
#include "tsim/similarity.hpp"
#include "tsim/spectral.hpp"
#include "tsim/tensor.hpp"

#endif  // TSIM_TSIM_HPP_
