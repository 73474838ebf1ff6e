/*
   Copyright 2026 The etherscope Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <etherscope/chain/wei.hpp>

#include <span>

namespace etherscope::ponzi {

// Gini coefficient sum_i sum_j |x_i - x_j| / (2 n^2 mean), evaluated exactly
// in integer arithmetic and rounded once to double. Throws kEmptyInput or
// kAllZero.
double gini(std::span<const Wei> amounts);

}  // namespace etherscope::ponzi
