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

#include <etherscope/error.hpp>
#include <etherscope/ponzi/gini.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <vector>

namespace etherscope::ponzi {

double gini(std::span<const Wei> amounts) {
    using boost::multiprecision::cpp_int;
    if (amounts.empty()) throw Error(Errc::kEmptyInput, "gini of no amounts");

    std::vector<U256> xs;
    xs.reserve(amounts.size());
    for (const auto& a : amounts) xs.push_back(a.value());
    std::sort(xs.begin(), xs.end());

    // With ascending x, sum_i sum_j |x_i - x_j| = 2 sum_i (2i - n + 1) x_i.
    const auto n = static_cast<long long>(xs.size());
    cpp_int weighted = 0;
    cpp_int total = 0;
    for (long long i = 0; i < n; ++i) {
        const cpp_int x = xs[static_cast<std::size_t>(i)];
        weighted += x * (2 * i - n + 1);
        total += x;
    }
    if (total == 0) throw Error(Errc::kAllZero, "gini of all-zero amounts");
    // G = 2 * weighted / (2 * n * total)
    const cpp_int denom = total * n;
    const cpp_int q = weighted / denom;
    const cpp_int r = weighted % denom;
    return q.convert_to<double>() + r.convert_to<double>() / denom.convert_to<double>();
}

}  // namespace etherscope::ponzi
