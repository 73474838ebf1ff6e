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

#include <etherscope/synth/random.hpp>

#include <cmath>
#include <numbers>

namespace etherscope::synth {

uint64_t Rng::below(uint64_t n) {
    // Rejection keeps the result unbiased.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % n;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

uint64_t Rng::poisson(double mean) {
    if (mean <= 0) return 0;
    const double limit = std::exp(-mean);
    uint64_t k = 0;
    double p = uniform();
    while (p > limit) {
        ++k;
        p *= uniform();
    }
    return k;
}

Bytes Rng::bytes(std::size_t n) {
    Bytes out(n);
    for (std::size_t i = 0; i < n; i += 8) {
        const uint64_t x = next();
        for (std::size_t j = 0; j < 8 && i + j < n; ++j) out[i + j] = static_cast<uint8_t>(x >> (8 * j));
    }
    return out;
}

Address Rng::address() {
    std::array<uint8_t, 20> a{};
    auto b = bytes(20);
    std::copy(b.begin(), b.end(), a.begin());
    return Address(a);
}

Hash32 Rng::hash() {
    std::array<uint8_t, 32> h{};
    auto b = bytes(32);
    std::copy(b.begin(), b.end(), h.begin());
    return Hash32(h);
}

}  // namespace etherscope::synth
