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

#include <etherscope/chain/bytes.hpp>

#include <cstdint>
#include <random>

namespace etherscope::synth {

// Seeded source for the generator. The engine is mt19937_64 and every
// distribution is implemented here, so a seed produces the same corpus with
// any standard library.
class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next() { return engine_(); }
    // Uniform in [0, n); n must be positive.
    uint64_t below(uint64_t n);
    // Uniform in [lo, hi].
    uint64_t between(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }
    // Uniform in [0, 1) with 53 random bits.
    double uniform();
    bool chance(double p) { return uniform() < p; }
    // Standard normal (Box-Muller, one draw per call).
    double normal();
    // Knuth's product method; fine for the small means used here.
    uint64_t poisson(double mean);

    Address address();
    Hash32 hash();
    Bytes bytes(std::size_t n);

  private:
    std::mt19937_64 engine_;
};

}  // namespace etherscope::synth
