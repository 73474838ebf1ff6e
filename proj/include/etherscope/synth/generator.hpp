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

#include <etherscope/ingest/raw_bundle.hpp>
#include <etherscope/synth/config.hpp>
#include <etherscope/synth/ground_truth.hpp>

#include <filesystem>

namespace etherscope::synth {

struct GeneratedChain {
    ingest::Corpus bundles;
    GroundTruth truth;
};

// Builds the corpus block by block from one seeded stream. Contracts are
// deployed first (25 per block), then every block runs, in order: factory
// spawns, Ponzi investments, lottery entries and draws, token transfers,
// factory-child calls and plain wallet transfers. A transaction the sender
// cannot afford, or that would overflow the block gas limit, is dropped.
//
// Throws kInvalidConfig. With default activity and n_blocks >= 500 it also
// checks that every Ponzi contract has more participants and more payments
// than every lottery contract, and throws std::logic_error if not.
GeneratedChain generate_chain(const GenConfig& config);

// generate_chain, then blocks/receipts/traces JSONL, ground_truth.json and
// labels.csv into `dir`.
GroundTruth generate(const GenConfig& config, const std::filesystem::path& dir);

}  // namespace etherscope::synth
