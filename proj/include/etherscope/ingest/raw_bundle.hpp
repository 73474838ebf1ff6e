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

#include <etherscope/chain/model.hpp>

#include <map>
#include <span>
#include <vector>

namespace etherscope::ingest {

// One block joined with its receipts and trace frames. Transactions without
// sub-frames have no entry in `traces`.
struct RawBundle {
    Block block;
    std::map<Hash32, Receipt> receipts;
    std::map<Hash32, std::vector<TraceFrame>> traces;

    [[nodiscard]] const Receipt* receipt_for(const Hash32& tx_hash) const {
        auto it = receipts.find(tx_hash);
        return it == receipts.end() ? nullptr : &it->second;
    }

    [[nodiscard]] std::span<const TraceFrame> traces_for(const Hash32& tx_hash) const {
        auto it = traces.find(tx_hash);
        if (it == traces.end()) return {};
        return it->second;
    }

    friend bool operator==(const RawBundle&, const RawBundle&) = default;
};

using Corpus = std::vector<RawBundle>;

// Joins per-range block, receipt and trace lists into bundles ordered by
// block number. Throws kMissingReceipt, kOrphanReceipt or kOrphanTrace.
Corpus join_records(std::vector<Block> blocks, std::vector<Receipt> receipts, std::vector<TraceFrame> traces);

}  // namespace etherscope::ingest
