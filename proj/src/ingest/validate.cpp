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

#include <etherscope/ingest/validate.hpp>

#include <set>

namespace etherscope::ingest {

std::string_view to_string(DefectCode code) noexcept {
    switch (code) {
        case DefectCode::kBrokenParentLink: return "BrokenParentLink";
        case DefectCode::kNonMonotoneNumber: return "NonMonotoneNumber";
        case DefectCode::kNonMonotoneTimestamp: return "NonMonotoneTimestamp";
        case DefectCode::kMissingReceipt: return "MissingReceipt";
        case DefectCode::kOrphanTrace: return "OrphanTrace";
        case DefectCode::kBadTxIndex: return "BadTxIndex";
    }
    return "Unknown";
}

void ChainValidator::feed(const RawBundle& bundle) {
    const Block& b = bundle.block;
    auto add = [&](DefectCode code, std::string detail) { defects_.push_back({b.number, code, std::move(detail)}); };

    if (prev_) {
        if (b.number != prev_->number + 1) {
            add(DefectCode::kNonMonotoneNumber,
                "block " + std::to_string(b.number) + " follows block " + std::to_string(prev_->number));
        } else if (b.parent_hash != prev_->hash) {
            add(DefectCode::kBrokenParentLink,
                "parent " + b.parent_hash.hex() + " != hash of previous block " + prev_->hash.hex());
        }
        if (b.timestamp < prev_->timestamp) {
            add(DefectCode::kNonMonotoneTimestamp,
                "timestamp " + std::to_string(b.timestamp) + " < " + std::to_string(prev_->timestamp));
        }
    }

    for (std::size_t i = 0; i < b.transactions.size(); ++i) {
        if (b.transactions[i].tx_index != i) {
            add(DefectCode::kBadTxIndex, "transaction at position " + std::to_string(i) + " has index " +
                                             std::to_string(b.transactions[i].tx_index));
            break;
        }
    }

    std::set<Hash32> in_block;
    for (const auto& tx : b.transactions) {
        in_block.insert(tx.hash);
        if (!bundle.receipts.contains(tx.hash)) add(DefectCode::kMissingReceipt, "no receipt for " + tx.hash.hex());
    }
    for (const auto& [hash, frames] : bundle.traces) {
        if (!in_block.contains(hash)) add(DefectCode::kOrphanTrace, "trace for unknown transaction " + hash.hex());
    }

    prev_ = Previous{b.number, b.hash, b.timestamp};
}

ValidationReport ChainValidator::finish() const { return ValidationReport{defects_.empty(), defects_}; }

ValidationReport validate_chain(std::span<const RawBundle> bundles) {
    ChainValidator v;
    for (const auto& b : bundles) v.feed(b);
    return v.finish();
}

}  // namespace etherscope::ingest
