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

#include <etherscope/derive/derive.hpp>

#include <algorithm>

namespace etherscope::derive {

const Hash32 kTransferSignature = Hash32::parse("0xddf252ad1be2c89b69c2b068fc378daa952ba7f163c4a11628f55a4df523b3ef");

namespace {

// Indexed address topics are left-padded to 32 bytes; the address is the tail.
Address address_from_topic(const Hash32& topic) {
    std::array<uint8_t, 20> a{};
    std::copy(topic.bytes().begin() + 12, topic.bytes().end(), a.begin());
    return Address(a);
}

TokenDecodeResult decode_transfers(const RawBundle& bundle, TokenStandard standard) {
    const std::size_t topic_count = standard == TokenStandard::kErc20 ? 3 : 4;
    TokenDecodeResult out;
    uint32_t log_index = 0;
    for (const auto& tx : bundle.block.transactions) {
        const Receipt* r = bundle.receipt_for(tx.hash);
        if (r == nullptr) continue;
        for (const auto& log : r->logs) {
            const uint32_t index = log_index++;
            if (log.topics.size() != topic_count || log.topics[0] != kTransferSignature) continue;

            const bool ok = standard == TokenStandard::kErc20 ? log.data.size() == 32 : log.data.empty();
            if (!ok) {
                out.defects.push_back({bundle.block.number, tx.hash, index, standard,
                                       "Transfer log with " + std::to_string(topic_count) + " topics has " +
                                           std::to_string(log.data.size()) + " data bytes"});
                continue;
            }
            TokenTransferRecord rec;
            rec.block_number = bundle.block.number;
            rec.tx_hash = tx.hash;
            rec.log_index = index;
            rec.token_contract = log.address;
            rec.from = address_from_topic(log.topics[1]);
            rec.to = address_from_topic(log.topics[2]);
            rec.amount_or_token_id =
                standard == TokenStandard::kErc20 ? u256_from_be(log.data) : u256_from_be(log.topics[3].bytes());
            rec.standard = standard;
            out.transfers.push_back(std::move(rec));
        }
    }
    return out;
}

}  // namespace

TokenDecodeResult decode_erc20_transfers(const RawBundle& bundle) {
    return decode_transfers(bundle, TokenStandard::kErc20);
}

TokenDecodeResult decode_erc721_transfers(const RawBundle& bundle) {
    return decode_transfers(bundle, TokenStandard::kErc721);
}

}  // namespace etherscope::derive
