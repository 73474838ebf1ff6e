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
#include <etherscope/ingest/raw_bundle.hpp>

#include <algorithm>
#include <optional>
#include <string>

namespace etherscope::testing {

using ingest::RawBundle;

inline Address addr(uint8_t n) {
    std::array<uint8_t, 20> b{};
    b[19] = n;
    return Address(b);
}
inline Hash32 hash(uint8_t n) {
    std::array<uint8_t, 32> b{};
    b[31] = n;
    return Hash32(b);
}
inline Hash32 topic_of(const Address& a) {
    std::array<uint8_t, 32> b{};
    std::copy(a.bytes().begin(), a.bytes().end(), b.begin() + 12);
    return Hash32(b);
}
inline Hash32 topic_of(uint64_t v) {
    return Hash32(u256_to_be32(U256(v)));
}

// Hand-built block; transactions appended with add().
struct BundleBuilder {
    RawBundle b;

    explicit BundleBuilder(uint64_t number) {
        b.block.number = number;
        b.block.hash = hash(static_cast<uint8_t>(200 + number));
        b.block.miner = addr(250);
        b.block.gas_limit = 30'000'000;
    }

    Transaction& add(uint8_t h, uint8_t from, std::optional<uint8_t> to, uint64_t value, Bytes input = {},
                     TxStatus status = TxStatus::kSuccess) {
        Transaction tx;
        tx.hash = hash(h);
        tx.block_number = b.block.number;
        tx.tx_index = static_cast<uint32_t>(b.block.transactions.size());
        tx.from = addr(from);
        if (to) tx.to = addr(*to);
        tx.value = Wei(value);
        tx.gas = 100000;
        tx.gas_price = Wei(1);
        tx.input = std::move(input);
        Receipt r;
        r.tx_hash = tx.hash;
        r.block_number = tx.block_number;
        r.status = status;
        r.gas_used = 21000;
        b.receipts[tx.hash] = r;
        b.block.transactions.push_back(tx);
        return b.block.transactions.back();
    }

    TraceFrame& frame(uint8_t h, TracePath path, FrameKind kind, uint8_t from, uint8_t to, uint64_t value,
                      std::optional<std::string> error = std::nullopt) {
        TraceFrame f;
        f.tx_hash = hash(h);
        f.block_number = b.block.number;
        f.trace_path = std::move(path);
        f.kind = kind;
        f.from = addr(from);
        f.to = addr(to);
        f.value = Wei(value);
        f.error = std::move(error);
        auto& v = b.traces[f.tx_hash];
        v.push_back(f);
        return v.back();
    }

    Receipt& receipt(uint8_t h) { return b.receipts.at(hash(h)); }
};

}  // namespace etherscope::testing
