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
#include <etherscope/chain/wei.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace etherscope {

struct Transaction {
    Hash32 hash;
    uint64_t block_number{0};
    uint32_t tx_index{0};
    Address from;
    std::optional<Address> to;  // absent for contract creation
    Wei value;
    uint64_t gas{0};
    Wei gas_price;
    Bytes input;
    uint64_t nonce{0};

    [[nodiscard]] bool is_creation() const noexcept { return !to.has_value(); }

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

struct Block {
    uint64_t number{0};
    Hash32 hash;
    Hash32 parent_hash;
    uint64_t timestamp{0};
    Address miner;
    uint64_t gas_limit{0};
    uint64_t gas_used{0};
    std::vector<Transaction> transactions;

    friend bool operator==(const Block&, const Block&) = default;
};

enum class TxStatus : uint8_t { kFailure = 0, kSuccess = 1 };

std::string_view to_string(TxStatus s) noexcept;

struct LogEvent {
    Address address;
    std::vector<Hash32> topics;  // topics[0] is the event signature
    Bytes data;

    friend bool operator==(const LogEvent&, const LogEvent&) = default;
};

struct Receipt {
    Hash32 tx_hash;
    uint64_t block_number{0};
    TxStatus status{TxStatus::kSuccess};
    uint64_t gas_used{0};
    std::optional<Address> contract_address;
    std::vector<LogEvent> logs;

    friend bool operator==(const Receipt&, const Receipt&) = default;
};

enum class FrameKind : uint8_t { kCall, kDelegateCall, kStaticCall, kCreate, kSelfDestruct };

// "call", "delegatecall", ... as used in trace exports.
std::string_view to_string(FrameKind k) noexcept;
FrameKind parse_frame_kind(std::string_view text);

using TracePath = std::vector<uint32_t>;

// "0.2.1"; empty for the top-level frame.
std::string format_trace_path(const TracePath& path);

// True when `prefix` is a proper prefix of `path`.
bool is_ancestor(const TracePath& prefix, const TracePath& path) noexcept;

struct TraceFrame {
    Hash32 tx_hash;
    uint64_t block_number{0};
    TracePath trace_path;  // empty = top-level frame
    FrameKind kind{FrameKind::kCall};
    Address from;
    Address to;
    Wei value;
    uint64_t gas_used{0};
    std::optional<std::string> error;

    [[nodiscard]] bool is_top_level() const noexcept { return trace_path.empty(); }

    friend bool operator==(const TraceFrame&, const TraceFrame&) = default;
};

// Total order over frames of one corpus: block, then index of the owning
// transaction, then trace path lexicographically (a parent precedes its
// children).
struct TraceOrderKey {
    uint64_t block_number;
    uint32_t tx_index;
    const TracePath* path;

    friend bool operator<(const TraceOrderKey& a, const TraceOrderKey& b) noexcept {
        if (a.block_number != b.block_number) return a.block_number < b.block_number;
        if (a.tx_index != b.tx_index) return a.tx_index < b.tx_index;
        return *a.path < *b.path;
    }
};

}  // namespace etherscope
