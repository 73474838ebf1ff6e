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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace etherscope::derive {

// (1) Block and Transaction
struct BlockTxRecord {
    uint64_t block_number{0};
    uint64_t timestamp{0};
    Address miner;
    Hash32 tx_hash;
    uint32_t tx_index{0};
    Address from;
    std::optional<Address> to;
    Wei value;
    Wei gas_price;
    uint64_t gas_used_by_tx{0};
    TxStatus status{TxStatus::kSuccess};

    friend bool operator==(const BlockTxRecord&, const BlockTxRecord&) = default;
};

// (2) Internal Ether Transaction
struct InternalTransferRecord {
    uint64_t block_number{0};
    Hash32 tx_hash;
    TracePath trace_path;
    Address from;
    Address to;
    Wei value;
    FrameKind kind{FrameKind::kCall};

    friend bool operator==(const InternalTransferRecord&, const InternalTransferRecord&) = default;
};

enum class CreationMode : uint8_t { kTopLevel, kInternalCreate };

std::string_view to_string(CreationMode m) noexcept;

// (3) Contract Information
struct ContractInfoRecord {
    Address contract_address;
    Address creator;
    uint64_t creation_block{0};
    Hash32 creation_tx_hash;
    CreationMode creation_mode{CreationMode::kTopLevel};
    Bytes code;

    friend bool operator==(const ContractInfoRecord&, const ContractInfoRecord&) = default;
};

using Selector = std::array<uint8_t, 4>;

// (4) Contract Calls
struct ContractCallRecord {
    uint64_t block_number{0};
    Hash32 tx_hash;
    TracePath trace_path;  // empty for the top-level call
    Address caller;
    Address callee;
    Wei value;
    FrameKind kind{FrameKind::kCall};
    std::optional<Selector> selector;
    TxStatus status{TxStatus::kSuccess};

    friend bool operator==(const ContractCallRecord&, const ContractCallRecord&) = default;
};

enum class TokenStandard : uint8_t { kErc20, kErc721 };

std::string_view to_string(TokenStandard s) noexcept;

// (5) ERC20 and (6) ERC721 Token Transactions
struct TokenTransferRecord {
    uint64_t block_number{0};
    Hash32 tx_hash;
    uint32_t log_index{0};  // position among all logs of the block
    Address token_contract;
    Address from;
    Address to;
    U256 amount_or_token_id{0};
    TokenStandard standard{TokenStandard::kErc20};

    friend bool operator==(const TokenTransferRecord&, const TokenTransferRecord&) = default;
};

// A log that carries the Transfer signature and a recognised topic count but
// whose data does not fit the standard. Skipped, never decoded.
struct MalformedTransferLog {
    uint64_t block_number{0};
    Hash32 tx_hash;
    uint32_t log_index{0};
    TokenStandard standard{TokenStandard::kErc20};
    std::string detail;

    friend bool operator==(const MalformedTransferLog&, const MalformedTransferLog&) = default;
};

struct SixDatasets {
    std::vector<BlockTxRecord> block_txs;
    std::vector<InternalTransferRecord> internal_transfers;
    std::vector<ContractInfoRecord> contracts;
    std::vector<ContractCallRecord> calls;
    std::vector<TokenTransferRecord> erc20;
    std::vector<TokenTransferRecord> erc721;
    std::vector<MalformedTransferLog> defects;

    friend bool operator==(const SixDatasets&, const SixDatasets&) = default;
};

}  // namespace etherscope::derive
