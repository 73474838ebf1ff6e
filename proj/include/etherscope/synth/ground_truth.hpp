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
#include <etherscope/derive/records.hpp>
#include <etherscope/flow/flowgraph.hpp>
#include <etherscope/ponzi/features.hpp>
#include <etherscope/ponzi/opcodes.hpp>
#include <etherscope/synth/config.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string_view>
#include <vector>

namespace etherscope::synth {

enum class Archetype : uint8_t { kPonzi, kLottery, kErc20, kErc721, kFactory, kFactoryChild };

std::string_view to_string(Archetype a) noexcept;
Archetype parse_archetype(std::string_view text);

struct TruthContract {
    Address address;
    Archetype archetype{Archetype::kPonzi};
    ponzi::Label label{ponzi::Label::kNormal};
    Address creator;
    uint64_t creation_block{0};
    Hash32 creation_tx_hash;
    derive::CreationMode creation_mode{derive::CreationMode::kTopLevel};
    // What the generator emitted into the creation payload, counted as it
    // was written. Empty for internal creations.
    ponzi::OpcodeHistogram opcodes;

    friend bool operator==(const TruthContract&, const TruthContract&) = default;
};

struct TruthFlowEvent {
    uint64_t block_number{0};
    Hash32 tx_hash;
    TracePath trace_path;
    flow::FlowKind kind{flow::FlowKind::kInvestment};
    Address counterparty;
    Wei amount;

    friend bool operator==(const TruthFlowEvent&, const TruthFlowEvent&) = default;
};

// Gas prices of every transaction in a block, failed ones included.
struct TruthGas {
    uint64_t block_number{0};
    uint64_t tx_count{0};
    Wei sum;
    Wei min;
    Wei max;

    friend bool operator==(const TruthGas&, const TruthGas&) = default;
};

struct TruthTokenTransfer {
    uint64_t block_number{0};
    Hash32 tx_hash;
    uint32_t log_index{0};
    Address token;
    Address from;
    Address to;
    U256 amount_or_token_id{0};
    derive::TokenStandard standard{derive::TokenStandard::kErc20};

    friend bool operator==(const TruthTokenTransfer&, const TruthTokenTransfer&) = default;
};

struct TruthMalformedLog {
    uint64_t block_number{0};
    Hash32 tx_hash;
    uint32_t log_index{0};
    derive::TokenStandard standard{derive::TokenStandard::kErc20};

    friend bool operator==(const TruthMalformedLog&, const TruthMalformedLog&) = default;
};

struct GroundTruth {
    GenConfig config;
    std::map<Address, Wei> genesis;
    std::vector<Address> miners;
    std::vector<TruthContract> contracts;  // creation order
    std::map<Address, std::vector<TruthFlowEvent>> flows;
    // Every address that ever held or moved ether, zero balances included.
    std::map<Address, Wei> balances;
    std::vector<TruthGas> gas;
    uint32_t gas_period{0};
    std::vector<TruthTokenTransfer> token_transfers;
    std::vector<TruthMalformedLog> malformed_logs;
    // Contract-call records per callee: top-level transactions and
    // call/delegatecall/staticcall frames into a known contract.
    std::map<Address, uint64_t> contract_calls;
    uint64_t tx_count{0};
    uint64_t internal_transfer_count{0};

    [[nodiscard]] std::map<Address, ponzi::Label> labels() const;
    [[nodiscard]] std::vector<Address> contracts_of(Archetype a) const;

    friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

inline constexpr std::string_view kGroundTruthFile = "ground_truth.json";
inline constexpr std::string_view kLabelsFile = "labels.csv";

// Canonical JSON: sorted keys, two-space indent, wei as decimal strings.
std::string encode_ground_truth(const GroundTruth& truth);
GroundTruth decode_ground_truth(std::string_view text);
void write_ground_truth(const GroundTruth& truth, const std::filesystem::path& path);
GroundTruth read_ground_truth(const std::filesystem::path& path);

}  // namespace etherscope::synth
