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

#include <etherscope/derive/records.hpp>
#include <etherscope/ingest/raw_bundle.hpp>

#include <filesystem>
#include <map>
#include <span>
#include <vector>

namespace etherscope::derive {

using ingest::RawBundle;

// keccak-256("Transfer(address,address,uint256)"), shared by ERC20 and ERC721.
extern const Hash32 kTransferSignature;

// One record per transaction, in transaction order.
std::vector<BlockTxRecord> derive_block_transactions(const RawBundle& bundle);

// Frame-level success: the receipt succeeded and neither the frame nor any of
// its ancestors carries an error. `frames` is the transaction's frame list.
bool frame_succeeded(std::span<const TraceFrame> frames, const TraceFrame& frame, const Receipt* receipt);

// Value-carrying sub-frames (call, create, selfdestruct) that took effect.
std::vector<InternalTransferRecord> derive_internal_transfers(const RawBundle& bundle);

// Top-level creations plus successful internal create frames. Internal
// creations carry no code: trace exports hold no frame payload. Throws
// kDuplicateContractAddress.
std::vector<ContractInfoRecord> derive_contract_info(std::span<const RawBundle> bundles);

class ContractRegistry {
  public:
    ContractRegistry() = default;
    explicit ContractRegistry(std::span<const ContractInfoRecord> contracts);

    // Known and already created at `block_number`.
    [[nodiscard]] bool contains(const Address& a, uint64_t block_number) const;
    [[nodiscard]] const ContractInfoRecord* find(const Address& a) const;
    [[nodiscard]] std::size_t size() const noexcept { return by_address_.size(); }

  private:
    std::map<Address, ContractInfoRecord> by_address_;
};

std::vector<ContractCallRecord> derive_contract_calls(const RawBundle& bundle, const ContractRegistry& registry);
std::vector<ContractCallRecord> derive_contract_calls(std::span<const RawBundle> bundles,
                                                      const ContractRegistry& registry);

struct TokenDecodeResult {
    std::vector<TokenTransferRecord> transfers;
    std::vector<MalformedTransferLog> defects;
};

// Transfer logs with exactly three topics; data must be one 32-byte word.
TokenDecodeResult decode_erc20_transfers(const RawBundle& bundle);
// Transfer logs with exactly four topics; data must be empty.
TokenDecodeResult decode_erc721_transfers(const RawBundle& bundle);

struct DeriveOptions {
    unsigned workers{1};
};

// All six datasets in one pass. Contract info is built sequentially first;
// per-block work is then split into contiguous shards and concatenated in
// block order, so output does not depend on the worker count.
SixDatasets derive_all(std::span<const RawBundle> bundles, const DeriveOptions& options = {});

struct DatasetSummary {
    std::array<std::size_t, 6> rows{};
    std::size_t defects{0};
};

DatasetSummary summarize(const SixDatasets& datasets);

// Writes dataset1_block_tx.csv .. dataset6_erc721.csv plus defects.csv.
// Files are staged in a sibling temporary directory and moved into place; a
// failure leaves no partial output behind.
DatasetSummary write_datasets(const SixDatasets& datasets, const std::filesystem::path& dir);

// derive_all + write_datasets.
DatasetSummary derive_to_directory(std::span<const RawBundle> bundles, const std::filesystem::path& dir,
                                   const DeriveOptions& options = {});

}  // namespace etherscope::derive
