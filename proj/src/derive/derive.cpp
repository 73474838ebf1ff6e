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
#include <etherscope/error.hpp>

#include <algorithm>
#include <set>
#include <thread>

namespace etherscope::derive {

std::string_view to_string(CreationMode m) noexcept {
    return m == CreationMode::kTopLevel ? "top_level" : "internal_create";
}

std::string_view to_string(TokenStandard s) noexcept { return s == TokenStandard::kErc20 ? "erc20" : "erc721"; }

std::vector<BlockTxRecord> derive_block_transactions(const RawBundle& bundle) {
    const Block& b = bundle.block;
    std::vector<BlockTxRecord> out;
    out.reserve(b.transactions.size());
    for (const auto& tx : b.transactions) {
        const Receipt* r = bundle.receipt_for(tx.hash);
        out.push_back(BlockTxRecord{
            .block_number = b.number,
            .timestamp = b.timestamp,
            .miner = b.miner,
            .tx_hash = tx.hash,
            .tx_index = tx.tx_index,
            .from = tx.from,
            .to = tx.to,
            .value = tx.value,
            .gas_price = tx.gas_price,
            .gas_used_by_tx = r ? r->gas_used : 0,
            .status = r ? r->status : TxStatus::kFailure,
        });
    }
    return out;
}

bool frame_succeeded(std::span<const TraceFrame> frames, const TraceFrame& frame, const Receipt* receipt) {
    if (receipt == nullptr || receipt->status != TxStatus::kSuccess) return false;
    if (frame.error) return false;
    for (const auto& other : frames) {
        if (other.error && is_ancestor(other.trace_path, frame.trace_path)) return false;
    }
    return true;
}

namespace {

bool moves_value(FrameKind k) noexcept {
    return k == FrameKind::kCall || k == FrameKind::kCreate || k == FrameKind::kSelfDestruct;
}

bool is_call_kind(FrameKind k) noexcept {
    return k == FrameKind::kCall || k == FrameKind::kDelegateCall || k == FrameKind::kStaticCall;
}

}  // namespace

std::vector<InternalTransferRecord> derive_internal_transfers(const RawBundle& bundle) {
    std::vector<InternalTransferRecord> out;
    for (const auto& tx : bundle.block.transactions) {
        auto frames = bundle.traces_for(tx.hash);
        const Receipt* receipt = bundle.receipt_for(tx.hash);
        for (const auto& f : frames) {
            if (f.is_top_level() || f.value.is_zero() || !moves_value(f.kind)) continue;
            if (!frame_succeeded(frames, f, receipt)) continue;
            out.push_back({bundle.block.number, tx.hash, f.trace_path, f.from, f.to, f.value, f.kind});
        }
    }
    return out;
}

std::vector<ContractInfoRecord> derive_contract_info(std::span<const RawBundle> bundles) {
    std::vector<ContractInfoRecord> out;
    std::set<Address> seen;
    auto add = [&](ContractInfoRecord rec) {
        if (!seen.insert(rec.contract_address).second) {
            throw Error(Errc::kDuplicateContractAddress, rec.contract_address.hex() + " created again in block " +
                                                             std::to_string(rec.creation_block));
        }
        out.push_back(std::move(rec));
    };
    for (const auto& bundle : bundles) {
        for (const auto& tx : bundle.block.transactions) {
            const Receipt* receipt = bundle.receipt_for(tx.hash);
            if (tx.is_creation() && receipt && receipt->status == TxStatus::kSuccess && receipt->contract_address) {
                add({*receipt->contract_address, tx.from, bundle.block.number, tx.hash, CreationMode::kTopLevel,
                     tx.input});
            }
            auto frames = bundle.traces_for(tx.hash);
            for (const auto& f : frames) {
                if (f.is_top_level() || f.kind != FrameKind::kCreate) continue;
                if (!frame_succeeded(frames, f, receipt)) continue;
                add({f.to, f.from, bundle.block.number, tx.hash, CreationMode::kInternalCreate, {}});
            }
        }
    }
    return out;
}

ContractRegistry::ContractRegistry(std::span<const ContractInfoRecord> contracts) {
    for (const auto& c : contracts) by_address_.emplace(c.contract_address, c);
}

bool ContractRegistry::contains(const Address& a, uint64_t block_number) const {
    auto it = by_address_.find(a);
    return it != by_address_.end() && it->second.creation_block <= block_number;
}

const ContractInfoRecord* ContractRegistry::find(const Address& a) const {
    auto it = by_address_.find(a);
    return it == by_address_.end() ? nullptr : &it->second;
}

std::vector<ContractCallRecord> derive_contract_calls(const RawBundle& bundle, const ContractRegistry& registry) {
    std::vector<ContractCallRecord> out;
    const uint64_t number = bundle.block.number;
    for (const auto& tx : bundle.block.transactions) {
        const Receipt* receipt = bundle.receipt_for(tx.hash);
        if (tx.to && registry.contains(*tx.to, number)) {
            std::optional<Selector> selector;
            if (tx.input.size() >= 4) selector = Selector{tx.input[0], tx.input[1], tx.input[2], tx.input[3]};
            out.push_back({number, tx.hash, {}, tx.from, *tx.to, tx.value, FrameKind::kCall, selector,
                           receipt ? receipt->status : TxStatus::kFailure});
        }
        auto frames = bundle.traces_for(tx.hash);
        for (const auto& f : frames) {
            if (f.is_top_level() || !is_call_kind(f.kind) || !registry.contains(f.to, number)) continue;
            auto status = frame_succeeded(frames, f, receipt) ? TxStatus::kSuccess : TxStatus::kFailure;
            out.push_back({number, tx.hash, f.trace_path, f.from, f.to, f.value, f.kind, std::nullopt, status});
        }
    }
    return out;
}

std::vector<ContractCallRecord> derive_contract_calls(std::span<const RawBundle> bundles,
                                                      const ContractRegistry& registry) {
    std::vector<ContractCallRecord> out;
    for (const auto& b : bundles) {
        auto part = derive_contract_calls(b, registry);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

namespace {

template <class T>
void append(std::vector<T>& dst, std::vector<T>&& src) {
    dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
}

SixDatasets derive_shard(std::span<const RawBundle> bundles, const ContractRegistry& registry) {
    SixDatasets out;
    for (const auto& b : bundles) {
        append(out.block_txs, derive_block_transactions(b));
        append(out.internal_transfers, derive_internal_transfers(b));
        append(out.calls, derive_contract_calls(b, registry));
        auto erc20 = decode_erc20_transfers(b);
        auto erc721 = decode_erc721_transfers(b);
        append(out.erc20, std::move(erc20.transfers));
        append(out.erc721, std::move(erc721.transfers));
        // Both decoders walk logs in the same order; merge their defects by log index.
        auto& d = out.defects;
        const auto first = static_cast<std::ptrdiff_t>(d.size());
        const auto split = first + static_cast<std::ptrdiff_t>(erc20.defects.size());
        append(d, std::move(erc20.defects));
        append(d, std::move(erc721.defects));
        std::inplace_merge(d.begin() + first, d.begin() + split, d.end(),
                           [](const MalformedTransferLog& a, const MalformedTransferLog& x) {
                               return a.log_index < x.log_index;
                           });
    }
    return out;
}

}  // namespace

SixDatasets derive_all(std::span<const RawBundle> bundles, const DeriveOptions& options) {
    SixDatasets all;
    all.contracts = derive_contract_info(bundles);
    const ContractRegistry registry(all.contracts);

    const std::size_t n = bundles.size();
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.workers, n));
    std::vector<SixDatasets> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto run = [&](std::size_t w) {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        try {
            parts[w] = derive_shard(bundles.subspan(lo, hi - lo), registry);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
    if (n > 0) run(0);
    for (auto& t : pool) t.join();

    for (std::size_t w = 0; w < workers; ++w) {
        if (errors[w]) std::rethrow_exception(errors[w]);
        append(all.block_txs, std::move(parts[w].block_txs));
        append(all.internal_transfers, std::move(parts[w].internal_transfers));
        append(all.calls, std::move(parts[w].calls));
        append(all.erc20, std::move(parts[w].erc20));
        append(all.erc721, std::move(parts[w].erc721));
        append(all.defects, std::move(parts[w].defects));
    }
    return all;
}

DatasetSummary summarize(const SixDatasets& d) {
    DatasetSummary s;
    s.rows = {d.block_txs.size(), d.internal_transfers.size(), d.contracts.size(),
              d.calls.size(),     d.erc20.size(),              d.erc721.size()};
    s.defects = d.defects.size();
    return s;
}

}  // namespace etherscope::derive
