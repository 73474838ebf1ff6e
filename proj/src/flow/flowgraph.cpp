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
#include <etherscope/flow/flowgraph.hpp>

#include <set>

namespace etherscope::flow {

std::string_view to_string(FlowKind k) noexcept { return k == FlowKind::kInvestment ? "investment" : "payment"; }

namespace {

void count_participants(FlowGraph& fg) {
    std::set<Address> seen;
    fg.participants_at_event.clear();
    fg.participants_at_event.reserve(fg.events.size());
    for (const auto& e : fg.events) {
        seen.insert(e.counterparty);
        fg.participants_at_event.push_back(static_cast<uint32_t>(seen.size()));
    }
}

}  // namespace

std::map<Address, FlowGraph> build_flow_graphs(std::span<const Address> contracts,
                                               std::span<const ingest::RawBundle> bundles) {
    const derive::ContractRegistry registry(derive::derive_contract_info(bundles));
    std::map<Address, FlowGraph> graphs;
    for (const auto& c : contracts) {
        if (registry.find(c) == nullptr) {
            throw Error(Errc::kUnknownContract, c.hex() + " is not created in this corpus");
        }
        graphs[c].contract = c;
    }

    for (const auto& bundle : bundles) {
        const Block& b = bundle.block;
        auto internal = derive::derive_internal_transfers(bundle);
        std::size_t next_internal = 0;
        for (const auto& tx : b.transactions) {
            auto event = [&](FlowKind kind, const Address& counterparty, const Wei& amount, const TracePath& path) {
                return FlowEvent{b.timestamp, b.number, tx.hash, tx.tx_index, path, kind, counterparty, amount};
            };
            const Receipt* r = bundle.receipt_for(tx.hash);
            if (tx.to && !tx.value.is_zero() && r && r->status == TxStatus::kSuccess) {
                if (auto it = graphs.find(*tx.to); it != graphs.end()) {
                    it->second.events.push_back(event(FlowKind::kInvestment, tx.from, tx.value, {}));
                }
            }
            // Internal transfers come back grouped by transaction, in transaction order.
            for (; next_internal < internal.size() && internal[next_internal].tx_hash == tx.hash; ++next_internal) {
                const auto& t = internal[next_internal];
                if (auto it = graphs.find(t.to); it != graphs.end()) {
                    it->second.events.push_back(event(FlowKind::kInvestment, t.from, t.value, t.trace_path));
                }
                if (auto it = graphs.find(t.from); it != graphs.end()) {
                    it->second.events.push_back(event(FlowKind::kPayment, t.to, t.value, t.trace_path));
                }
            }
        }
    }
    for (auto& [c, fg] : graphs) count_participants(fg);
    return graphs;
}

FlowGraph build_flow_graph(const Address& contract, std::span<const ingest::RawBundle> bundles) {
    const Address one[] = {contract};
    return std::move(build_flow_graphs(one, bundles).at(contract));
}

FlowGraph restrict_blocks(const FlowGraph& fg, uint64_t from, uint64_t to) {
    FlowGraph out;
    out.contract = fg.contract;
    for (const auto& e : fg.events) {
        if (e.block_number >= from && e.block_number <= to) out.events.push_back(e);
    }
    count_participants(out);
    return out;
}

FlowSummary flow_summary(const FlowGraph& fg) {
    FlowSummary s;
    for (const auto& e : fg.events) {
        if (e.kind == FlowKind::kInvestment) {
            ++s.n_investment;
            s.total_in += e.amount;
        } else {
            ++s.n_payment;
            s.total_out += e.amount;
        }
    }
    s.participant_count = fg.participants_at_event.empty() ? 0 : fg.participants_at_event.back();
    if (fg.events.size() > 1) s.lifetime_blocks = fg.events.back().block_number - fg.events.front().block_number;
    return s;
}

ExportFormat parse_export_format(std::string_view name) {
    if (name == "csv") return ExportFormat::kCsv;
    if (name == "svg") return ExportFormat::kSvg;
    throw Error(Errc::kInvalidConfig, "unknown export format '" + std::string(name) + "'");
}

}  // namespace etherscope::flow
