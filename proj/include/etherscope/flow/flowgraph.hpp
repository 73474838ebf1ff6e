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
#include <etherscope/ingest/raw_bundle.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace etherscope::flow {

enum class FlowKind : uint8_t { kInvestment, kPayment };

std::string_view to_string(FlowKind k) noexcept;

struct FlowEvent {
    uint64_t timestamp{0};
    uint64_t block_number{0};
    Hash32 tx_hash;
    uint32_t tx_index{0};
    TracePath trace_path;  // empty for a top-level investment
    FlowKind kind{FlowKind::kInvestment};
    Address counterparty;
    Wei amount;

    friend bool operator==(const FlowEvent&, const FlowEvent&) = default;
};

// Ether Flow Graph of one contract. Events are in (block, tx index, trace
// path) order; participants_at_event[i] counts distinct counterparties of
// events 0..i, of either kind.
struct FlowGraph {
    Address contract;
    std::vector<FlowEvent> events;
    std::vector<uint32_t> participants_at_event;

    friend bool operator==(const FlowGraph&, const FlowGraph&) = default;
};

// Investments: successful top-level transactions sending value to the
// contract, and internal transfers into it. Payments: internal transfers out
// of it. Throws kUnknownContract if the corpus never creates `contract`.
FlowGraph build_flow_graph(const Address& contract, std::span<const ingest::RawBundle> bundles);

// Same, for many contracts in one pass over the corpus.
std::map<Address, FlowGraph> build_flow_graphs(std::span<const Address> contracts,
                                               std::span<const ingest::RawBundle> bundles);

// Events restricted to from <= block_number <= to, participants recounted.
FlowGraph restrict_blocks(const FlowGraph& fg, uint64_t from, uint64_t to);

struct FlowSummary {
    uint64_t n_investment{0};
    uint64_t n_payment{0};
    Wei total_in;
    Wei total_out;
    uint64_t participant_count{0};
    uint64_t lifetime_blocks{0};

    friend bool operator==(const FlowSummary&, const FlowSummary&) = default;
};

FlowSummary flow_summary(const FlowGraph& fg);

enum class ExportFormat { kCsv, kSvg };

ExportFormat parse_export_format(std::string_view name);

// SVG scatter: x = timestamp, y = cumulative participants, one circle per
// event. Circle radius is kRadiusPerSqrtEther * sqrt(amount in ether), clamped
// to [kMinRadius, kMaxRadius] so dust stays visible and whales stay on canvas.
inline constexpr double kRadiusPerSqrtEther = 3.0;
inline constexpr double kMinRadius = 0.5;
inline constexpr double kMaxRadius = 40.0;
inline constexpr std::string_view kInvestmentColor = "#d62728";
inline constexpr std::string_view kPaymentColor = "#1f77b4";

void export_flow_graph(const FlowGraph& fg, const std::filesystem::path& path, ExportFormat format);

}  // namespace etherscope::flow
