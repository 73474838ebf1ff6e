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
#include <etherscope/flow/flowgraph.hpp>
#include <etherscope/ponzi/opcodes.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace etherscope::ponzi {

// Bumped whenever a field is added, removed or reordered.
inline constexpr std::string_view kFeatureLayoutVersion = "features-v1";

// Account-behaviour features of a contract's Ether Flow Graph followed by the
// opcode-frequency profile of its code. Degenerate graphs give zero defaults.
struct FeatureVector {
    uint64_t n_investment{0};
    uint64_t n_payment{0};
    double payment_investment_ratio{0};  // n_payment / max(n_investment, 1)
    Wei total_in;
    Wei total_out;
    double payout_rate{0};            // total_out / total_in
    double paid_participant_rate{0};  // investors paid after their first investment
    double gini_investments{0};
    uint64_t participant_count{0};
    uint64_t lifetime_blocks{0};
    double max_payment_share{0};  // largest payment / total_out
    I256 balance{0};              // total_in - total_out
    std::vector<double> opcode_freq;

    // Dense numeric form in column order.
    [[nodiscard]] std::vector<double> to_dense() const;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Column names in order; opcode columns are "op_" + mnemonic, then op_INVALID.
std::vector<std::string> feature_names(const OpcodeTable& table = OpcodeTable::canonical());

FeatureVector extract_features(const flow::FlowGraph& fg, ByteView code,
                               const OpcodeTable& table = OpcodeTable::canonical());

struct FeatureTable {
    std::vector<std::string> names;
    std::vector<Address> contracts;
    std::vector<std::vector<double>> rows;
};

// features.csv: "contract" column, then feature_names(). Integers and wei in
// decimal, reals with 17 significant digits.
void write_features_csv(const std::filesystem::path& path,
                        const std::vector<std::pair<Address, FeatureVector>>& rows);
FeatureTable read_features_csv(const std::filesystem::path& path);

enum class Label : uint8_t { kNormal = 0, kPonzi = 1 };

std::string_view to_string(Label l) noexcept;
Label parse_label(std::string_view text);

// labels.csv: "contract_address,label" with label ponzi|normal.
void write_labels_csv(const std::filesystem::path& path, const std::map<Address, Label>& labels);
std::map<Address, Label> read_labels_csv(const std::filesystem::path& path);

}  // namespace etherscope::ponzi
