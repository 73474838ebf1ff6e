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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace etherscope::ponzi {

struct OpcodeInfo {
    uint8_t opcode{0};
    std::string name;
    uint8_t immediate_bytes{0};  // 1..32 for PUSH1..PUSH32, else 0
};

// Instruction table parsed from the tab-separated data file shipped in
// data/evm_opcodes.tsv ("0x60<TAB>PUSH1<TAB>1", '#' comments, one
// "# version: ..." line).
class OpcodeTable {
  public:
    static OpcodeTable parse(std::string_view text);
    // The table embedded at build time.
    static const OpcodeTable& canonical();

    [[nodiscard]] const std::string& version() const noexcept { return version_; }
    // Numeric opcode order.
    [[nodiscard]] std::span<const OpcodeInfo> entries() const noexcept { return entries_; }
    [[nodiscard]] const OpcodeInfo* lookup(uint8_t opcode) const noexcept {
        auto slot = slot_[opcode];
        return slot < 0 ? nullptr : &entries_[static_cast<std::size_t>(slot)];
    }

  private:
    std::string version_;
    std::vector<OpcodeInfo> entries_;
    std::array<int, 256> slot_{};
};

inline constexpr std::string_view kInvalidBucket = "INVALID";

struct OpcodeHistogram {
    std::map<std::string, uint64_t> counts;  // only opcodes that occur
    uint64_t invalid_count{0};

    [[nodiscard]] uint64_t total() const noexcept;

    friend bool operator==(const OpcodeHistogram&, const OpcodeHistogram&) = default;
};

// Linear sweep. PUSHn skips its n immediate bytes; a PUSH whose immediate runs
// past the end still counts. Bytes absent from the table count as invalid.
OpcodeHistogram disassemble(ByteView code, const OpcodeTable& table = OpcodeTable::canonical());

// Table order followed by the INVALID bucket; sums to 1, or all zeros for an
// empty histogram.
std::vector<double> opcode_frequencies(const OpcodeHistogram& h, const OpcodeTable& table = OpcodeTable::canonical());

}  // namespace etherscope::ponzi
