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

#include <etherscope/error.hpp>
#include <etherscope/ponzi/opcodes.hpp>

#include <charconv>
#include <sstream>

namespace etherscope::ponzi {

namespace {

constexpr std::string_view kEmbeddedTable =
#include <etherscope/opcode_table.inc>
    ;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

OpcodeTable OpcodeTable::parse(std::string_view text) {
    OpcodeTable t;
    t.slot_.fill(-1);
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto eol = text.find('\n');
        auto line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '#') {
            constexpr std::string_view kVersion = "# version:";
            if (line.starts_with(kVersion)) t.version_ = std::string(trim(line.substr(kVersion.size())));
            continue;
        }
        auto bad = [&](const char* why) {
            return Error(Errc::kParseError, "opcode table line " + std::to_string(line_no) + ": " + why);
        };
        auto tab1 = line.find('\t');
        auto tab2 = tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
        if (tab2 == std::string_view::npos) throw bad("expected three tab-separated columns");
        auto code_text = line.substr(0, tab1);
        auto name = line.substr(tab1 + 1, tab2 - tab1 - 1);
        auto imm_text = line.substr(tab2 + 1);
        if (!code_text.starts_with("0x")) throw bad("opcode must be 0x-prefixed");
        unsigned code = 0, imm = 0;
        auto r1 = std::from_chars(code_text.data() + 2, code_text.data() + code_text.size(), code, 16);
        auto r2 = std::from_chars(imm_text.data(), imm_text.data() + imm_text.size(), imm);
        if (r1.ec != std::errc{} || code > 0xff || r2.ec != std::errc{} || imm > 32 || name.empty()) {
            throw bad("malformed entry");
        }
        if (t.slot_[code] >= 0) throw bad("duplicate opcode");
        if (!t.entries_.empty() && t.entries_.back().opcode >= code) throw bad("opcodes must be ascending");
        t.slot_[code] = static_cast<int>(t.entries_.size());
        t.entries_.push_back({static_cast<uint8_t>(code), std::string(name), static_cast<uint8_t>(imm)});
    }
    if (t.version_.empty()) throw Error(Errc::kParseError, "opcode table has no version line");
    return t;
}

const OpcodeTable& OpcodeTable::canonical() {
    static const OpcodeTable table = parse(kEmbeddedTable);
    return table;
}

uint64_t OpcodeHistogram::total() const noexcept {
    uint64_t n = invalid_count;
    for (const auto& [name, c] : counts) n += c;
    return n;
}

OpcodeHistogram disassemble(ByteView code, const OpcodeTable& table) {
    OpcodeHistogram h;
    for (std::size_t pc = 0; pc < code.size(); ++pc) {
        const OpcodeInfo* op = table.lookup(code[pc]);
        if (op == nullptr) {
            ++h.invalid_count;
            continue;
        }
        ++h.counts[op->name];
        pc += op->immediate_bytes;
    }
    return h;
}

std::vector<double> opcode_frequencies(const OpcodeHistogram& h, const OpcodeTable& table) {
    std::vector<double> out;
    out.reserve(table.entries().size() + 1);
    const double total = static_cast<double>(h.total());
    for (const auto& op : table.entries()) {
        auto it = h.counts.find(op.name);
        const double c = it == h.counts.end() ? 0.0 : static_cast<double>(it->second);
        out.push_back(total > 0 ? c / total : 0.0);
    }
    out.push_back(total > 0 ? static_cast<double>(h.invalid_count) / total : 0.0);
    return out;
}

}  // namespace etherscope::ponzi
