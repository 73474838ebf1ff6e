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

#include <etherscope/chain/bytes.hpp>
#include <etherscope/error.hpp>

namespace etherscope {

namespace {

constexpr char kDigits[] = "0123456789abcdef";

int nibble(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string_view strip_prefix(std::string_view text, std::string_view what) {
    if (text.size() < 2 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
        throw Error(Errc::kMalformedHex, std::string(what) + " missing 0x prefix: '" + std::string(text) + "'");
    }
    return text.substr(2);
}

void decode_into(std::string_view digits, std::span<uint8_t> out, std::string_view what) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = nibble(digits[2 * i]);
        int lo = nibble(digits[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw Error(Errc::kMalformedHex, std::string(what) + " has non-hex digit: '0x" + std::string(digits) + "'");
        }
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
}

}  // namespace

std::string to_hex(ByteView bytes) {
    std::string out;
    out.reserve(2 + 2 * bytes.size());
    out += "0x";
    for (auto b : bytes) {
        out += kDigits[b >> 4];
        out += kDigits[b & 0xf];
    }
    return out;
}

Bytes parse_hex(std::string_view text) {
    auto digits = strip_prefix(text, "hex data");
    if (digits.size() % 2 != 0) {
        throw Error(Errc::kMalformedHex, "hex data has odd length: '" + std::string(text) + "'");
    }
    Bytes out(digits.size() / 2);
    decode_into(digits, out, "hex data");
    return out;
}

namespace detail {

void parse_fixed_hex(std::string_view text, std::span<uint8_t> out, std::string_view what) {
    auto digits = strip_prefix(text, what);
    if (digits.size() != 2 * out.size()) {
        throw Error(Errc::kMalformedHex, std::string(what) + " must have " + std::to_string(2 * out.size()) +
                                             " hex digits, got " + std::to_string(digits.size()));
    }
    decode_into(digits, out, what);
}

}  // namespace detail

}  // namespace etherscope
