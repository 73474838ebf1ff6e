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

#include <etherscope/chain/wei.hpp>
#include <etherscope/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

namespace etherscope {

namespace {

using U512 = boost::multiprecision::uint512_t;

const U512 kU256Limit = U512(1) << 256;

int hex_digit(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

U256 parse_u256(std::string_view text) {
    if (text.empty()) throw Error(Errc::kMalformedNumber, "empty number");
    const bool is_hex = text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    const unsigned base = is_hex ? 16 : 10;
    auto digits = is_hex ? text.substr(2) : text;
    if (digits.empty()) throw Error(Errc::kMalformedNumber, "no digits in '" + std::string(text) + "'");

    // Accumulate in 512 bits so a single step can never wrap before the bound check.
    U512 acc = 0;
    for (char c : digits) {
        int d = is_hex ? hex_digit(c) : (c >= '0' && c <= '9' ? c - '0' : -1);
        if (d < 0) throw Error(Errc::kMalformedNumber, "bad digit in '" + std::string(text) + "'");
        acc = acc * base + static_cast<unsigned>(d);
        if (acc >= kU256Limit) throw Error(Errc::kOverflow, "value exceeds 2^256-1: '" + std::string(text) + "'");
    }
    return acc.convert_to<U256>();
}

std::string to_decimal(const U256& v) { return v.str(); }
std::string to_decimal(const I256& v) { return v.str(); }

U256 u256_from_be(ByteView bytes) {
    if (bytes.size() > 32) throw Error(Errc::kOverflow, "more than 32 bytes for a 256-bit value");
    U256 v = 0;
    for (auto b : bytes) {
        v <<= 8;
        v |= b;
    }
    return v;
}

std::array<uint8_t, 32> u256_to_be32(const U256& v) {
    std::array<uint8_t, 32> out{};
    U256 x = v;
    for (int i = 31; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<uint8_t>(x & 0xff);
        x >>= 8;
    }
    return out;
}

Wei parse_wei(std::string_view text) { return Wei(parse_u256(text)); }

Wei checked_add(const Wei& a, const Wei& b) {
    U256 sum = a.value() + b.value();
    if (sum < a.value()) throw Error(Errc::kOverflow, a.to_string() + " + " + b.to_string());
    return Wei(sum);
}

Wei checked_sub(const Wei& a, const Wei& b) {
    if (b.value() > a.value()) throw Error(Errc::kUnderflow, a.to_string() + " - " + b.to_string());
    return Wei(U256(a.value() - b.value()));
}

Wei checked_mul(const Wei& a, const Wei& b) {
    U512 product = U512(a.value()) * U512(b.value());
    if (product >= kU256Limit) throw Error(Errc::kOverflow, a.to_string() + " * " + b.to_string());
    return Wei(product.convert_to<U256>());
}

Wei& Wei::operator+=(const Wei& other) { return *this = checked_add(*this, other); }
Wei& Wei::operator-=(const Wei& other) { return *this = checked_sub(*this, other); }

}  // namespace etherscope
