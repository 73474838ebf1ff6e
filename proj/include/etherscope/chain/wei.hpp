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

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace etherscope {

using U256 = boost::multiprecision::uint256_t;
using I256 = boost::multiprecision::int256_t;

// Decimal or "0x"-hex text up to 2^256-1.
U256 parse_u256(std::string_view text);
std::string to_decimal(const U256& v);
std::string to_decimal(const I256& v);

// Big-endian, at most 32 bytes.
U256 u256_from_be(ByteView bytes);
std::array<uint8_t, 32> u256_to_be32(const U256& v);

// Quantity of wei. Arithmetic is checked: overflow and underflow raise instead
// of wrapping.
class Wei {
  public:
    Wei() = default;
    explicit Wei(uint64_t v) : value_(v) {}
    explicit Wei(const U256& v) : value_(v) {}

    [[nodiscard]] const U256& value() const noexcept { return value_; }
    [[nodiscard]] bool is_zero() const noexcept { return value_.is_zero(); }
    [[nodiscard]] std::string to_string() const { return to_decimal(value_); }
    [[nodiscard]] double to_double() const { return value_.convert_to<double>(); }

    friend std::strong_ordering operator<=>(const Wei& a, const Wei& b) noexcept {
        int c = a.value_.compare(b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend bool operator==(const Wei& a, const Wei& b) noexcept { return a.value_ == b.value_; }

    Wei& operator+=(const Wei& other);
    Wei& operator-=(const Wei& other);

  private:
    U256 value_{0};
};

Wei parse_wei(std::string_view text);
Wei checked_add(const Wei& a, const Wei& b);
Wei checked_sub(const Wei& a, const Wei& b);
Wei checked_mul(const Wei& a, const Wei& b);

inline Wei operator+(const Wei& a, const Wei& b) { return checked_add(a, b); }
inline Wei operator-(const Wei& a, const Wei& b) { return checked_sub(a, b); }

}  // namespace etherscope
