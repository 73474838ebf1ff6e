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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace etherscope {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

// Lowercase hex with "0x" prefix.
std::string to_hex(ByteView bytes);

// Accepts "0x"-prefixed hex of any even length, case-insensitive.
Bytes parse_hex(std::string_view text);

namespace detail {
void parse_fixed_hex(std::string_view text, std::span<uint8_t> out, std::string_view what);
}

// Fixed-width byte value with a canonical "0x" + lowercase hex text form.
// Tag keeps Address and Hash32 distinct types even if widths ever coincide.
template <std::size_t N, class Tag>
class FixedBytes {
  public:
    static constexpr std::size_t kSize = N;

    constexpr FixedBytes() = default;
    explicit constexpr FixedBytes(const std::array<uint8_t, N>& bytes) : bytes_(bytes) {}

    static FixedBytes parse(std::string_view text) {
        FixedBytes out;
        detail::parse_fixed_hex(text, out.bytes_, Tag::kName);
        return out;
    }

    [[nodiscard]] std::string hex() const { return to_hex(bytes_); }
    [[nodiscard]] const std::array<uint8_t, N>& bytes() const noexcept { return bytes_; }
    [[nodiscard]] std::array<uint8_t, N>& bytes() noexcept { return bytes_; }
    [[nodiscard]] bool is_zero() const noexcept {
        for (auto b : bytes_) {
            if (b != 0) return false;
        }
        return true;
    }

    friend constexpr auto operator<=>(const FixedBytes&, const FixedBytes&) = default;
    friend constexpr bool operator==(const FixedBytes&, const FixedBytes&) = default;

  private:
    std::array<uint8_t, N> bytes_{};
};

struct AddressTag {
    static constexpr std::string_view kName = "address";
};
struct Hash32Tag {
    static constexpr std::string_view kName = "hash";
};

using Address = FixedBytes<20, AddressTag>;
using Hash32 = FixedBytes<32, Hash32Tag>;

inline Address parse_address(std::string_view text) { return Address::parse(text); }
inline Hash32 parse_hash(std::string_view text) { return Hash32::parse(text); }

}  // namespace etherscope

template <std::size_t N, class Tag>
struct std::hash<etherscope::FixedBytes<N, Tag>> {
    std::size_t operator()(const etherscope::FixedBytes<N, Tag>& v) const noexcept {
        // FNV-1a
        std::size_t h = 1469598103934665603ull;
        for (auto b : v.bytes()) {
            h ^= b;
            h *= 1099511628211ull;
        }
        return h;
    }
};
