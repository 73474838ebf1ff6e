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
#include <etherscope/chain/model.hpp>
#include <etherscope/chain/wei.hpp>
#include <etherscope/error.hpp>

#include <doctest.h>
#include <gmpxx.h>

#include <algorithm>
#include <random>

using namespace etherscope;

namespace {

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return Errc::kParseError;
}

std::string random_hex(std::mt19937_64& rng, std::size_t digits) {
    static constexpr char kDigits[] = "0123456789abcdefABCDEF";
    std::string s = "0x";
    for (std::size_t i = 0; i < digits; ++i) s += kDigits[rng() % 22];
    return s;
}

std::string lower(std::string s) {
    std::ranges::transform(s, s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Random 256-bit value with a random bit length so small and large magnitudes
// both show up.
mpz_class random_mpz(std::mt19937_64& rng) {
    mpz_class v = 0;
    for (int i = 0; i < 4; ++i) {
        v <<= 64;
        v += mpz_class(std::to_string(rng()));
    }
    unsigned bits = rng() % 4 == 0 ? 256u : static_cast<unsigned>(rng() % 257);
    mpz_class mask = (mpz_class(1) << bits) - 1;
    return v & mask;
}

const mpz_class kTwo256 = mpz_class(1) << 256;

}  // namespace

TEST_CASE("address parsing") {
    CHECK(parse_address("0x" + std::string(40, '0')).is_zero());

    const std::string mixed = "0xAbCdEf0123456789aBcDeF0123456789ABCDEF01";
    Address a = parse_address(mixed);
    CHECK(a == parse_address(lower(mixed)));
    CHECK(a.hex() == lower(mixed));

    CHECK(code_of([] { parse_address("0x1234"); }) == Errc::kMalformedHex);
    CHECK(code_of([] { parse_address(std::string(42, '0')); }) == Errc::kMalformedHex);
    CHECK(code_of([] { parse_address("0x" + std::string(39, '0') + "g"); }) == Errc::kMalformedHex);
    CHECK(code_of([] { parse_address("0x" + std::string(42, '0')); }) == Errc::kMalformedHex);
}

TEST_CASE("hash parsing") {
    CHECK(code_of([] { parse_hash("0x" + std::string(40, '0')); }) == Errc::kMalformedHex);
    CHECK(parse_hash("0x" + std::string(63, '0') + "F").bytes()[31] == 0x0f);
}

TEST_CASE("hex text round trips") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        std::string a = random_hex(rng, 40);
        CHECK(parse_address(a).hex() == lower(a));
        CHECK(parse_address(parse_address(a).hex()) == parse_address(a));
        std::string h = random_hex(rng, 64);
        CHECK(parse_hash(h).hex() == lower(h));
        std::string b = random_hex(rng, 2 * (rng() % 50));
        CHECK(to_hex(parse_hex(b)) == lower(b));
    }
    CHECK(to_hex(Bytes{}) == "0x");
    CHECK(parse_hex("0x").empty());
    CHECK(code_of([] { parse_hex("0xabc"); }) == Errc::kMalformedHex);
}

TEST_CASE("wei parsing") {
    CHECK(parse_wei("0").is_zero());
    CHECK(parse_wei("0x10") == Wei(16));
    CHECK(parse_wei("0X10") == Wei(16));

    mpz_class max = kTwo256 - 1;
    CHECK(parse_wei(max.get_str()).to_string() == max.get_str());
    CHECK(parse_wei("0x" + max.get_str(16)).to_string() == max.get_str());
    CHECK(code_of([&] { parse_wei(kTwo256.get_str()); }) == Errc::kOverflow);
    CHECK(code_of([&] { parse_wei("0x1" + std::string(64, '0')); }) == Errc::kOverflow);
    CHECK(code_of([] { parse_wei(""); }) == Errc::kMalformedNumber);
    CHECK(code_of([] { parse_wei("12a"); }) == Errc::kMalformedNumber);
    CHECK(code_of([] { parse_wei("-1"); }) == Errc::kMalformedNumber);
    CHECK(code_of([] { parse_wei("0x"); }) == Errc::kMalformedNumber);
}

TEST_CASE("checked arithmetic boundaries") {
    Wei x = parse_wei("123456789012345678901234567890");
    CHECK(checked_add(Wei(), x) == x);
    CHECK(checked_add(Wei(1), Wei(2)) == Wei(3));

    mpz_class half = mpz_class(1) << 255;
    Wei h = parse_wei(half.get_str());
    CHECK(code_of([&] { checked_add(h, h); }) == Errc::kOverflow);
    CHECK(code_of([] { checked_sub(Wei(1), Wei(2)); }) == Errc::kUnderflow);
    CHECK(code_of([&] { checked_mul(h, Wei(2)); }) == Errc::kOverflow);

    Wei acc(5);
    acc += Wei(7);
    acc -= Wei(2);
    CHECK(acc == Wei(10));
}

TEST_CASE("wei arithmetic agrees with GMP on random pairs") {
    std::mt19937_64 rng(20260101);
    int overflow = 0, underflow = 0;
    for (int i = 0; i < 10000; ++i) {
        mpz_class a = random_mpz(rng), b = random_mpz(rng);
        Wei wa = parse_wei(a.get_str()), wb = parse_wei(b.get_str());
        REQUIRE(wa.to_string() == a.get_str());
        REQUIRE(parse_wei("0x" + a.get_str(16)) == wa);

        mpz_class sum = a + b;
        if (sum >= kTwo256) {
            ++overflow;
            CHECK(code_of([&] { checked_add(wa, wb); }) == Errc::kOverflow);
        } else {
            CHECK(checked_add(wa, wb).to_string() == sum.get_str());
        }
        if (a < b) {
            ++underflow;
            CHECK(code_of([&] { checked_sub(wa, wb); }) == Errc::kUnderflow);
        } else {
            CHECK(checked_sub(wa, wb).to_string() == mpz_class(a - b).get_str());
        }
        mpz_class prod = a * b;
        if (prod >= kTwo256) {
            CHECK(code_of([&] { checked_mul(wa, wb); }) == Errc::kOverflow);
        } else {
            CHECK(checked_mul(wa, wb).to_string() == prod.get_str());
        }
        CHECK(((wa <=> wb) < 0) == (a < b));
    }
    CHECK(overflow > 0);
    CHECK(underflow > 0);
}

TEST_CASE("big-endian conversion") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        mpz_class a = random_mpz(rng);
        U256 v = parse_u256(a.get_str());
        auto be = u256_to_be32(v);
        CHECK(u256_from_be(be) == v);
        std::string padded = a.get_str(16);
        padded.insert(0, 64 - padded.size(), '0');
        CHECK(to_hex(be) == "0x" + padded);
    }
    CHECK(u256_from_be(Bytes{}) == 0);
    CHECK(code_of([] { u256_from_be(Bytes(33, 1)); }) == Errc::kOverflow);
}

TEST_CASE("frame kinds and paths") {
    for (auto k : {FrameKind::kCall, FrameKind::kDelegateCall, FrameKind::kStaticCall, FrameKind::kCreate,
                   FrameKind::kSelfDestruct}) {
        CHECK(parse_frame_kind(to_string(k)) == k);
    }
    CHECK(to_string(FrameKind::kDelegateCall) == "delegatecall");
    CHECK(format_trace_path({}) == "");
    CHECK(format_trace_path({0, 2, 1}) == "0.2.1");
    CHECK(is_ancestor({0}, {0, 1}));
    CHECK(is_ancestor({}, {0}));
    CHECK_FALSE(is_ancestor({0, 1}, {0, 1}));
    CHECK_FALSE(is_ancestor({1}, {0, 1}));
}

TEST_CASE("trace order is total and deterministic") {
    std::mt19937_64 rng(5);
    std::vector<TracePath> paths;
    std::vector<TraceOrderKey> keys;
    paths.reserve(600);
    for (int i = 0; i < 600; ++i) {
        TracePath p(rng() % 4);
        for (auto& x : p) x = static_cast<uint32_t>(rng() % 3);
        paths.push_back(std::move(p));
    }
    for (int i = 0; i < 600; ++i) {
        keys.push_back({rng() % 4, static_cast<uint32_t>(rng() % 3), &paths[static_cast<std::size_t>(i)]});
    }
    for (std::size_t i = 0; i < 200; ++i) {
        for (std::size_t j = 0; j < 200; ++j) {
            const auto &a = keys[i], &b = keys[j];
            bool equal = a.block_number == b.block_number && a.tx_index == b.tx_index && *a.path == *b.path;
            // exactly one of a<b, b<a, a==b
            CHECK(int(a < b) + int(b < a) + int(equal) == 1);
            if (is_ancestor(*a.path, *b.path) && a.block_number == b.block_number && a.tx_index == b.tx_index) {
                CHECK(a < b);
            }
        }
    }
    auto sorted1 = keys, sorted2 = keys;
    std::ranges::reverse(sorted2);
    std::ranges::stable_sort(sorted1, std::less<>{});
    std::ranges::stable_sort(sorted2, std::less<>{});
    for (std::size_t i = 0; i < keys.size(); ++i) {
        CHECK_FALSE(sorted1[i] < sorted2[i]);
        CHECK_FALSE(sorted2[i] < sorted1[i]);
    }
}
