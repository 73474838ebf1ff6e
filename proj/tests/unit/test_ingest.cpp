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
#include <etherscope/ingest/jsonl.hpp>
#include <etherscope/ingest/reader.hpp>
#include <etherscope/ingest/source.hpp>
#include <etherscope/ingest/validate.hpp>
#include <etherscope/synth/generator.hpp>

#include "support/tempdir.hpp"

#include <doctest.h>

#include <fstream>
#include <mutex>

using namespace etherscope;
using namespace etherscope::ingest;
using etherscope::testing::slurp;
using etherscope::testing::TempDir;

namespace {

std::string h32(int n) {
    std::string s = std::to_string(n);
    return "0x" + std::string(64 - s.size(), '0') + s;
}
std::string a20(int n) {
    std::string s = std::to_string(n);
    return "0x" + std::string(40 - s.size(), '0') + s;
}

std::string tx_json(int hash, int index) {
    return R"({"hash":")" + h32(hash) + R"(","index":)" + std::to_string(index) + R"(,"from":")" + a20(1) +
           R"(","to":")" + a20(2) + R"(","value":"5","gas":21000,"gasPrice":"1000000000","input":"0x","nonce":)" +
           std::to_string(index) + "}";
}

std::string receipt_json(int hash, int block) {
    return R"({"transactionHash":")" + h32(hash) + R"(","blockNumber":)" + std::to_string(block) +
           R"(,"status":1,"gasUsed":21000,"contractAddress":null,"logs":[]})";
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return Errc::kParseError;
}

std::string message_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

const Corpus& corpus_100() {
    static const Corpus c = [] {
        synth::GenConfig cfg;
        cfg.seed = 42;
        cfg.n_blocks = 100;
        cfg.start_block = 7;
        return synth::generate_chain(cfg).bundles;
    }();
    return c;
}

// Fails the first `failures` fetch_blocks calls with a transient error.
class FlakySource : public BlockSource {
  public:
    FlakySource(Corpus corpus, int failures) : inner_(std::move(corpus)), failures_(failures) {}

    std::vector<Block> fetch_blocks(uint64_t from, uint64_t to) override {
        {
            std::lock_guard lock(mu_);
            if (failures_ > 0) {
                --failures_;
                throw Error(Errc::kTransientSource, "scripted failure");
            }
        }
        return inner_.fetch_blocks(from, to);
    }
    std::vector<Receipt> fetch_receipts(uint64_t from, uint64_t to) override { return inner_.fetch_receipts(from, to); }
    std::vector<TraceFrame> fetch_traces(uint64_t from, uint64_t to) override { return inner_.fetch_traces(from, to); }

  private:
    MemoryBlockSource inner_;
    std::mutex mu_;
    int failures_;
};

}  // namespace

TEST_CASE("read_raw on an empty export") {
    TempDir dir("empty");
    for (auto name : {kBlocksFile, kReceiptsFile, kTracesFile}) write_file(dir / std::string(name), "");
    CHECK(read_raw(dir.path()).empty());
}

TEST_CASE("read_raw joins receipts and leaves trace maps empty") {
    TempDir dir("join");
    std::string block = R"({"number":3,"hash":")" + h32(900) + R"(","parentHash":")" + h32(899) +
                        R"(","timestamp":100,"miner":")" + a20(9) + R"(","gasLimit":30000000,"gasUsed":42000,)" +
                        R"("transactions":[)" + tx_json(1, 0) + "," + tx_json(2, 1) + "]}";
    write_file(dir / "blocks.jsonl", block + "\n");
    write_file(dir / "receipts.jsonl", receipt_json(1, 3) + "\n" + receipt_json(2, 3) + "\n");
    write_file(dir / "traces.jsonl", "");

    Corpus c = read_raw(dir.path());
    REQUIRE(c.size() == 1);
    CHECK(c[0].block.number == 3);
    CHECK(c[0].block.transactions.size() == 2);
    CHECK(c[0].receipts.size() == 2);
    CHECK(c[0].traces.empty());
    CHECK(c[0].block.transactions[1].value == Wei(5));
    CHECK(validate_chain(c).ok);

    SUBCASE("orphan receipt names its line") {
        write_file(dir / "receipts.jsonl",
                   receipt_json(1, 3) + "\n" + receipt_json(2, 3) + "\n" + receipt_json(77, 3) + "\n");
        CHECK(code_of([&] { read_raw(dir.path()); }) == Errc::kOrphanReceipt);
        CHECK(message_of([&] { read_raw(dir.path()); }).find("receipts.jsonl:3") != std::string::npos);
    }
    SUBCASE("missing receipt") {
        write_file(dir / "receipts.jsonl", receipt_json(1, 3) + "\n");
        CHECK(code_of([&] { read_raw(dir.path()); }) == Errc::kMissingReceipt);
    }
    SUBCASE("orphan trace") {
        write_file(dir / "traces.jsonl", R"({"transactionHash":")" + h32(55) + R"(","blockNumber":3,"traceAddress":[0],)" +
                                             R"("type":"call","from":")" + a20(2) + R"(","to":")" + a20(3) +
                                             R"(","value":"0","gasUsed":0,"error":null})" + "\n");
        CHECK(code_of([&] { read_raw(dir.path()); }) == Errc::kOrphanTrace);
    }
    SUBCASE("parse error names file, line and field") {
        write_file(dir / "blocks.jsonl", block + "\n" + R"({"number":"x"})" + "\n");
        std::string msg = message_of([&] { read_raw(dir.path()); });
        CHECK(code_of([&] { read_raw(dir.path()); }) == Errc::kParseError);
        CHECK(msg.find("blocks.jsonl:2") != std::string::npos);
        CHECK(msg.find("number") != std::string::npos);
    }
}

TEST_CASE("canonical encodings") {
    const auto& c = corpus_100();
    for (const auto& b : c) {
        std::string line = encode_block(b.block);
        CHECK(line.find(' ') == std::string::npos);
        CHECK(decode_block(line) == b.block);
        CHECK(encode_block(decode_block(line)) == line);
        for (const auto& [h, r] : b.receipts) CHECK(decode_receipt(encode_receipt(r)) == r);
        for (const auto& [h, frames] : b.traces) {
            for (const auto& f : frames) CHECK(decode_trace(encode_trace(f)) == f);
        }
    }
    std::string first = encode_block(c[0].block);
    CHECK(first.rfind(R"({"gasLimit":)", 0) == 0);
}

TEST_CASE("write_raw round trip and determinism") {
    TempDir a("rt-a"), b("rt-b"), e("rt-e");
    write_raw({}, e.path());
    for (auto name : {kBlocksFile, kReceiptsFile, kTracesFile}) {
        CHECK(std::filesystem::exists(e / std::string(name)));
        CHECK(slurp(e / std::string(name)).empty());
    }

    const auto& c = corpus_100();
    write_raw(c, a.path());
    write_raw(c, b.path());
    CHECK(read_raw(a.path()) == c);
    for (auto name : {kBlocksFile, kReceiptsFile, kTracesFile}) {
        CHECK(slurp(a / std::string(name)) == slurp(b / std::string(name)));
    }
    // Streaming reader yields the same bundles one at a time.
    RawReader reader(a.path());
    std::size_t i = 0;
    while (auto bundle = reader.next()) {
        REQUIRE(i < c.size());
        CHECK(*bundle == c[i++]);
    }
    CHECK(i == c.size());
}

TEST_CASE("validate_chain examples") {
    synth::GenConfig cfg;
    cfg.n_blocks = 3;
    cfg.ponzi = cfg.lottery = cfg.erc20_token = cfg.erc721_token = cfg.internal_creations = 0;
    Corpus three = synth::generate_chain(cfg).bundles;
    REQUIRE(three.size() == 3);
    CHECK(validate_chain(three).ok);

    cfg = synth::GenConfig{};
    cfg.n_blocks = 40;
    Corpus c = synth::generate_chain(cfg).bundles;
    REQUIRE(validate_chain(c).ok);

    SUBCASE("broken parent link") {
        c[5].block.parent_hash.bytes()[0] ^= 0xff;
        auto r = validate_chain(c);
        REQUIRE(r.defects.size() == 1);
        CHECK(r.defects[0].code == DefectCode::kBrokenParentLink);
        CHECK(r.defects[0].block_number == 5);
        CHECK_FALSE(r.ok);
    }
    SUBCASE("duplicate block number") {
        c.insert(c.begin() + 10, c[9]);
        auto r = validate_chain(c);
        REQUIRE(r.defects.size() == 1);
        CHECK(r.defects[0].code == DefectCode::kNonMonotoneNumber);
    }
    SUBCASE("timestamp going back") {
        c[20].block.timestamp = c[19].block.timestamp - 1;
        auto r = validate_chain(c);
        REQUIRE(r.defects.size() == 1);
        CHECK(r.defects[0].code == DefectCode::kNonMonotoneTimestamp);
    }
    SUBCASE("equal timestamps are fine") {
        c[20].block.timestamp = c[19].block.timestamp;
        c[21].block.timestamp = std::max(c[21].block.timestamp, c[20].block.timestamp);
        CHECK(validate_chain(c).ok);
    }
    SUBCASE("missing receipt, bad index and orphan trace") {
        auto& b = c[30];
        REQUIRE(b.block.transactions.size() >= 1);
        b.receipts.erase(b.block.transactions[0].hash);
        b.block.transactions[0].tx_index = 9;
        b.traces[Hash32{}] = {};
        auto r = validate_chain(c);
        REQUIRE(r.defects.size() == 3);
        std::set<DefectCode> codes;
        for (const auto& d : r.defects) codes.insert(d.code);
        CHECK(codes == std::set<DefectCode>{DefectCode::kMissingReceipt, DefectCode::kBadTxIndex,
                                            DefectCode::kOrphanTrace});
    }
}

TEST_CASE("fetch_range") {
    const auto& c = corpus_100();
    MemoryBlockSource mem(c);
    RetryPolicy fast;
    fast.sleep = [](std::chrono::milliseconds) {};

    auto one = fetch_range(mem, 7, 7, fast);
    REQUIRE(one.bundles.size() == 1);
    CHECK(one.bundles[0] == c[0]);
    CHECK(code_of([&] { fetch_range(mem, 9, 3, fast); }) == Errc::kInvalidRange);
    CHECK(code_of([&] { fetch_range(mem, 100, 200, fast); }) == Errc::kRangeUnavailable);

    SUBCASE("two transient failures then success") {
        FlakySource flaky(c, 2);
        RetryPolicy p = fast;
        p.max_retries = 3;
        auto r = fetch_range(flaky, 7, 106, p);
        CHECK(r.retries == 2);
        REQUIRE(r.backoffs.size() == 2);
        CHECK(r.backoffs[1] == 2 * r.backoffs[0]);
        CHECK(r.bundles == c);
    }
    SUBCASE("retries exhausted") {
        FlakySource flaky(c, 5);
        RetryPolicy p = fast;
        p.max_retries = 3;
        CHECK(code_of([&] { fetch_range(flaky, 7, 106, p); }) == Errc::kRangeUnavailable);
    }
    SUBCASE("matches read_raw of the same data") {
        TempDir dir("fetch");
        write_raw(c, dir.path());
        DirectoryBlockSource disk(dir.path());
        CHECK(fetch_range(disk, 7, 106, fast).bundles == read_raw(dir.path()));
    }
    SUBCASE("remote source over a scripted transport") {
        TempDir dir("remote");
        write_raw(c, dir.path());
        auto lines = [&](std::string_view file, uint64_t from, uint64_t to) {
            std::ifstream in(dir / std::string(file));
            std::string out, line;
            while (std::getline(in, line)) {
                auto pos = line.find(file == kBlocksFile ? "\"number\":" : "\"blockNumber\":");
                uint64_t n = std::stoull(line.substr(line.find(':', pos) + 1));
                if (n >= from && n <= to) out += line + "\n";
            }
            return out;
        };
        RemoteBlockSource remote([&](std::string_view resource, uint64_t from, uint64_t to) {
            if (resource == "blocks") return lines(kBlocksFile, from, to);
            if (resource == "receipts") return lines(kReceiptsFile, from, to);
            return lines(kTracesFile, from, to);
        });
        CHECK(fetch_range(remote, 20, 40, fast).bundles ==
              Corpus(c.begin() + 13, c.begin() + 34));
    }
}

TEST_CASE("sharded fetch is independent of shard size") {
    const auto& c = corpus_100();
    RetryPolicy fast;
    fast.sleep = [](std::chrono::milliseconds) {};
    MemoryBlockSource mem(c);
    auto whole = fetch_range(mem, 7, 106, fast).bundles;
    CHECK(whole == c);
    for (uint64_t shard : {1, 3, 7, 10, 33, 100, 500}) {
        for (unsigned workers : {1u, 4u, 8u}) {
            CHECK(fetch_range_sharded(mem, 7, 106, shard, workers, fast).bundles == whole);
        }
    }
    FlakySource flaky(c, 3);
    RetryPolicy p = fast;
    p.max_retries = 5;
    auto r = fetch_range_sharded(flaky, 7, 106, 9, 4, p);
    CHECK(r.bundles == whole);
    CHECK(r.retries == 3);
    CHECK(code_of([&] { fetch_range_sharded(mem, 7, 106, 0, 2, fast); }) == Errc::kInvalidRange);
}
