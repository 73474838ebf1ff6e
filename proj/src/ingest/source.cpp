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

#include <algorithm>
#include <atomic>
#include <future>
#include <sstream>
#include <thread>

namespace etherscope::ingest {

MemoryBlockSource::MemoryBlockSource(Corpus corpus) : corpus_(std::move(corpus)) {
    std::stable_sort(corpus_.begin(), corpus_.end(),
                     [](const RawBundle& a, const RawBundle& b) { return a.block.number < b.block.number; });
}

template <class F>
void MemoryBlockSource::for_range(uint64_t from, uint64_t to, F&& visit) const {
    auto it = std::lower_bound(corpus_.begin(), corpus_.end(), from,
                               [](const RawBundle& b, uint64_t n) { return b.block.number < n; });
    for (; it != corpus_.end() && it->block.number <= to; ++it) visit(*it);
}

std::vector<Block> MemoryBlockSource::fetch_blocks(uint64_t from, uint64_t to) {
    std::vector<Block> out;
    for_range(from, to, [&](const RawBundle& b) { out.push_back(b.block); });
    return out;
}

std::vector<Receipt> MemoryBlockSource::fetch_receipts(uint64_t from, uint64_t to) {
    std::vector<Receipt> out;
    for_range(from, to, [&](const RawBundle& b) {
        for (const auto& tx : b.block.transactions) {
            if (const auto* r = b.receipt_for(tx.hash)) out.push_back(*r);
        }
    });
    return out;
}

std::vector<TraceFrame> MemoryBlockSource::fetch_traces(uint64_t from, uint64_t to) {
    std::vector<TraceFrame> out;
    for_range(from, to, [&](const RawBundle& b) {
        for (const auto& tx : b.block.transactions) {
            for (const auto& f : b.traces_for(tx.hash)) out.push_back(f);
        }
    });
    return out;
}

MemoryBlockSource& DirectoryBlockSource::loaded() {
    std::call_once(once_, [this] { mem_ = std::make_unique<MemoryBlockSource>(read_raw(dir_)); });
    return *mem_;
}

std::vector<Block> DirectoryBlockSource::fetch_blocks(uint64_t from, uint64_t to) {
    return loaded().fetch_blocks(from, to);
}
std::vector<Receipt> DirectoryBlockSource::fetch_receipts(uint64_t from, uint64_t to) {
    return loaded().fetch_receipts(from, to);
}
std::vector<TraceFrame> DirectoryBlockSource::fetch_traces(uint64_t from, uint64_t to) {
    return loaded().fetch_traces(from, to);
}

namespace {

template <class Record, class Decode>
std::vector<Record> decode_lines(const std::string& text, std::string_view resource, Decode&& decode) {
    std::vector<Record> out;
    std::istringstream in(text);
    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(decode(line));
        } catch (const Error& e) {
            throw Error(e.code(), std::string(resource) + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace

std::vector<Block> RemoteBlockSource::fetch_blocks(uint64_t from, uint64_t to) {
    return decode_lines<Block>(transport_("blocks", from, to), "blocks", decode_block);
}
std::vector<Receipt> RemoteBlockSource::fetch_receipts(uint64_t from, uint64_t to) {
    return decode_lines<Receipt>(transport_("receipts", from, to), "receipts", decode_receipt);
}
std::vector<TraceFrame> RemoteBlockSource::fetch_traces(uint64_t from, uint64_t to) {
    return decode_lines<TraceFrame>(transport_("traces", from, to), "traces", decode_trace);
}

namespace {

Corpus fetch_once(BlockSource& source, uint64_t from, uint64_t to) {
    auto blocks = source.fetch_blocks(from, to);
    auto receipts = source.fetch_receipts(from, to);
    auto traces = source.fetch_traces(from, to);

    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.number < b.number; });
    uint64_t expected = from;
    for (const auto& b : blocks) {
        if (b.number != expected) {
            throw Error(Errc::kRangeUnavailable, "source returned block " + std::to_string(b.number) +
                                                     " where " + std::to_string(expected) + " was expected");
        }
        ++expected;
    }
    if (blocks.size() != to - from + 1) {
        throw Error(Errc::kRangeUnavailable, "source returned " + std::to_string(blocks.size()) + " of " +
                                                 std::to_string(to - from + 1) + " blocks");
    }
    return join_records(std::move(blocks), std::move(receipts), std::move(traces));
}

}  // namespace

FetchResult fetch_range(BlockSource& source, uint64_t from, uint64_t to, const RetryPolicy& policy) {
    if (from > to) {
        throw Error(Errc::kInvalidRange, "from " + std::to_string(from) + " > to " + std::to_string(to));
    }
    FetchResult result;
    auto backoff = policy.initial_backoff;
    for (unsigned attempt = 0;; ++attempt) {
        try {
            result.bundles = fetch_once(source, from, to);
            return result;
        } catch (const Error& e) {
            if (e.code() != Errc::kTransientSource) throw;
            if (attempt >= policy.max_retries) {
                throw Error(Errc::kRangeUnavailable, "blocks " + std::to_string(from) + ".." + std::to_string(to) +
                                                         " after " + std::to_string(attempt) +
                                                         " retries: " + e.what());
            }
        }
        ++result.retries;
        result.backoffs.push_back(backoff);
        if (policy.sleep) {
            policy.sleep(backoff);
        } else {
            std::this_thread::sleep_for(backoff);
        }
        backoff = std::chrono::milliseconds(
            static_cast<std::chrono::milliseconds::rep>(static_cast<double>(backoff.count()) * policy.backoff_multiplier));
    }
}

FetchResult fetch_range_sharded(BlockSource& source, uint64_t from, uint64_t to, uint64_t shard_size,
                                unsigned workers, const RetryPolicy& policy) {
    if (from > to) {
        throw Error(Errc::kInvalidRange, "from " + std::to_string(from) + " > to " + std::to_string(to));
    }
    if (shard_size == 0) throw Error(Errc::kInvalidRange, "shard size must be positive");
    workers = std::max(1u, workers);

    std::vector<std::pair<uint64_t, uint64_t>> shards;
    for (uint64_t lo = from;; lo += shard_size) {
        uint64_t hi = (to - lo < shard_size - 1) ? to : lo + shard_size - 1;
        shards.emplace_back(lo, hi);
        if (hi == to) break;
    }

    std::vector<FetchResult> parts(shards.size());
    std::vector<std::exception_ptr> errors(shards.size());
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i = next++; i < shards.size(); i = next++) {
            try {
                parts[i] = fetch_range(source, shards[i].first, shards[i].second, policy);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < std::min<std::size_t>(workers, shards.size()); ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();

    FetchResult merged;
    for (std::size_t i = 0; i < shards.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        merged.retries += parts[i].retries;
        for (auto& b : parts[i].bundles) merged.bundles.push_back(std::move(b));
        for (auto d : parts[i].backoffs) merged.backoffs.push_back(d);
    }
    return merged;
}

}  // namespace etherscope::ingest
