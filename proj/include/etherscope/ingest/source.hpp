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

#include <etherscope/ingest/raw_bundle.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace etherscope::ingest {

// Where raw records come from. Ranges are inclusive. A transient failure is
// reported by throwing Error(kTransientSource); any other exception is fatal.
// Implementations must tolerate concurrent calls.
class BlockSource {
  public:
    virtual ~BlockSource() = default;

    virtual std::vector<Block> fetch_blocks(uint64_t from, uint64_t to) = 0;
    virtual std::vector<Receipt> fetch_receipts(uint64_t from, uint64_t to) = 0;
    virtual std::vector<TraceFrame> fetch_traces(uint64_t from, uint64_t to) = 0;
};

// Serves an already-joined corpus. Used in tests and as the backing store of
// DirectoryBlockSource.
class MemoryBlockSource : public BlockSource {
  public:
    explicit MemoryBlockSource(Corpus corpus);

    std::vector<Block> fetch_blocks(uint64_t from, uint64_t to) override;
    std::vector<Receipt> fetch_receipts(uint64_t from, uint64_t to) override;
    std::vector<TraceFrame> fetch_traces(uint64_t from, uint64_t to) override;

  private:
    template <class F>
    void for_range(uint64_t from, uint64_t to, F&& visit) const;

    Corpus corpus_;
};

// A local JSONL export directory, loaded on first use.
class DirectoryBlockSource : public BlockSource {
  public:
    explicit DirectoryBlockSource(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::vector<Block> fetch_blocks(uint64_t from, uint64_t to) override;
    std::vector<Receipt> fetch_receipts(uint64_t from, uint64_t to) override;
    std::vector<TraceFrame> fetch_traces(uint64_t from, uint64_t to) override;

  private:
    MemoryBlockSource& loaded();

    std::filesystem::path dir_;
    std::once_flag once_;
    std::unique_ptr<MemoryBlockSource> mem_;
};

// Remote endpoint client. The transport returns the JSONL text of one
// resource ("blocks", "receipts" or "traces") over a block range; wiring it to
// an actual network protocol is left to the caller.
class RemoteBlockSource : public BlockSource {
  public:
    using Transport = std::function<std::string(std::string_view resource, uint64_t from, uint64_t to)>;

    explicit RemoteBlockSource(Transport transport) : transport_(std::move(transport)) {}

    std::vector<Block> fetch_blocks(uint64_t from, uint64_t to) override;
    std::vector<Receipt> fetch_receipts(uint64_t from, uint64_t to) override;
    std::vector<TraceFrame> fetch_traces(uint64_t from, uint64_t to) override;

  private:
    Transport transport_;
};

struct RetryPolicy {
    unsigned max_retries{3};
    std::chrono::milliseconds initial_backoff{50};
    double backoff_multiplier{2.0};
    // Replaceable so tests do not sleep; defaults to std::this_thread::sleep_for.
    std::function<void(std::chrono::milliseconds)> sleep;
};

struct FetchResult {
    Corpus bundles;
    unsigned retries{0};
    std::vector<std::chrono::milliseconds> backoffs;  // one entry per retry, in order
};

// Fetches [from, to] completely or throws: kInvalidRange when from > to,
// kRangeUnavailable when transient failures outlast the policy or the source
// returns an incomplete range.
FetchResult fetch_range(BlockSource& source, uint64_t from, uint64_t to, const RetryPolicy& policy = {});

// Splits [from, to] into shards of `shard_size` blocks fetched by up to
// `workers` threads, then merges in block order. Output equals fetch_range's.
FetchResult fetch_range_sharded(BlockSource& source, uint64_t from, uint64_t to, uint64_t shard_size,
                                unsigned workers, const RetryPolicy& policy = {});

}  // namespace etherscope::ingest
