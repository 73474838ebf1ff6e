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

#include <algorithm>
#include <set>

namespace etherscope::ingest {

namespace fs = std::filesystem;

namespace {

template <class F>
auto at_line(const std::string& file, uint64_t line_no, F&& decode) -> decltype(decode()) {
    try {
        return decode();
    } catch (const Error& e) {
        throw Error(e.code(), file + ":" + std::to_string(line_no) + ": " + e.what());
    }
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
    return in;
}

void sort_frames(std::vector<TraceFrame>& frames) {
    std::stable_sort(frames.begin(), frames.end(),
                     [](const TraceFrame& a, const TraceFrame& b) { return a.trace_path < b.trace_path; });
}

}  // namespace

Corpus join_records(std::vector<Block> blocks, std::vector<Receipt> receipts, std::vector<TraceFrame> traces) {
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.number < b.number; });

    std::map<Hash32, std::size_t> owner;  // tx hash -> bundle index
    Corpus out;
    out.reserve(blocks.size());
    for (auto& b : blocks) {
        for (const auto& tx : b.transactions) owner.emplace(tx.hash, out.size());
        out.push_back(RawBundle{std::move(b), {}, {}});
    }

    for (auto& r : receipts) {
        auto it = owner.find(r.tx_hash);
        if (it == owner.end() || out[it->second].block.number != r.block_number) {
            throw Error(Errc::kOrphanReceipt, "receipt " + r.tx_hash.hex() + " matches no transaction in block " +
                                                  std::to_string(r.block_number));
        }
        auto hash = r.tx_hash;
        if (!out[it->second].receipts.emplace(hash, std::move(r)).second) {
            throw Error(Errc::kOrphanReceipt, "duplicate receipt " + hash.hex());
        }
    }
    for (auto& f : traces) {
        auto it = owner.find(f.tx_hash);
        if (it == owner.end() || out[it->second].block.number != f.block_number) {
            throw Error(Errc::kOrphanTrace, "trace for " + f.tx_hash.hex() + " matches no transaction in block " +
                                                std::to_string(f.block_number));
        }
        auto hash = f.tx_hash;
        out[it->second].traces[hash].push_back(std::move(f));
    }
    for (auto& bundle : out) {
        for (const auto& tx : bundle.block.transactions) {
            if (!bundle.receipts.contains(tx.hash)) {
                throw Error(Errc::kMissingReceipt, "no receipt for " + tx.hash.hex() + " in block " +
                                                       std::to_string(bundle.block.number));
            }
        }
        for (auto& [hash, frames] : bundle.traces) sort_frames(frames);
    }
    return out;
}

bool RawReader::LineSource::next_line(std::string& out) {
    while (std::getline(in, out)) {
        ++line_no;
        if (!out.empty() && out.back() == '\r') out.pop_back();
        if (!out.empty()) return true;
    }
    return false;
}

RawReader::RawReader(const fs::path& dir) {
    blocks_.in = open_input(dir / kBlocksFile);
    blocks_.name = std::string(kBlocksFile);
    receipts_.in = open_input(dir / kReceiptsFile);
    receipts_.name = std::string(kReceiptsFile);
    traces_.in = open_input(dir / kTracesFile);
    traces_.name = std::string(kTracesFile);
    fill_receipt();
    fill_trace();
}

void RawReader::fill_receipt() {
    std::string line;
    pending_receipt_.record.reset();
    if (receipts_.next_line(line)) {
        pending_receipt_.line_no = receipts_.line_no;
        pending_receipt_.record = at_line(receipts_.name, receipts_.line_no, [&] { return decode_receipt(line); });
    }
}

void RawReader::fill_trace() {
    std::string line;
    pending_trace_.record.reset();
    if (traces_.next_line(line)) {
        pending_trace_.line_no = traces_.line_no;
        pending_trace_.record = at_line(traces_.name, traces_.line_no, [&] { return decode_trace(line); });
    }
}

std::optional<RawBundle> RawReader::next() {
    std::string line;
    if (!blocks_.next_line(line)) {
        if (pending_receipt_.record) {
            throw Error(Errc::kOrphanReceipt, receipts_.name + ":" + std::to_string(pending_receipt_.line_no) +
                                                  ": receipt after the last block");
        }
        if (pending_trace_.record) {
            throw Error(Errc::kOrphanTrace,
                        traces_.name + ":" + std::to_string(pending_trace_.line_no) + ": trace after the last block");
        }
        return std::nullopt;
    }
    const uint64_t block_line = blocks_.line_no;
    RawBundle bundle;
    bundle.block = at_line(blocks_.name, block_line, [&] { return decode_block(line); });
    const uint64_t number = bundle.block.number;

    std::set<Hash32> tx_hashes;
    for (const auto& tx : bundle.block.transactions) tx_hashes.insert(tx.hash);

    while (pending_receipt_.record && pending_receipt_.record->block_number <= number) {
        auto& r = *pending_receipt_.record;
        if (r.block_number < number || !tx_hashes.contains(r.tx_hash) || bundle.receipts.contains(r.tx_hash)) {
            throw Error(Errc::kOrphanReceipt, receipts_.name + ":" + std::to_string(pending_receipt_.line_no) +
                                                  ": receipt " + r.tx_hash.hex() + " has no transaction in block " +
                                                  std::to_string(r.block_number));
        }
        auto hash = r.tx_hash;
        bundle.receipts.emplace(hash, std::move(r));
        fill_receipt();
    }
    while (pending_trace_.record && pending_trace_.record->block_number <= number) {
        auto& f = *pending_trace_.record;
        if (f.block_number < number || !tx_hashes.contains(f.tx_hash)) {
            throw Error(Errc::kOrphanTrace, traces_.name + ":" + std::to_string(pending_trace_.line_no) +
                                                ": trace for " + f.tx_hash.hex() + " has no transaction in block " +
                                                std::to_string(f.block_number));
        }
        auto hash = f.tx_hash;
        bundle.traces[hash].push_back(std::move(f));
        fill_trace();
    }
    for (const auto& tx : bundle.block.transactions) {
        if (!bundle.receipts.contains(tx.hash)) {
            throw Error(Errc::kMissingReceipt, blocks_.name + ":" + std::to_string(block_line) + ": no receipt for " +
                                                   tx.hash.hex());
        }
    }
    for (auto& [hash, frames] : bundle.traces) sort_frames(frames);
    return bundle;
}

Corpus read_raw(const fs::path& dir) {
    RawReader reader(dir);
    Corpus out;
    while (auto b = reader.next()) out.push_back(std::move(*b));
    return out;
}

void write_raw(std::span<const RawBundle> bundles, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(Errc::kIoError, "cannot create " + dir.string() + ": " + ec.message());

    auto open = [&](std::string_view name) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::kIoError, "cannot write " + (dir / name).string());
        return out;
    };
    auto blocks = open(kBlocksFile);
    auto receipts = open(kReceiptsFile);
    auto traces = open(kTracesFile);

    for (const auto& bundle : bundles) {
        blocks << encode_block(bundle.block) << '\n';
        for (const auto& tx : bundle.block.transactions) {
            if (const auto* r = bundle.receipt_for(tx.hash)) receipts << encode_receipt(*r) << '\n';
            for (const auto& f : bundle.traces_for(tx.hash)) traces << encode_trace(f) << '\n';
        }
    }
    blocks.flush();
    receipts.flush();
    traces.flush();
    if (!blocks || !receipts || !traces) throw Error(Errc::kIoError, "write failed under " + dir.string());
}

}  // namespace etherscope::ingest
