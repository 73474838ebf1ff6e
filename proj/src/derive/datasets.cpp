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

#include <etherscope/derive/csv.hpp>
#include <etherscope/derive/derive.hpp>
#include <etherscope/error.hpp>

#include <fstream>

namespace etherscope::derive {

namespace fs = std::filesystem;

namespace {

class Row {
  public:
    template <class T>
    Row& operator<<(const T& field) {
        if (!first_) out_ += ',';
        first_ = false;
        append(field);
        return *this;
    }
    std::string str() { return std::move(out_); }

  private:
    void append(std::string_view s) { out_ += s; }
    void append(const std::string& s) { out_ += s; }
    void append(uint64_t v) { out_ += std::to_string(v); }
    void append(uint32_t v) { out_ += std::to_string(v); }
    void append(const Wei& v) { out_ += v.to_string(); }
    void append(const U256& v) { out_ += to_decimal(v); }
    void append(const Address& a) { out_ += a.hex(); }
    void append(const Hash32& h) { out_ += h.hex(); }
    void append(const std::optional<Address>& a) {
        if (a) out_ += a->hex();
    }
    void append(const TracePath& p) { out_ += format_trace_path(p); }
    void append(FrameKind k) { out_ += to_string(k); }
    void append(TxStatus s) { out_ += to_string(s); }

    std::string out_;
    bool first_{true};
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

template <class Records>
void write_table(const fs::path& path, std::string_view header, const Records& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
    out << header << '\n';
    for (const auto& r : rows) out << to_csv_row(r) << '\n';
    out.flush();
    if (!out) throw Error(Errc::kIoError, "write failed: " + path.string());
}

}  // namespace

std::string to_csv_row(const BlockTxRecord& r) {
    return (Row() << r.block_number << r.timestamp << r.miner << r.tx_hash << r.tx_index << r.from << r.to << r.value
                  << r.gas_price << r.gas_used_by_tx << r.status)
        .str();
}

std::string to_csv_row(const InternalTransferRecord& r) {
    return (Row() << r.block_number << r.tx_hash << r.trace_path << r.from << r.to << r.value << r.kind).str();
}

std::string to_csv_row(const ContractInfoRecord& r) {
    return (Row() << r.contract_address << r.creator << r.creation_block << r.creation_tx_hash
                  << to_string(r.creation_mode) << to_hex(r.code))
        .str();
}

std::string to_csv_row(const ContractCallRecord& r) {
    std::string selector = r.selector ? to_hex(*r.selector) : std::string();
    return (Row() << r.block_number << r.tx_hash << r.trace_path << r.caller << r.callee << r.value << r.kind
                  << selector << r.status)
        .str();
}

std::string to_csv_row(const TokenTransferRecord& r) {
    return (Row() << r.block_number << r.tx_hash << r.log_index << r.token_contract << r.from << r.to
                  << r.amount_or_token_id << to_string(r.standard))
        .str();
}

std::string to_csv_row(const MalformedTransferLog& r) {
    return (Row() << r.block_number << r.tx_hash << r.log_index << to_string(r.standard) << quote(r.detail)).str();
}

DatasetSummary write_datasets(const SixDatasets& d, const fs::path& dir) {
    const fs::path target = fs::absolute(dir).lexically_normal();
    const fs::path parent = target.parent_path();
    const fs::path staging = parent / ("." + target.filename().string() + ".partial");

    std::error_code ec;
    fs::create_directories(parent, ec);
    fs::remove_all(staging, ec);
    if (!fs::create_directories(staging, ec)) {
        throw Error(Errc::kIoError, "cannot create " + staging.string() + ": " + ec.message());
    }
    try {
        write_table(staging / kDatasetFiles[0], kDatasetHeaders[0], d.block_txs);
        write_table(staging / kDatasetFiles[1], kDatasetHeaders[1], d.internal_transfers);
        write_table(staging / kDatasetFiles[2], kDatasetHeaders[2], d.contracts);
        write_table(staging / kDatasetFiles[3], kDatasetHeaders[3], d.calls);
        write_table(staging / kDatasetFiles[4], kDatasetHeaders[4], d.erc20);
        write_table(staging / kDatasetFiles[5], kDatasetHeaders[5], d.erc721);
        write_table(staging / kDefectsFile, kDefectsHeader, d.defects);

        // Replace only our own files in the target, leaving anything else alone.
        fs::create_directories(target);
        for (auto name : kDatasetFiles) fs::rename(staging / name, target / name);
        fs::rename(staging / kDefectsFile, target / kDefectsFile);
        fs::remove_all(staging);
    } catch (const fs::filesystem_error& e) {
        fs::remove_all(staging, ec);
        throw Error(Errc::kIoError, e.what());
    } catch (...) {
        fs::remove_all(staging, ec);
        throw;
    }
    return summarize(d);
}

DatasetSummary derive_to_directory(std::span<const RawBundle> bundles, const fs::path& dir,
                                   const DeriveOptions& options) {
    // derive_all throws before anything touches the filesystem.
    return write_datasets(derive_all(bundles, options), dir);
}

}  // namespace etherscope::derive
