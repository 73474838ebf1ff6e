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

#include <json.hpp>

namespace etherscope::ingest {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* name) {
    if (!obj.is_object()) throw Error(Errc::kParseError, std::string("expected object around field '") + name + "'");
    auto it = obj.find(name);
    if (it == obj.end()) throw Error(Errc::kParseError, std::string("missing field '") + name + "'");
    return *it;
}

[[noreturn]] void bad_field(const char* name, const std::string& why) {
    throw Error(Errc::kParseError, std::string("field '") + name + "': " + why);
}

uint64_t get_u64(const json& obj, const char* name) {
    const auto& v = field(obj, name);
    if (!v.is_number_unsigned()) bad_field(name, "expected unsigned integer");
    return v.get<uint64_t>();
}

uint32_t get_u32(const json& obj, const char* name) {
    uint64_t v = get_u64(obj, name);
    if (v > UINT32_MAX) bad_field(name, "exceeds 32 bits");
    return static_cast<uint32_t>(v);
}

const std::string& get_string(const json& obj, const char* name) {
    const auto& v = field(obj, name);
    if (!v.is_string()) bad_field(name, "expected string");
    return v.get_ref<const std::string&>();
}

// Rewraps value-level errors so the message names the field.
template <class F>
auto with_field(const char* name, F&& parse) -> decltype(parse()) {
    try {
        return parse();
    } catch (const Error& e) {
        bad_field(name, e.what());
    }
}

Address get_address(const json& obj, const char* name) {
    return with_field(name, [&] { return parse_address(get_string(obj, name)); });
}

std::optional<Address> get_optional_address(const json& obj, const char* name) {
    const auto& v = field(obj, name);
    if (v.is_null()) return std::nullopt;
    return get_address(obj, name);
}

Hash32 get_hash(const json& obj, const char* name) {
    return with_field(name, [&] { return parse_hash(get_string(obj, name)); });
}

Wei get_wei(const json& obj, const char* name) {
    return with_field(name, [&] { return parse_wei(get_string(obj, name)); });
}

Bytes get_bytes(const json& obj, const char* name) {
    return with_field(name, [&] { return parse_hex(get_string(obj, name)); });
}

json parse_line(std::string_view line) {
    try {
        return json::parse(line);
    } catch (const json::parse_error& e) {
        throw Error(Errc::kParseError, std::string("invalid JSON: ") + e.what());
    }
}

json to_json(const Transaction& tx) {
    json j;
    j["hash"] = tx.hash.hex();
    j["index"] = tx.tx_index;
    j["from"] = tx.from.hex();
    j["to"] = tx.to ? json(tx.to->hex()) : json(nullptr);
    j["value"] = tx.value.to_string();
    j["gas"] = tx.gas;
    j["gasPrice"] = tx.gas_price.to_string();
    j["input"] = to_hex(tx.input);
    j["nonce"] = tx.nonce;
    return j;
}

Transaction tx_from_json(const json& j, uint64_t block_number) {
    Transaction tx;
    tx.hash = get_hash(j, "hash");
    tx.block_number = block_number;
    tx.tx_index = get_u32(j, "index");
    tx.from = get_address(j, "from");
    tx.to = get_optional_address(j, "to");
    tx.value = get_wei(j, "value");
    tx.gas = get_u64(j, "gas");
    tx.gas_price = get_wei(j, "gasPrice");
    tx.input = get_bytes(j, "input");
    tx.nonce = get_u64(j, "nonce");
    return tx;
}

}  // namespace

std::string encode_block(const Block& block) {
    json j;
    j["number"] = block.number;
    j["hash"] = block.hash.hex();
    j["parentHash"] = block.parent_hash.hex();
    j["timestamp"] = block.timestamp;
    j["miner"] = block.miner.hex();
    j["gasLimit"] = block.gas_limit;
    j["gasUsed"] = block.gas_used;
    json txs = json::array();
    for (const auto& tx : block.transactions) txs.push_back(to_json(tx));
    j["transactions"] = std::move(txs);
    return j.dump();
}

std::string encode_receipt(const Receipt& r) {
    json j;
    j["transactionHash"] = r.tx_hash.hex();
    j["blockNumber"] = r.block_number;
    j["status"] = r.status == TxStatus::kSuccess ? 1 : 0;
    j["gasUsed"] = r.gas_used;
    j["contractAddress"] = r.contract_address ? json(r.contract_address->hex()) : json(nullptr);
    json logs = json::array();
    for (const auto& log : r.logs) {
        json topics = json::array();
        for (const auto& t : log.topics) topics.push_back(t.hex());
        logs.push_back({{"address", log.address.hex()}, {"topics", std::move(topics)}, {"data", to_hex(log.data)}});
    }
    j["logs"] = std::move(logs);
    return j.dump();
}

std::string encode_trace(const TraceFrame& f) {
    json j;
    j["transactionHash"] = f.tx_hash.hex();
    j["blockNumber"] = f.block_number;
    j["traceAddress"] = f.trace_path;
    j["type"] = std::string(to_string(f.kind));
    j["from"] = f.from.hex();
    j["to"] = f.to.hex();
    j["value"] = f.value.to_string();
    j["gasUsed"] = f.gas_used;
    j["error"] = f.error ? json(*f.error) : json(nullptr);
    return j.dump();
}

Block decode_block(std::string_view line) {
    json j = parse_line(line);
    Block b;
    b.number = get_u64(j, "number");
    b.hash = get_hash(j, "hash");
    b.parent_hash = get_hash(j, "parentHash");
    b.timestamp = get_u64(j, "timestamp");
    b.miner = get_address(j, "miner");
    b.gas_limit = get_u64(j, "gasLimit");
    b.gas_used = get_u64(j, "gasUsed");
    const auto& txs = field(j, "transactions");
    if (!txs.is_array()) bad_field("transactions", "expected array");
    b.transactions.reserve(txs.size());
    for (const auto& t : txs) b.transactions.push_back(tx_from_json(t, b.number));
    return b;
}

Receipt decode_receipt(std::string_view line) {
    json j = parse_line(line);
    Receipt r;
    r.tx_hash = get_hash(j, "transactionHash");
    r.block_number = get_u64(j, "blockNumber");
    uint64_t status = get_u64(j, "status");
    if (status > 1) bad_field("status", "expected 0 or 1");
    r.status = status == 1 ? TxStatus::kSuccess : TxStatus::kFailure;
    r.gas_used = get_u64(j, "gasUsed");
    r.contract_address = get_optional_address(j, "contractAddress");
    const auto& logs = field(j, "logs");
    if (!logs.is_array()) bad_field("logs", "expected array");
    for (const auto& l : logs) {
        LogEvent ev;
        ev.address = get_address(l, "address");
        const auto& topics = field(l, "topics");
        if (!topics.is_array() || topics.empty() || topics.size() > 4) bad_field("topics", "expected 1..4 topics");
        for (const auto& t : topics) {
            if (!t.is_string()) bad_field("topics", "expected string");
            ev.topics.push_back(with_field("topics", [&] { return parse_hash(t.get_ref<const std::string&>()); }));
        }
        ev.data = get_bytes(l, "data");
        r.logs.push_back(std::move(ev));
    }
    return r;
}

TraceFrame decode_trace(std::string_view line) {
    json j = parse_line(line);
    TraceFrame f;
    f.tx_hash = get_hash(j, "transactionHash");
    f.block_number = get_u64(j, "blockNumber");
    const auto& path = field(j, "traceAddress");
    if (!path.is_array()) bad_field("traceAddress", "expected array");
    for (const auto& p : path) {
        if (!p.is_number_unsigned() || p.get<uint64_t>() > UINT32_MAX) bad_field("traceAddress", "expected u32");
        f.trace_path.push_back(p.get<uint32_t>());
    }
    f.kind = with_field("type", [&] { return parse_frame_kind(get_string(j, "type")); });
    f.from = get_address(j, "from");
    f.to = get_address(j, "to");
    f.value = get_wei(j, "value");
    f.gas_used = get_u64(j, "gasUsed");
    const auto& err = field(j, "error");
    if (!err.is_null()) {
        if (!err.is_string()) bad_field("error", "expected string or null");
        f.error = err.get<std::string>();
    }
    return f;
}

}  // namespace etherscope::ingest
