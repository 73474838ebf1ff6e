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
#include <etherscope/synth/ground_truth.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace etherscope::synth {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kFormat = "etherscope-ground-truth";
constexpr int kVersion = 1;

constexpr std::pair<Archetype, std::string_view> kArchetypeNames[] = {
    {Archetype::kPonzi, "ponzi"},   {Archetype::kLottery, "lottery"}, {Archetype::kErc20, "erc20_token"},
    {Archetype::kErc721, "erc721_token"}, {Archetype::kFactory, "factory"}, {Archetype::kFactoryChild, "factory_child"},
};

std::string wei(const Wei& w) { return w.to_string(); }
Wei wei_of(const json& j) { return parse_wei(j.get<std::string>()); }

derive::TokenStandard standard(const std::string& s) {
    if (s == "erc20") return derive::TokenStandard::kErc20;
    if (s == "erc721") return derive::TokenStandard::kErc721;
    throw Error(Errc::kParseError, "unknown token standard '" + s + "'");
}

json encode_config(const GenConfig& c) {
    const auto& a = c.activity;
    return json{
        {"seed", c.seed},
        {"n_blocks", c.n_blocks},
        {"start_block", c.start_block},
        {"start_timestamp", c.start_timestamp},
        {"wallets", c.wallets},
        {"miners", c.miners},
        {"ponzi", c.ponzi},
        {"lottery", c.lottery},
        {"erc20_token", c.erc20_token},
        {"erc721_token", c.erc721_token},
        {"internal_creations", c.internal_creations},
        {"block_reward", wei(c.block_reward)},
        {"genesis_balance", wei(c.genesis_balance)},
        {"gas",
         {{"base", wei(c.gas.base)},
          {"decay_per_block", c.gas.decay_per_block},
          {"period", c.gas.period},
          {"amplitude", c.gas.amplitude},
          {"noise", c.gas.noise}}},
        {"activity",
         {{"wallet_tx_rate", a.wallet_tx_rate},
          {"min_tx_per_block", a.min_tx_per_block},
          {"failed_transfer_prob", a.failed_transfer_prob},
          {"ponzi_initial_rate", a.ponzi_initial_rate},
          {"ponzi_rate_decay", a.ponzi_rate_decay},
          {"ponzi_payout_num", a.ponzi_payout_num},
          {"ponzi_payout_den", a.ponzi_payout_den},
          {"ponzi_revert_prob", a.ponzi_revert_prob},
          {"ponzi_errored_payment_prob", a.ponzi_errored_payment_prob},
          {"lottery_entry_prob", a.lottery_entry_prob},
          {"lottery_draw_interval", a.lottery_draw_interval},
          {"token_transfer_prob", a.token_transfer_prob},
          {"malformed_log_prob", a.malformed_log_prob},
          {"approval_log_prob", a.approval_log_prob},
          {"child_call_prob", a.child_call_prob},
          {"child_selfdestruct_prob", a.child_selfdestruct_prob}}},
    };
}

GenConfig decode_config(const json& j) {
    GenConfig c;
    j.at("seed").get_to(c.seed);
    j.at("n_blocks").get_to(c.n_blocks);
    j.at("start_block").get_to(c.start_block);
    j.at("start_timestamp").get_to(c.start_timestamp);
    j.at("wallets").get_to(c.wallets);
    j.at("miners").get_to(c.miners);
    j.at("ponzi").get_to(c.ponzi);
    j.at("lottery").get_to(c.lottery);
    j.at("erc20_token").get_to(c.erc20_token);
    j.at("erc721_token").get_to(c.erc721_token);
    j.at("internal_creations").get_to(c.internal_creations);
    c.block_reward = wei_of(j.at("block_reward"));
    c.genesis_balance = wei_of(j.at("genesis_balance"));
    const auto& g = j.at("gas");
    c.gas.base = wei_of(g.at("base"));
    g.at("decay_per_block").get_to(c.gas.decay_per_block);
    g.at("period").get_to(c.gas.period);
    g.at("amplitude").get_to(c.gas.amplitude);
    g.at("noise").get_to(c.gas.noise);
    const auto& a = j.at("activity");
    auto& o = c.activity;
    a.at("wallet_tx_rate").get_to(o.wallet_tx_rate);
    a.at("min_tx_per_block").get_to(o.min_tx_per_block);
    a.at("failed_transfer_prob").get_to(o.failed_transfer_prob);
    a.at("ponzi_initial_rate").get_to(o.ponzi_initial_rate);
    a.at("ponzi_rate_decay").get_to(o.ponzi_rate_decay);
    a.at("ponzi_payout_num").get_to(o.ponzi_payout_num);
    a.at("ponzi_payout_den").get_to(o.ponzi_payout_den);
    a.at("ponzi_revert_prob").get_to(o.ponzi_revert_prob);
    a.at("ponzi_errored_payment_prob").get_to(o.ponzi_errored_payment_prob);
    a.at("lottery_entry_prob").get_to(o.lottery_entry_prob);
    a.at("lottery_draw_interval").get_to(o.lottery_draw_interval);
    a.at("token_transfer_prob").get_to(o.token_transfer_prob);
    a.at("malformed_log_prob").get_to(o.malformed_log_prob);
    a.at("approval_log_prob").get_to(o.approval_log_prob);
    a.at("child_call_prob").get_to(o.child_call_prob);
    a.at("child_selfdestruct_prob").get_to(o.child_selfdestruct_prob);
    return c;
}

json encode_histogram(const ponzi::OpcodeHistogram& h) {
    json counts = json::object();
    for (const auto& [name, n] : h.counts) counts[name] = n;
    return json{{"counts", counts}, {"invalid", h.invalid_count}};
}

ponzi::OpcodeHistogram decode_histogram(const json& j) {
    ponzi::OpcodeHistogram h;
    for (const auto& [name, n] : j.at("counts").items()) h.counts[name] = n.get<uint64_t>();
    j.at("invalid").get_to(h.invalid_count);
    return h;
}

template <class Map, class F>
json encode_address_map(const Map& m, F&& value) {
    json out = json::object();
    for (const auto& [a, v] : m) out[a.hex()] = value(v);
    return out;
}

}  // namespace

std::string_view to_string(Archetype a) noexcept {
    for (const auto& [k, name] : kArchetypeNames) {
        if (k == a) return name;
    }
    return "?";
}

Archetype parse_archetype(std::string_view text) {
    for (const auto& [k, name] : kArchetypeNames) {
        if (name == text) return k;
    }
    throw Error(Errc::kParseError, "unknown archetype '" + std::string(text) + "'");
}

std::map<Address, ponzi::Label> GroundTruth::labels() const {
    std::map<Address, ponzi::Label> out;
    for (const auto& c : contracts) out[c.address] = c.label;
    return out;
}

std::vector<Address> GroundTruth::contracts_of(Archetype a) const {
    std::vector<Address> out;
    for (const auto& c : contracts) {
        if (c.archetype == a) out.push_back(c.address);
    }
    return out;
}

std::string encode_ground_truth(const GroundTruth& t) {
    json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["config"] = encode_config(t.config);
    j["genesis"] = encode_address_map(t.genesis, [](const Wei& w) { return wei(w); });
    j["miners"] = json::array();
    for (const auto& m : t.miners) j["miners"].push_back(m.hex());

    j["contracts"] = json::array();
    for (const auto& c : t.contracts) {
        j["contracts"].push_back({
            {"address", c.address.hex()},
            {"archetype", to_string(c.archetype)},
            {"label", ponzi::to_string(c.label)},
            {"creator", c.creator.hex()},
            {"creation_block", c.creation_block},
            {"creation_tx_hash", c.creation_tx_hash.hex()},
            {"creation_mode", derive::to_string(c.creation_mode)},
            {"opcodes", encode_histogram(c.opcodes)},
        });
    }

    j["flows"] = encode_address_map(t.flows, [](const std::vector<TruthFlowEvent>& events) {
        json arr = json::array();
        for (const auto& e : events) {
            arr.push_back({{"block_number", e.block_number},
                           {"tx_hash", e.tx_hash.hex()},
                           {"trace_path", format_trace_path(e.trace_path)},
                           {"kind", flow::to_string(e.kind)},
                           {"counterparty", e.counterparty.hex()},
                           {"amount", wei(e.amount)}});
        }
        return arr;
    });
    j["balances"] = encode_address_map(t.balances, [](const Wei& w) { return wei(w); });

    j["gas"] = json::array();
    for (const auto& g : t.gas) {
        j["gas"].push_back({{"block_number", g.block_number},
                            {"tx_count", g.tx_count},
                            {"sum", wei(g.sum)},
                            {"min", wei(g.min)},
                            {"max", wei(g.max)}});
    }
    j["gas_period"] = t.gas_period;

    j["token_transfers"] = json::array();
    for (const auto& x : t.token_transfers) {
        j["token_transfers"].push_back({{"block_number", x.block_number},
                                        {"tx_hash", x.tx_hash.hex()},
                                        {"log_index", x.log_index},
                                        {"token", x.token.hex()},
                                        {"from", x.from.hex()},
                                        {"to", x.to.hex()},
                                        {"amount_or_token_id", to_decimal(x.amount_or_token_id)},
                                        {"standard", derive::to_string(x.standard)}});
    }
    j["malformed_logs"] = json::array();
    for (const auto& m : t.malformed_logs) {
        j["malformed_logs"].push_back({{"block_number", m.block_number},
                                       {"tx_hash", m.tx_hash.hex()},
                                       {"log_index", m.log_index},
                                       {"standard", derive::to_string(m.standard)}});
    }
    j["contract_calls"] = encode_address_map(t.contract_calls, [](uint64_t n) { return n; });
    j["tx_count"] = t.tx_count;
    j["internal_transfer_count"] = t.internal_transfer_count;
    return j.dump(2) + "\n";
}

GroundTruth decode_ground_truth(std::string_view text) {
    GroundTruth t;
    try {
        const json j = json::parse(text);
        if (j.at("format") != kFormat) throw Error(Errc::kParseError, "not a ground-truth file");
        if (j.at("version") != kVersion) throw Error(Errc::kParseError, "unsupported ground-truth version");
        t.config = decode_config(j.at("config"));
        for (const auto& [a, v] : j.at("genesis").items()) t.genesis[parse_address(a)] = wei_of(v);
        for (const auto& m : j.at("miners")) t.miners.push_back(parse_address(m.get<std::string>()));
        for (const auto& c : j.at("contracts")) {
            TruthContract tc;
            tc.address = parse_address(c.at("address").get<std::string>());
            tc.archetype = parse_archetype(c.at("archetype").get<std::string>());
            tc.label = ponzi::parse_label(c.at("label").get<std::string>());
            tc.creator = parse_address(c.at("creator").get<std::string>());
            c.at("creation_block").get_to(tc.creation_block);
            tc.creation_tx_hash = parse_hash(c.at("creation_tx_hash").get<std::string>());
            tc.creation_mode = c.at("creation_mode") == "top_level" ? derive::CreationMode::kTopLevel
                                                                    : derive::CreationMode::kInternalCreate;
            tc.opcodes = decode_histogram(c.at("opcodes"));
            t.contracts.push_back(std::move(tc));
        }
        for (const auto& [a, events] : j.at("flows").items()) {
            auto& out = t.flows[parse_address(a)];
            for (const auto& e : events) {
                TruthFlowEvent fe;
                e.at("block_number").get_to(fe.block_number);
                fe.tx_hash = parse_hash(e.at("tx_hash").get<std::string>());
                const auto path = e.at("trace_path").get<std::string>();
                std::stringstream ss(path);
                for (std::string part; std::getline(ss, part, '.');) {
                    fe.trace_path.push_back(static_cast<uint32_t>(std::stoul(part)));
                }
                fe.kind = e.at("kind") == "investment" ? flow::FlowKind::kInvestment : flow::FlowKind::kPayment;
                fe.counterparty = parse_address(e.at("counterparty").get<std::string>());
                fe.amount = wei_of(e.at("amount"));
                out.push_back(std::move(fe));
            }
        }
        for (const auto& [a, v] : j.at("balances").items()) t.balances[parse_address(a)] = wei_of(v);
        for (const auto& g : j.at("gas")) {
            TruthGas tg;
            g.at("block_number").get_to(tg.block_number);
            g.at("tx_count").get_to(tg.tx_count);
            tg.sum = wei_of(g.at("sum"));
            tg.min = wei_of(g.at("min"));
            tg.max = wei_of(g.at("max"));
            t.gas.push_back(tg);
        }
        j.at("gas_period").get_to(t.gas_period);
        for (const auto& x : j.at("token_transfers")) {
            TruthTokenTransfer tt;
            x.at("block_number").get_to(tt.block_number);
            tt.tx_hash = parse_hash(x.at("tx_hash").get<std::string>());
            x.at("log_index").get_to(tt.log_index);
            tt.token = parse_address(x.at("token").get<std::string>());
            tt.from = parse_address(x.at("from").get<std::string>());
            tt.to = parse_address(x.at("to").get<std::string>());
            tt.amount_or_token_id = parse_u256(x.at("amount_or_token_id").get<std::string>());
            tt.standard = standard(x.at("standard").get<std::string>());
            t.token_transfers.push_back(std::move(tt));
        }
        for (const auto& m : j.at("malformed_logs")) {
            TruthMalformedLog ml;
            m.at("block_number").get_to(ml.block_number);
            ml.tx_hash = parse_hash(m.at("tx_hash").get<std::string>());
            m.at("log_index").get_to(ml.log_index);
            ml.standard = standard(m.at("standard").get<std::string>());
            t.malformed_logs.push_back(ml);
        }
        for (const auto& [a, n] : j.at("contract_calls").items()) t.contract_calls[parse_address(a)] = n.get<uint64_t>();
        j.at("tx_count").get_to(t.tx_count);
        j.at("internal_transfer_count").get_to(t.internal_transfer_count);
    } catch (const json::exception& e) {
        throw Error(Errc::kParseError, std::string("ground truth: ") + e.what());
    }
    return t;
}

void write_ground_truth(const GroundTruth& truth, const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
    out << encode_ground_truth(truth);
    out.flush();
    if (!out) throw Error(Errc::kIoError, "write failed: " + path.string());
}

GroundTruth read_ground_truth(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return decode_ground_truth(ss.str());
}

}  // namespace etherscope::synth
