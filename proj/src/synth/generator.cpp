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

#include <etherscope/derive/derive.hpp>
#include <etherscope/error.hpp>
#include <etherscope/ingest/reader.hpp>
#include <etherscope/synth/generator.hpp>
#include <etherscope/synth/random.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <stdexcept>

namespace etherscope::synth {

namespace fs = std::filesystem;
using derive::TokenStandard;
using ponzi::Label;
using ingest::RawBundle;

namespace {

constexpr uint32_t kDeploysPerBlock = 25;
constexpr uint64_t kBlockGasLimit = 30'000'000;
constexpr uint64_t kTransferGas = 21'000;
constexpr uint64_t kCallGasLimit = 300'000;

using Selector4 = std::array<uint8_t, 4>;
constexpr Selector4 kInvest{0xe8, 0xb5, 0xe5, 0x1f};
constexpr Selector4 kEnter{0xe9, 0x7d, 0xcb, 0x62};
constexpr Selector4 kDraw{0x0e, 0xec, 0xae, 0x21};
constexpr Selector4 kTransfer{0xa9, 0x05, 0x9c, 0xbb};
constexpr Selector4 kTransferFrom{0x23, 0xb8, 0x72, 0xdd};
constexpr Selector4 kMint{0x40, 0xc1, 0x0f, 0x19};
constexpr Selector4 kSpawn{0x71, 0x5a, 0x15, 0x30};
constexpr Selector4 kPoke{0x18, 0x16, 0x0d, 0xdd};
constexpr Selector4 kRetire{0x9e, 0x5f, 0xaa, 0x3c};

const Hash32 kApprovalSignature =
    Hash32::parse("0x8c5be1e5ebec7d5bd14f71427d1e84f3dd0314c0f7b2291e5b200ac8c7c3b925");

Wei ether_milli(uint64_t milli) { return Wei(U256(milli) * U256(1'000'000'000'000'000ull)); }

Hash32 topic_of(const Address& a) {
    std::array<uint8_t, 32> t{};
    std::copy(a.bytes().begin(), a.bytes().end(), t.begin() + 12);
    return Hash32(t);
}

Hash32 topic_of(const U256& v) { return Hash32(u256_to_be32(v)); }

Bytes call_input(const Selector4& sel, std::initializer_list<std::array<uint8_t, 32>> words) {
    Bytes out(sel.begin(), sel.end());
    for (const auto& w : words) out.insert(out.end(), w.begin(), w.end());
    return out;
}

std::array<uint8_t, 32> word(const Address& a) { return topic_of(a).bytes(); }
std::array<uint8_t, 32> word(const U256& v) { return u256_to_be32(v); }

// ---------------------------------------------------------------------------
// Bytecode

struct Weighted {
    std::string_view name;
    double weight;
};

const std::vector<Weighted> kCommonOps = {
    {"PUSH1", 10},   {"PUSH2", 4},  {"PUSH4", 1},   {"PUSH32", 0.4}, {"DUP1", 4},         {"DUP2", 3},
    {"SWAP1", 3},    {"SWAP2", 1},  {"POP", 3},     {"MSTORE", 2},   {"MLOAD", 2},        {"JUMPDEST", 3},
    {"JUMP", 2},     {"JUMPI", 2},  {"ADD", 2},     {"SUB", 1},      {"MUL", 1},          {"EQ", 1.5},
    {"ISZERO", 1.5}, {"AND", 1},    {"SHR", 1},     {"RETURN", 0.3}, {"REVERT", 0.3},     {"STOP", 0.2},
    {"CALLDATALOAD", 1}, {"CALLDATASIZE", 0.5},
};

const std::vector<Weighted>& archetype_ops(Archetype a) {
    static const std::vector<Weighted> ponzi = {
        {"CALLVALUE", 3}, {"CALLER", 2.5}, {"SLOAD", 3}, {"SSTORE", 3}, {"BALANCE", 2},
        {"SELFBALANCE", 1}, {"CALL", 2.5}, {"GT", 1.5}, {"LT", 1.5}, {"DIV", 1.2}, {"GAS", 1},
    };
    static const std::vector<Weighted> lottery = {
        {"TIMESTAMP", 2}, {"NUMBER", 2}, {"BLOCKHASH", 1.5}, {"MOD", 2}, {"KECCAK256", 2},
        {"CALLVALUE", 1.5}, {"SLOAD", 2}, {"SSTORE", 1.5}, {"CALL", 1}, {"PREVRANDAO", 1},
    };
    static const std::vector<Weighted> erc20 = {
        {"LOG3", 1.5}, {"CALLER", 2}, {"SLOAD", 3}, {"SSTORE", 2.5}, {"KECCAK256", 2}, {"SUB", 2}, {"LT", 1},
    };
    static const std::vector<Weighted> erc721 = {
        {"LOG4", 1.5}, {"CALLER", 2}, {"SLOAD", 3}, {"SSTORE", 2.5}, {"KECCAK256", 2}, {"EXTCODESIZE", 1},
        {"STATICCALL", 0.5},
    };
    static const std::vector<Weighted> factory = {
        {"CREATE", 1.5}, {"CREATE2", 0.5}, {"DELEGATECALL", 1}, {"STATICCALL", 1}, {"SELFDESTRUCT", 0.5},
        {"EXTCODESIZE", 1}, {"CALLER", 1},
    };
    switch (a) {
        case Archetype::kPonzi: return ponzi;
        case Archetype::kLottery: return lottery;
        case Archetype::kErc20: return erc20;
        case Archetype::kErc721: return erc721;
        default: return factory;
    }
}

struct Bytecode {
    Bytes code;
    ponzi::OpcodeHistogram histogram;
};

// Draws 400..1200 instructions from the common and archetype profiles, each
// weight jittered per contract, with some uniform filler and a few bytes that
// are not instructions.
Bytecode make_bytecode(Rng& rng, Archetype a, const ponzi::OpcodeTable& table) {
    std::map<std::string, uint8_t, std::less<>> by_name;
    for (const auto& e : table.entries()) by_name.emplace(e.name, e.opcode);

    std::vector<std::pair<uint8_t, double>> profile;
    double total = 0;
    for (const auto* list : {&kCommonOps, &archetype_ops(a)}) {
        for (const auto& w : *list) {
            const double jittered = w.weight * std::exp(0.4 * rng.normal());
            profile.emplace_back(by_name.at(std::string(w.name)), jittered);
            total += jittered;
        }
    }
    static constexpr uint8_t kUnassigned[] = {0x0c, 0x0d, 0x21, 0x2f, 0x4b, 0xa5, 0xef, 0xfe};

    Bytecode out;
    const uint64_t n = rng.between(400, 1200);
    for (uint64_t i = 0; i < n; ++i) {
        const double r = rng.uniform();
        if (r < 0.004) {
            out.code.push_back(kUnassigned[rng.below(std::size(kUnassigned))]);
            ++out.histogram.invalid_count;
            continue;
        }
        const ponzi::OpcodeInfo* info;
        if (r < 0.06) {
            info = &table.entries()[rng.below(table.entries().size())];
        } else {
            double pick = rng.uniform() * total;
            std::size_t k = 0;
            while (k + 1 < profile.size() && pick >= profile[k].second) pick -= profile[k++].second;
            info = table.lookup(profile[k].first);
        }
        out.code.push_back(info->opcode);
        ++out.histogram.counts[info->name];
        auto imm = rng.bytes(info->immediate_bytes);
        out.code.insert(out.code.end(), imm.begin(), imm.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Block assembly

struct FrameSpec {
    TracePath path;
    FrameKind kind{FrameKind::kCall};
    Address from;
    Address to;
    Wei value;
    std::optional<std::string> error;
};

struct TxSpec {
    Address from;
    std::optional<Address> to;
    Wei value;
    Bytes input;
    uint64_t gas_used{kTransferGas};
    uint64_t gas_limit{kTransferGas};
    TxStatus status{TxStatus::kSuccess};
    std::optional<Address> created;
    std::vector<LogEvent> logs;
    std::vector<FrameSpec> frames;
    std::vector<std::pair<std::size_t, TruthTokenTransfer>> planted;  // log position, truth
    std::vector<std::pair<std::size_t, TokenStandard>> malformed;
};

class ChainBuilder {
  public:
    ChainBuilder(const GenConfig& cfg, Rng& rng, GroundTruth& truth) : cfg_(cfg), rng_(rng), truth_(truth) {}

    void begin_block(uint64_t i) {
        const uint64_t number = cfg_.start_block + i;
        RawBundle b;
        b.block.number = number;
        b.block.parent_hash = bundles_.empty() ? (number == 0 ? Hash32() : rng_.hash()) : bundles_.back().block.hash;
        b.block.hash = rng_.hash();
        b.block.timestamp = bundles_.empty() ? cfg_.start_timestamp : bundles_.back().block.timestamp + rng_.between(5, 20);
        b.block.miner = truth_.miners[rng_.below(truth_.miners.size())];
        b.block.gas_limit = kBlockGasLimit;
        bundles_.push_back(std::move(b));
        log_index_ = 0;
        prices_.clear();
        truth_.balances[current().block.miner] += cfg_.block_reward;
    }

    void end_block() {
        if (prices_.empty()) return;
        TruthGas g;
        g.block_number = current().block.number;
        g.tx_count = prices_.size();
        g.min = *std::min_element(prices_.begin(), prices_.end());
        g.max = *std::max_element(prices_.begin(), prices_.end());
        for (const auto& p : prices_) g.sum += p;
        truth_.gas.push_back(g);
    }

    [[nodiscard]] std::size_t tx_count() const { return current().block.transactions.size(); }
    [[nodiscard]] Wei balance(const Address& a) const {
        auto it = truth_.balances.find(a);
        return it == truth_.balances.end() ? Wei() : it->second;
    }
    void register_contract(const Address& a) { contracts_.insert(a); }

    // Appends the transaction if the block has gas left and every debit is
    // covered; returns its hash.
    std::optional<Hash32> add(TxSpec s) {
        RawBundle& b = current();
        if (b.block.gas_used + s.gas_used > b.block.gas_limit) return std::nullopt;
        const Wei price = gas_price(b.block.number);
        const Wei fee = checked_mul(price, Wei(s.gas_used));
        const bool ok = s.status == TxStatus::kSuccess;
        if (!ok) {
            s.logs.clear();
            s.planted.clear();
            s.malformed.clear();
            s.created.reset();
        }

        // Frames that move value: not under an errored frame, in a successful transaction.
        std::vector<bool> moves(s.frames.size(), false);
        for (std::size_t k = 0; k < s.frames.size() && ok; ++k) {
            const auto& f = s.frames[k];
            if (f.kind == FrameKind::kDelegateCall || f.kind == FrameKind::kStaticCall || f.value.is_zero()) continue;
            bool errored = f.error.has_value();
            for (const auto& g : s.frames) {
                if (g.error && is_ancestor(g.path, f.path)) errored = true;
            }
            moves[k] = !errored;
        }

        std::map<Address, Wei> overlay;
        auto bal = [&](const Address& a) -> Wei& {
            auto it = overlay.find(a);
            if (it == overlay.end()) it = overlay.emplace(a, balance(a)).first;
            return it->second;
        };
        auto move = [&](const Address& from, const Address& to, const Wei& v) {
            if (v.is_zero()) return true;
            if (bal(from) < v) return false;
            bal(from) -= v;
            bal(to) += v;
            return true;
        };
        const Address value_target = s.to ? *s.to : (s.created ? *s.created : Address());
        if (ok && !move(s.from, value_target, s.value)) return std::nullopt;
        for (std::size_t k = 0; k < s.frames.size(); ++k) {
            if (moves[k] && !move(s.frames[k].from, s.frames[k].to, s.frames[k].value)) return std::nullopt;
        }
        if (!move(s.from, b.block.miner, fee)) return std::nullopt;
        for (auto& [a, v] : overlay) truth_.balances[a] = v;

        Transaction tx;
        tx.hash = rng_.hash();
        tx.block_number = b.block.number;
        tx.tx_index = static_cast<uint32_t>(b.block.transactions.size());
        tx.from = s.from;
        tx.to = s.to;
        tx.value = s.value;
        tx.gas = s.gas_limit;
        tx.gas_price = price;
        tx.input = std::move(s.input);
        tx.nonce = nonces_[s.from]++;

        // Calls into contracts known before this transaction.
        if (s.to && contracts_.contains(*s.to)) ++truth_.contract_calls[*s.to];
        for (const auto& f : s.frames) {
            const bool call_kind = f.kind == FrameKind::kCall || f.kind == FrameKind::kDelegateCall ||
                                   f.kind == FrameKind::kStaticCall;
            if (call_kind && contracts_.contains(f.to)) ++truth_.contract_calls[f.to];
        }
        if (s.created) contracts_.insert(*s.created);
        for (std::size_t k = 0; k < s.frames.size(); ++k) {
            if (s.frames[k].kind == FrameKind::kCreate && ok && !s.frames[k].error) contracts_.insert(s.frames[k].to);
        }

        // Flow events, for every contract.
        auto flow = [&](const Address& c, const TracePath& path, flow::FlowKind kind, const Address& who,
                        const Wei& v) {
            if (contracts_.contains(c)) truth_.flows[c].push_back({b.block.number, tx.hash, path, kind, who, v});
        };
        if (ok && s.to && !s.value.is_zero()) flow(*s.to, {}, flow::FlowKind::kInvestment, s.from, s.value);
        for (std::size_t k = 0; k < s.frames.size(); ++k) {
            if (!moves[k] || s.frames[k].kind == FrameKind::kDelegateCall) continue;
            const auto& f = s.frames[k];
            ++truth_.internal_transfer_count;
            flow(f.to, f.path, flow::FlowKind::kInvestment, f.from, f.value);
            flow(f.from, f.path, flow::FlowKind::kPayment, f.to, f.value);
        }

        for (auto& [pos, t] : s.planted) {
            t.block_number = b.block.number;
            t.tx_hash = tx.hash;
            t.log_index = log_index_ + static_cast<uint32_t>(pos);
            truth_.token_transfers.push_back(t);
        }
        for (const auto& [pos, standard] : s.malformed) {
            truth_.malformed_logs.push_back(
                {b.block.number, tx.hash, log_index_ + static_cast<uint32_t>(pos), standard});
        }
        log_index_ += static_cast<uint32_t>(s.logs.size());

        Receipt r;
        r.tx_hash = tx.hash;
        r.block_number = b.block.number;
        r.status = s.status;
        r.gas_used = s.gas_used;
        r.contract_address = s.created;
        r.logs = std::move(s.logs);
        b.receipts.emplace(tx.hash, std::move(r));

        if (!s.frames.empty()) {
            auto& frames = b.traces[tx.hash];
            for (auto& f : s.frames) {
                TraceFrame t;
                t.tx_hash = tx.hash;
                t.block_number = b.block.number;
                t.trace_path = f.path;
                t.kind = f.kind;
                t.from = f.from;
                t.to = f.to;
                t.value = f.value;
                t.gas_used = rng_.between(2'300, 40'000);
                t.error = f.error;
                frames.push_back(std::move(t));
            }
        }

        b.block.gas_used += s.gas_used;
        prices_.push_back(price);
        ++truth_.tx_count;
        const Hash32 hash = tx.hash;
        b.block.transactions.push_back(std::move(tx));
        return hash;
    }

    ingest::Corpus take() { return std::move(bundles_); }

  private:
    RawBundle& current() { return bundles_.back(); }
    [[nodiscard]] const RawBundle& current() const { return bundles_.back(); }

    Wei gas_price(uint64_t number) {
        const auto& g = cfg_.gas;
        const double level = g.base.to_double() * std::pow(g.decay_per_block, static_cast<double>(number));
        double season = 1.0;
        if (g.amplitude > 0) {
            const double phase = static_cast<double>(number % g.period) / static_cast<double>(g.period);
            season += g.amplitude * std::sin(2.0 * std::numbers::pi * phase);
        }
        const double price = level * season + level * g.noise * rng_.normal();
        return Wei(static_cast<uint64_t>(std::max(1.0, std::round(price))));
    }

    const GenConfig& cfg_;
    Rng& rng_;
    GroundTruth& truth_;
    ingest::Corpus bundles_;
    std::set<Address> contracts_;
    std::map<Address, uint64_t> nonces_;
    std::vector<Wei> prices_;
    uint32_t log_index_{0};
};

// ---------------------------------------------------------------------------
// Archetypes

struct Contract {
    Contract(Archetype kind, const Address& at, const Address& by, uint64_t when)
        : archetype(kind), address(at), owner(by), deploy_at(when) {}

    Archetype archetype;
    Address address;
    Address owner;
    uint64_t deploy_at{0};  // relative block
    bool deployed{false};
    bool alive{true};

    std::deque<std::pair<Address, Wei>> queue;  // ponzi
    std::vector<Address> entrants;              // lottery
    std::map<Address, U256> holdings;           // erc20
    std::vector<std::pair<U256, Address>> nfts;  // erc721: token id, holder
    uint64_t next_token_id{1};
    std::vector<std::size_t> children;           // factory: indices of spawned children
    uint32_t spawned{0};
};

class Generator {
  public:
    explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed), chain_(cfg, rng_, truth_) {}

    GeneratedChain run() {
        truth_.config = cfg_;
        truth_.gas_period = cfg_.gas.period;
        if (cfg_.n_blocks == 0) return {{}, std::move(truth_)};
        for (uint32_t i = 0; i < cfg_.wallets; ++i) {
            wallets_.push_back(rng_.address());
            truth_.genesis[wallets_.back()] = cfg_.genesis_balance;
        }
        truth_.balances = truth_.genesis;
        for (uint32_t i = 0; i < cfg_.miners; ++i) truth_.miners.push_back(rng_.address());

        auto plan = [&](Archetype a, uint32_t n) {
            for (uint32_t i = 0; i < n; ++i) {
                Contract c{a, rng_.address(), wallet(), contracts_.size() / kDeploysPerBlock};
                contracts_.push_back(std::move(c));
            }
        };
        plan(Archetype::kPonzi, cfg_.ponzi);
        plan(Archetype::kLottery, cfg_.lottery);
        plan(Archetype::kErc20, cfg_.erc20_token);
        plan(Archetype::kErc721, cfg_.erc721_token);
        if (cfg_.internal_creations > 0) plan(Archetype::kFactory, 1);
        const std::size_t planned = contracts_.size();
        contracts_.reserve(planned + cfg_.internal_creations);

        for (uint64_t i = 0; i < cfg_.n_blocks; ++i) {
            block_index_ = i;
            chain_.begin_block(i);
            for (std::size_t k = 0; k < planned; ++k) {
                if (contracts_[k].deploy_at == i) deploy(contracts_[k]);
            }
            for (std::size_t k = 0; k < planned; ++k) {
                Contract& c = contracts_[k];
                if (!c.deployed || c.deploy_at >= i) continue;
                const uint64_t age = i - c.deploy_at;
                switch (c.archetype) {
                    case Archetype::kPonzi: step_ponzi(c, age); break;
                    case Archetype::kLottery: step_lottery(c, age); break;
                    case Archetype::kErc20: step_erc20(c, age); break;
                    case Archetype::kErc721: step_erc721(c, age); break;
                    case Archetype::kFactory: step_factory(k); break;
                    case Archetype::kFactoryChild: break;
                }
            }
            wallet_noise();
            chain_.end_block();
        }

        GeneratedChain out{chain_.take(), std::move(truth_)};
        check_contrast(out.truth);
        return out;
    }

  private:
    Address wallet() { return wallets_[rng_.below(wallets_.size())]; }

    Address other_wallet(const Address& not_this) {
        Address a = wallet();
        while (a == not_this) a = wallet();
        return a;
    }

    void deploy(Contract& c) {
        TxSpec s;
        s.from = c.owner;
        s.created = c.address;
        auto code = make_bytecode(rng_, c.archetype, ponzi::OpcodeTable::canonical());
        s.input = code.code;
        s.gas_used = 53'000 + 200 * s.input.size();
        s.gas_limit = s.gas_used + 50'000;
        if (c.archetype == Archetype::kFactory) s.value = ether_milli(1000ull * cfg_.internal_creations);
        if (c.archetype == Archetype::kErc20) {
            const U256 supply = U256(1'000'000) * kEther.value();
            const auto data = word(supply);
            s.logs.push_back({c.address, {derive::kTransferSignature, topic_of(Address()), topic_of(c.owner)},
                              Bytes(data.begin(), data.end())});
            s.planted.push_back({0, {0, {}, 0, c.address, Address(), c.owner, supply, TokenStandard::kErc20}});
            c.holdings[c.owner] = supply;
        }
        auto hash = chain_.add(std::move(s));
        if (!hash) throw std::logic_error("generator could not deploy " + c.address.hex());
        c.deployed = true;
        TruthContract t;
        t.address = c.address;
        t.archetype = c.archetype;
        t.label = c.archetype == Archetype::kPonzi ? Label::kPonzi : Label::kNormal;
        t.creator = c.owner;
        t.creation_block = cfg_.start_block + c.deploy_at;
        t.creation_tx_hash = *hash;
        t.creation_mode = derive::CreationMode::kTopLevel;
        t.opcodes = std::move(code.histogram);
        truth_.contracts.push_back(std::move(t));
        truth_.flows[c.address];
    }

    // Pays the earliest unpaid investor once the balance covers the payout.
    void step_ponzi(Contract& c, uint64_t age) {
        const auto& a = cfg_.activity;
        const double rate = a.ponzi_initial_rate * std::pow(a.ponzi_rate_decay, static_cast<double>(age - 1));
        if (!rng_.chance(rate)) return;
        const Address investor = wallet();
        const Wei amount = ether_milli(rng_.between(100, 5000));

        TxSpec s;
        s.from = investor;
        s.to = c.address;
        s.value = amount;
        s.input = Bytes(kInvest.begin(), kInvest.end());
        s.gas_used = rng_.between(40'000, 90'000);
        s.gas_limit = kCallGasLimit;

        auto payout = [&](const Wei& x) {
            return Wei(U256(x.value() * a.ponzi_payout_num / a.ponzi_payout_den));
        };
        if (rng_.chance(a.ponzi_revert_prob)) {
            s.status = TxStatus::kFailure;
            const Address head = c.queue.empty() ? investor : c.queue.front().first;
            const Wei v = c.queue.empty() ? payout(amount) : payout(c.queue.front().second);
            s.frames.push_back({{0}, FrameKind::kCall, c.address, head, v, std::nullopt});
            chain_.add(std::move(s));
            return;
        }

        const Wei after = chain_.balance(c.address) + amount;
        c.queue.emplace_back(investor, amount);
        bool paid = false;
        const auto& [head, head_amount] = c.queue.front();
        const Wei due = payout(head_amount);
        if (after >= due) {
            if (rng_.chance(a.ponzi_errored_payment_prob)) {
                s.frames.push_back({{0}, FrameKind::kCall, c.address, head, due, std::string("out of gas")});
                s.frames.push_back({{0, 0}, FrameKind::kCall, head, c.address, Wei(1), std::nullopt});
            } else {
                s.frames.push_back({{0}, FrameKind::kCall, c.address, head, due, std::nullopt});
                paid = true;
            }
        }
        if (!chain_.add(std::move(s))) {
            c.queue.pop_back();
            return;
        }
        if (paid) c.queue.pop_front();
    }

    // Every draw interval the owner pays the whole pot to one entrant.
    void step_lottery(Contract& c, uint64_t age) {
        const auto& a = cfg_.activity;
        if (age % a.lottery_draw_interval == 0 && !c.entrants.empty()) {
            const Address winner = c.entrants[rng_.below(c.entrants.size())];
            TxSpec s;
            s.from = c.owner;
            s.to = c.address;
            s.input = Bytes(kDraw.begin(), kDraw.end());
            s.gas_used = rng_.between(30'000, 60'000);
            s.gas_limit = kCallGasLimit;
            s.frames.push_back({{0}, FrameKind::kCall, c.address, winner, chain_.balance(c.address), std::nullopt});
            if (chain_.add(std::move(s))) c.entrants.clear();
        }
        if (rng_.chance(a.lottery_entry_prob)) {
            const Address player = wallet();
            TxSpec s;
            s.from = player;
            s.to = c.address;
            s.value = ether_milli(100);
            s.input = Bytes(kEnter.begin(), kEnter.end());
            s.gas_used = rng_.between(30'000, 50'000);
            s.gas_limit = kCallGasLimit;
            if (chain_.add(std::move(s))) c.entrants.push_back(player);
        }
    }

    // Optional noise after the real Transfer: an Approval log and, rarely, a
    // Transfer-signature log whose data does not fit the standard.
    void decorate(TxSpec& s, const Address& token, TokenStandard standard, const Address& owner) {
        const auto& a = cfg_.activity;
        if (rng_.chance(a.approval_log_prob)) {
            const auto w = word(U256(rng_.next()));
            s.logs.push_back({token, {kApprovalSignature, topic_of(owner), topic_of(wallet())}, Bytes(w.begin(), w.end())});
        }
        if (rng_.chance(a.malformed_log_prob)) {
            LogEvent bad{token, {derive::kTransferSignature, topic_of(owner), topic_of(wallet())}, {}};
            if (standard == TokenStandard::kErc20) {
                static constexpr std::size_t kSizes[] = {0, 31, 33, 64};
                bad.data = rng_.bytes(kSizes[rng_.below(4)]);
            } else {
                bad.topics.push_back(topic_of(U256(rng_.next())));
                bad.data = rng_.bytes(32);
            }
            s.malformed.push_back({s.logs.size(), standard});
            s.logs.push_back(std::move(bad));
        }
    }

    void step_erc20(Contract& c, uint64_t age) {
        Address from;
        U256 amount;
        if (age == 1) {
            from = c.owner;
            amount = kEther.value();  // the planted 10^18 transfer
        } else {
            if (!rng_.chance(cfg_.activity.token_transfer_prob)) return;
            std::vector<Address> holders;
            for (const auto& [h, v] : c.holdings) {
                if (v > 0) holders.push_back(h);
            }
            from = holders[rng_.below(holders.size())];
            const U256 held = c.holdings[from];
            amount = held > U256(UINT64_MAX) ? U256(rng_.between(1, UINT64_MAX)) : U256(rng_.between(1, held.convert_to<uint64_t>()));
        }
        const Address to = other_wallet(from);
        TxSpec s;
        s.from = from;
        s.to = c.address;
        s.input = call_input(kTransfer, {word(to), word(amount)});
        s.gas_used = rng_.between(35'000, 55'000);
        s.gas_limit = kCallGasLimit;
        const auto data = word(amount);
        s.logs.push_back({c.address, {derive::kTransferSignature, topic_of(from), topic_of(to)},
                          Bytes(data.begin(), data.end())});
        s.planted.push_back({0, {0, {}, 0, c.address, from, to, amount, TokenStandard::kErc20}});
        decorate(s, c.address, TokenStandard::kErc20, from);
        if (!chain_.add(std::move(s))) return;
        c.holdings[from] -= amount;
        c.holdings[to] += amount;
    }

    void step_erc721(Contract& c, uint64_t age) {
        if (age != 1 && !rng_.chance(cfg_.activity.token_transfer_prob)) return;
        const bool mint = age == 1 || c.nfts.empty() || rng_.chance(0.5);
        TxSpec s;
        s.to = c.address;
        s.gas_used = rng_.between(45'000, 80'000);
        s.gas_limit = kCallGasLimit;
        std::size_t slot = 0;
        Address from, to;
        U256 id;
        if (mint) {
            s.from = c.owner;
            to = wallet();
            id = U256(c.next_token_id);
            s.input = call_input(kMint, {word(to), word(id)});
        } else {
            slot = rng_.below(c.nfts.size());
            id = c.nfts[slot].first;
            from = c.nfts[slot].second;
            s.from = from;
            to = other_wallet(from);
            s.input = call_input(kTransferFrom, {word(from), word(to), word(id)});
        }
        s.logs.push_back({c.address, {derive::kTransferSignature, topic_of(from), topic_of(to), topic_of(id)}, {}});
        s.planted.push_back({0, {0, {}, 0, c.address, from, to, id, TokenStandard::kErc721}});
        decorate(s, c.address, TokenStandard::kErc721, s.from);
        if (!chain_.add(std::move(s))) return;
        if (mint) {
            c.nfts.emplace_back(id, to);
            ++c.next_token_id;
        } else {
            c.nfts[slot].second = to;
        }
    }

    // Spawns one child per block until all exist, then pokes children with
    // delegatecall/staticcall and occasionally retires one by selfdestruct.
    void step_factory(std::size_t index) {
        const auto& a = cfg_.activity;
        Contract& f = contracts_[index];
        if (f.spawned < cfg_.internal_creations) {
            const Address child = rng_.address();
            TxSpec s;
            s.from = f.owner;
            s.to = f.address;
            s.input = Bytes(kSpawn.begin(), kSpawn.end());
            s.gas_used = rng_.between(80'000, 150'000);
            s.gas_limit = kCallGasLimit;
            s.frames.push_back({{0}, FrameKind::kCreate, f.address, child, ether_milli(500), std::nullopt});
            auto hash = chain_.add(std::move(s));
            if (!hash) return;
            ++f.spawned;
            Contract c{Archetype::kFactoryChild, child, f.owner, 0};
            c.deployed = true;
            f.children.push_back(contracts_.size());
            TruthContract t;
            t.address = child;
            t.archetype = Archetype::kFactoryChild;
            t.label = Label::kNormal;
            t.creator = f.address;
            t.creation_block = cfg_.start_block + block_index_;
            t.creation_tx_hash = *hash;
            t.creation_mode = derive::CreationMode::kInternalCreate;
            truth_.contracts.push_back(std::move(t));
            truth_.flows[child];
            contracts_.push_back(std::move(c));
            return;
        }
        for (std::size_t ci : f.children) {
            Contract& c = contracts_[ci];
            if (!c.alive) continue;
            if (rng_.chance(a.child_selfdestruct_prob)) {
                TxSpec s;
                s.from = f.owner;
                s.to = f.address;
                s.input = Bytes(kRetire.begin(), kRetire.end());
                s.gas_used = rng_.between(30'000, 60'000);
                s.gas_limit = kCallGasLimit;
                s.frames.push_back({{0}, FrameKind::kCall, f.address, c.address, Wei(), std::nullopt});
                s.frames.push_back(
                    {{0, 0}, FrameKind::kSelfDestruct, c.address, f.owner, chain_.balance(c.address), std::nullopt});
                if (chain_.add(std::move(s))) c.alive = false;
            } else if (rng_.chance(a.child_call_prob)) {
                TxSpec s;
                s.from = f.owner;
                s.to = f.address;
                s.input = Bytes(kPoke.begin(), kPoke.end());
                s.gas_used = rng_.between(30'000, 60'000);
                s.gas_limit = kCallGasLimit;
                s.frames.push_back({{0}, FrameKind::kDelegateCall, f.address, c.address, Wei(), std::nullopt});
                s.frames.push_back({{1}, FrameKind::kStaticCall, f.address, c.address, Wei(), std::nullopt});
                chain_.add(std::move(s));
            }
        }
    }

    void wallet_noise() {
        const auto& a = cfg_.activity;
        uint64_t n = rng_.poisson(a.wallet_tx_rate);
        uint64_t attempts = 0;
        while ((n > 0 || chain_.tx_count() < a.min_tx_per_block) && attempts < 100) {
            ++attempts;
            if (n > 0) --n;
            TxSpec s;
            s.from = wallet();
            s.to = other_wallet(s.from);
            s.value = ether_milli(rng_.below(1001));
            if (rng_.chance(a.failed_transfer_prob)) s.status = TxStatus::kFailure;
            chain_.add(std::move(s));
        }
    }

    void check_contrast(const GroundTruth& t) const {
        if (!(cfg_.activity == Activity{}) || cfg_.n_blocks < 500) return;
        struct Stat {
            std::size_t participants;
            std::size_t payments;
        };
        auto stat = [&](const Address& c) {
            std::set<Address> who;
            std::size_t payments = 0;
            for (const auto& e : t.flows.at(c)) {
                who.insert(e.counterparty);
                payments += e.kind == flow::FlowKind::kPayment;
            }
            return Stat{who.size(), payments};
        };
        for (const auto& p : t.contracts_of(Archetype::kPonzi)) {
            const auto ps = stat(p);
            for (const auto& l : t.contracts_of(Archetype::kLottery)) {
                const auto ls = stat(l);
                if (ps.participants <= ls.participants || ps.payments <= ls.payments) {
                    throw std::logic_error("generated Ponzi contract " + p.hex() +
                                           " does not out-number lottery contract " + l.hex());
                }
            }
        }
    }

    const GenConfig& cfg_;
    Rng rng_;
    GroundTruth truth_;
    ChainBuilder chain_;
    std::vector<Address> wallets_;
    std::vector<Contract> contracts_;
    uint64_t block_index_{0};
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(Errc::kInvalidConfig, what);
}

bool probability(double p) { return std::isfinite(p) && p >= 0 && p <= 1; }

}  // namespace

void validate_config(const GenConfig& c) {
    const auto& g = c.gas;
    const auto& a = c.activity;
    require(c.wallets >= 2, "at least two wallets are needed");
    require(c.miners >= 1, "at least one miner is needed");
    require(c.start_block <= UINT64_MAX - c.n_blocks, "block range overflows");
    require(std::isfinite(g.amplitude) && g.amplitude >= 0 && g.amplitude < 1, "gas amplitude must be in [0, 1)");
    require(g.amplitude == 0 || g.period >= 2, "gas period must be at least 2 when the amplitude is positive");
    require(std::isfinite(g.noise) && g.noise >= 0, "gas noise must be non-negative");
    require(std::isfinite(g.decay_per_block) && g.decay_per_block > 0 && g.decay_per_block <= 1,
            "gas decay must be in (0, 1]");
    require(g.base.value() > 0 && g.base.value() <= U256(1'000'000'000'000'000ull), "gas base must be in [1, 10^15] wei");
    require(std::isfinite(a.wallet_tx_rate) && a.wallet_tx_rate >= 0 && a.wallet_tx_rate <= 50,
            "wallet transaction rate must be in [0, 50]");
    for (double p : {a.failed_transfer_prob, a.ponzi_initial_rate, a.ponzi_revert_prob, a.ponzi_errored_payment_prob,
                     a.lottery_entry_prob, a.token_transfer_prob, a.malformed_log_prob, a.approval_log_prob,
                     a.child_call_prob, a.child_selfdestruct_prob}) {
        require(probability(p), "activity probabilities must be in [0, 1]");
    }
    require(std::isfinite(a.ponzi_rate_decay) && a.ponzi_rate_decay > 0 && a.ponzi_rate_decay <= 1,
            "Ponzi rate decay must be in (0, 1]");
    require(a.ponzi_payout_den > 0, "Ponzi payout denominator must be positive");
    require(a.lottery_draw_interval >= 1, "lottery draw interval must be positive");
    const uint64_t contracts = uint64_t{c.ponzi} + c.lottery + c.erc20_token + c.erc721_token + (c.internal_creations > 0);
    const uint64_t deploy_blocks = (contracts + kDeploysPerBlock - 1) / kDeploysPerBlock;
    require(c.n_blocks == 0 || c.n_blocks >= deploy_blocks,
            "n_blocks must cover contract deployment (" + std::to_string(deploy_blocks) + " blocks)");
}

GeneratedChain generate_chain(const GenConfig& config) {
    validate_config(config);
    return Generator(config).run();
}

GroundTruth generate(const GenConfig& config, const fs::path& dir) {
    auto chain = generate_chain(config);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(Errc::kIoError, "cannot create " + dir.string() + ": " + ec.message());
    ingest::write_raw(chain.bundles, dir);
    write_ground_truth(chain.truth, dir / kGroundTruthFile);
    ponzi::write_labels_csv(dir / kLabelsFile, chain.truth.labels());
    return std::move(chain.truth);
}

}  // namespace etherscope::synth
