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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <etherscope/cli/commands.hpp>
#include <etherscope/derive/balances.hpp>
#include <etherscope/derive/csv.hpp>
#include <etherscope/derive/derive.hpp>
#include <etherscope/flow/flowgraph.hpp>
#include <etherscope/gas/gas.hpp>
#include <etherscope/ingest/reader.hpp>
#include <etherscope/ingest/validate.hpp>
#include <etherscope/ponzi/features.hpp>
#include <etherscope/ponzi/gini.hpp>
#include <etherscope/ponzi/model.hpp>
#include <etherscope/synth/generator.hpp>
#include <etherscope/synth/ledger.hpp>

#include "support/keccak.hpp"
#include "support/reference.hpp"
#include "support/tempdir.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace etherscope;
using etherscope::testing::slurp;
using etherscope::testing::TempDir;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass{true};
    std::string detail;
};

// Collects failure notes; the first few are kept for the report line.
class Check {
  public:
    void require(bool ok, const std::string& what) {
        if (ok) return;
        ++failures_;
        if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
    }
    [[nodiscard]] bool ok() const { return failures_ == 0; }
    [[nodiscard]] std::string notes() const {
        return failures_ > 3 ? notes_ + "; +" + std::to_string(failures_ - 3) + " more" : notes_;
    }

  private:
    int failures_{0};
    std::string notes_;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Round trip and validation with injected defects

enum class Inject { kParentLink, kTimestamp, kMissingReceipt, kBadIndex, kOrphanTrace, kDuplicate };

// Injects one defect per chosen block. Chosen blocks are at least two apart
// so no injection disturbs the checks of a neighbouring block.
std::vector<Inject> inject_defects(ingest::Corpus& c, int k, std::mt19937_64& rng) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (!c[i].block.transactions.empty()) candidates.push_back(i);
    }
    std::vector<std::size_t> chosen;
    while (static_cast<int>(chosen.size()) < k) {
        std::size_t i = candidates[rng() % candidates.size()];
        bool far = std::ranges::all_of(chosen, [&](std::size_t j) { return (i > j ? i - j : j - i) >= 2; });
        if (far) chosen.push_back(i);
    }
    std::ranges::sort(chosen);

    std::vector<Inject> kinds;
    std::vector<std::size_t> duplicates;
    for (std::size_t i : chosen) {
        auto kind = static_cast<Inject>(rng() % 6);
        kinds.push_back(kind);
        auto& b = c[i];
        switch (kind) {
            case Inject::kParentLink: b.block.parent_hash.bytes()[5] ^= 0x5a; break;
            case Inject::kTimestamp: b.block.timestamp = c[i - 1].block.timestamp - 1; break;
            case Inject::kMissingReceipt: b.receipts.erase(b.block.transactions.back().hash); break;
            case Inject::kBadIndex: b.block.transactions.back().tx_index += 3; break;
            case Inject::kOrphanTrace: {
                TraceFrame f;
                f.tx_hash.bytes()[0] = 0xee;
                f.tx_hash.bytes()[31] = static_cast<uint8_t>(i);
                f.block_number = b.block.number;
                f.trace_path = {0};
                b.traces[f.tx_hash].push_back(f);
                break;
            }
            case Inject::kDuplicate: duplicates.push_back(i); break;
        }
    }
    for (auto it = duplicates.rbegin(); it != duplicates.rend(); ++it) {
        c.insert(c.begin() + static_cast<std::ptrdiff_t>(*it) + 1, c[*it]);
    }
    return kinds;
}

ingest::DefectCode expected_code(Inject k) {
    using ingest::DefectCode;
    switch (k) {
        case Inject::kParentLink: return DefectCode::kBrokenParentLink;
        case Inject::kTimestamp: return DefectCode::kNonMonotoneTimestamp;
        case Inject::kMissingReceipt: return DefectCode::kMissingReceipt;
        case Inject::kBadIndex: return DefectCode::kBadTxIndex;
        case Inject::kOrphanTrace: return DefectCode::kOrphanTrace;
        case Inject::kDuplicate: return DefectCode::kNonMonotoneNumber;
    }
    return DefectCode::kBadTxIndex;
}

synth::GenConfig random_config(std::mt19937_64& rng) {
    auto pick = [&](uint64_t lo, uint64_t hi) { return lo + rng() % (hi - lo + 1); };
    synth::GenConfig c;
    c.seed = rng();
    c.n_blocks = pick(20, 1000);
    c.start_block = pick(0, 5'000'000);
    c.wallets = static_cast<uint32_t>(pick(10, 300));
    c.miners = static_cast<uint32_t>(pick(1, 6));
    c.ponzi = static_cast<uint32_t>(pick(0, 4));
    c.lottery = static_cast<uint32_t>(pick(0, 4));
    c.erc20_token = static_cast<uint32_t>(pick(0, 3));
    c.erc721_token = static_cast<uint32_t>(pick(0, 3));
    c.internal_creations = static_cast<uint32_t>(pick(0, 4));
    c.gas.period = static_cast<uint32_t>(pick(2, 200));
    c.gas.amplitude = static_cast<double>(pick(0, 50)) / 100.0;
    c.gas.noise = static_cast<double>(pick(0, 20)) / 100.0;
    return c;
}

Outcome criterion_round_trip() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(20260001);
    Check check;
    std::size_t blocks = 0, injected = 0;
    for (int n = 0; n < 20; ++n) {
        auto cfg = random_config(rng);
        auto corpus = synth::generate_chain(cfg).bundles;
        blocks += corpus.size();
        TempDir dir("acc1");
        ingest::write_raw(corpus, dir.path());
        check.require(ingest::read_raw(dir.path()) == corpus, "round trip differs for config " + std::to_string(n));
        check.require(ingest::validate_chain(corpus).ok, "pristine corpus " + std::to_string(n) + " has defects");

        int k = 1 + n % 5;
        if (corpus.size() < 12) continue;
        auto kinds = inject_defects(corpus, k, rng);
        injected += kinds.size();
        auto report = ingest::validate_chain(corpus);
        std::multiset<ingest::DefectCode> want, got;
        for (auto kd : kinds) want.insert(expected_code(kd));
        for (const auto& d : report.defects) got.insert(d.code);
        check.require(report.defects.size() == static_cast<std::size_t>(k) && want == got,
                      "config " + std::to_string(n) + ": injected " + std::to_string(k) + ", found " +
                          std::to_string(report.defects.size()));
    }
    double s = seconds_since(t0);
    check.require(s < 60, "runtime " + fmt("%.1f", s) + " s");
    return {check.ok(), "20 configs, " + std::to_string(blocks) + " blocks, " + std::to_string(injected) +
                            " injected defects, " + fmt("%.1f", s) + " s" +
                            (check.ok() ? "" : ": " + check.notes())};
}

// ---------------------------------------------------------------------------
// 2. Derivation oracle equivalence

Outcome criterion_derive_oracle() {
    auto t0 = Clock::now();
    Check check;
    synth::GenConfig cfg;
    cfg.seed = 2024;
    cfg.n_blocks = 1000;
    cfg.erc20_token = 2;
    cfg.erc721_token = 2;
    cfg.activity.malformed_log_prob = 0.1;
    auto corpus = synth::generate_chain(cfg).bundles;

    TempDir raw("acc2-raw"), one("acc2-w1"), eight("acc2-w8");
    ingest::write_raw(corpus, raw.path());
    auto reference = etherscope::testing::reference_derive(raw.path());
    auto derived = derive::derive_all(ingest::read_raw(raw.path()), {.workers = 1});
    for (auto& d : derived.defects) d.detail.clear();
    check.require(derived.block_txs == reference.block_txs, "dataset 1 differs");
    check.require(derived.internal_transfers == reference.internal_transfers, "dataset 2 differs");
    check.require(derived.contracts == reference.contracts, "dataset 3 differs");
    check.require(derived.calls == reference.calls, "dataset 4 differs");
    check.require(derived.erc20 == reference.erc20, "dataset 5 differs");
    check.require(derived.erc721 == reference.erc721, "dataset 6 differs");
    check.require(derived.defects == reference.defects, "defect list differs");

    derive::derive_to_directory(corpus, one.path(), {.workers = 1});
    derive::derive_to_directory(corpus, eight.path(), {.workers = 8});
    std::vector<std::string> files(derive::kDatasetFiles.begin(), derive::kDatasetFiles.end());
    files.emplace_back(derive::kDefectsFile);
    for (const auto& f : files) check.require(slurp(one / f) == slurp(eight / f), f + " differs across workers");

    double s = seconds_since(t0);
    check.require(s < 60, "runtime " + fmt("%.1f", s) + " s");
    auto rows = derive::summarize(reference).rows;
    std::string counts;
    for (auto r : rows) counts += (counts.empty() ? "" : "/") + std::to_string(r);
    return {check.ok(), "1000 blocks, rows " + counts + ", " + std::to_string(reference.defects.size()) +
                            " defects, 1 vs 8 workers identical, " + fmt("%.1f", s) + " s" +
                            (check.ok() ? "" : ": " + check.notes())};
}

// ---------------------------------------------------------------------------
// 3. Conservation

Outcome criterion_conservation() {
    Check check;
    std::size_t addresses = 0;
    std::mt19937_64 rng(33);
    for (int n = 0; n < 6; ++n) {
        auto cfg = n == 0 ? synth::GenConfig{} : random_config(rng);
        auto chain = synth::generate_chain(cfg);
        std::vector<std::pair<Address, Wei>> rewards;
        for (const auto& b : chain.bundles) rewards.emplace_back(b.block.miner, cfg.block_reward);
        auto from_datasets = derive::balances_from_datasets(derive::derive_all(chain.bundles, {.workers = 4}),
                                                            chain.truth.genesis, rewards);
        auto replay = synth::ledger_replay(chain.bundles, chain.truth.genesis, cfg.block_reward).balances;
        check.require(from_datasets == replay, "datasets vs replay differ for corpus " + std::to_string(n));
        check.require(replay == chain.truth.balances, "replay vs ground truth differ for corpus " + std::to_string(n));
        addresses += replay.size();
    }
    return {check.ok(), "6 corpora, " + std::to_string(addresses) + " address balances equal in wei" +
                            (check.ok() ? "" : ": " + check.notes())};
}

// ---------------------------------------------------------------------------
// 4. Token decoding

Outcome criterion_tokens() {
    Check check;
    auto digest = etherscope::testing::keccak256("Transfer(address,address,uint256)");
    check.require(Hash32(digest) == derive::kTransferSignature, "signature constant disagrees with keccak-256");

    std::size_t planted = 0, malformed = 0;
    for (uint64_t seed : {41, 42, 43}) {
        synth::GenConfig cfg;
        cfg.seed = seed;
        cfg.erc20_token = 3;
        cfg.erc721_token = 3;
        cfg.activity.malformed_log_prob = 0.15;
        auto chain = synth::generate_chain(cfg);
        auto six = derive::derive_all(chain.bundles);

        using Key = std::tuple<uint64_t, uint32_t>;
        std::map<Key, derive::TokenTransferRecord> decoded;
        for (const auto* t : {&six.erc20, &six.erc721}) {
            for (const auto& r : *t) {
                check.require(decoded.emplace(Key{r.block_number, r.log_index}, r).second, "log decoded twice");
            }
        }
        for (const auto& t : chain.truth.token_transfers) {
            ++planted;
            auto it = decoded.find(Key{t.block_number, t.log_index});
            bool same = it != decoded.end() && it->second.tx_hash == t.tx_hash &&
                        it->second.token_contract == t.token && it->second.from == t.from &&
                        it->second.to == t.to && it->second.amount_or_token_id == t.amount_or_token_id &&
                        it->second.standard == t.standard;
            check.require(same, "planted transfer at block " + std::to_string(t.block_number) + " not recovered");
        }
        check.require(decoded.size() == chain.truth.token_transfers.size(), "decoded transfers that were not planted");

        std::set<Key> reported;
        for (const auto& d : six.defects) reported.insert(Key{d.block_number, d.log_index});
        check.require(reported.size() == chain.truth.malformed_logs.size(), "defect count differs from planted");
        for (const auto& m : chain.truth.malformed_logs) {
            ++malformed;
            check.require(reported.contains(Key{m.block_number, m.log_index}), "malformed log not reported");
            check.require(!decoded.contains(Key{m.block_number, m.log_index}), "malformed log decoded");
        }
    }
    check.require(malformed > 0, "no malformed logs were planted");
    return {check.ok(), std::to_string(planted) + " planted transfers recovered, " + std::to_string(malformed) +
                            " malformed logs reported only as defects, signature verified" +
                            (check.ok() ? "" : ": " + check.notes())};
}

// ---------------------------------------------------------------------------
// 5. Gas periodicity and decay

Outcome criterion_gas() {
    auto t0 = Clock::now();
    Check check;
    std::string detail;
    for (uint32_t p : {24u, 50u, 168u}) {
        synth::GenConfig cfg;
        cfg.seed = 500 + p;
        cfg.n_blocks = 20000;
        cfg.wallets = 100;
        cfg.ponzi = cfg.lottery = cfg.erc20_token = cfg.erc721_token = cfg.internal_creations = 0;
        cfg.gas.period = p;
        cfg.gas.noise = 0.10;
        auto chain = synth::generate_chain(cfg);
        auto series = gas::per_block_gas_stats(chain.bundles, 4);
        auto x = gas::field_values(series, gas::Field::kMean);
        auto r = gas::detect_periodicity(x, p / 2, p + p / 2);
        bool lag_ok = r.best_lag + 1 >= p && r.best_lag <= p + 1;
        check.require(lag_ok, "period " + std::to_string(p) + " detected as " + std::to_string(r.best_lag));

        auto ma = gas::moving_average(series, p, gas::Field::kMean);
        double slope = gas::log_trend_slope(ma);
        double planted = std::log(cfg.gas.decay_per_block);
        double rel = std::fabs(slope - planted) / std::fabs(planted);
        check.require(rel <= 0.05, "decay slope off by " + fmt("%.1f%%", 100 * rel) + " at period " + std::to_string(p));
        detail += (detail.empty() ? "" : ", ") + ("p=" + std::to_string(p) + " lag " + std::to_string(r.best_lag) +
                                                  " slope err " + fmt("%.2f%%", 100 * rel));
    }
    double s = seconds_since(t0);
    check.require(s < 30, "runtime " + fmt("%.1f", s) + " s");
    return {check.ok(), detail + ", " + fmt("%.1f", s) + " s" + (check.ok() ? "" : ": " + check.notes())};
}

// ---------------------------------------------------------------------------
// 6. Flow-graph contrast

Outcome criterion_flow_contrast() {
    Check check;
    std::size_t pairs = 0;
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        synth::GenConfig cfg;
        cfg.seed = seed;
        auto chain = synth::generate_chain(cfg);
        auto ponzis = chain.truth.contracts_of(synth::Archetype::kPonzi);
        auto lotteries = chain.truth.contracts_of(synth::Archetype::kLottery);
        std::vector<Address> all = ponzis;
        all.insert(all.end(), lotteries.begin(), lotteries.end());
        auto graphs = flow::build_flow_graphs(all, chain.bundles);
        for (const auto& p : ponzis) {
            auto ps = flow::flow_summary(graphs.at(p));
            for (const auto& l : lotteries) {
                auto ls = flow::flow_summary(graphs.at(l));
                ++pairs;
                check.require(ps.participant_count > ls.participant_count,
                              "seed " + std::to_string(seed) + ": participants " +
                                  std::to_string(ps.participant_count) + " vs " + std::to_string(ls.participant_count));
                check.require(ps.n_payment > ls.n_payment, "seed " + std::to_string(seed) + ": payments " +
                                                               std::to_string(ps.n_payment) + " vs " +
                                                               std::to_string(ls.n_payment));
            }
        }
    }
    return {check.ok(), "10 default corpora, " + std::to_string(pairs) + " ponzi/lottery pairs" +
                            (check.ok() ? "" : ": " + check.notes())};
}

// ---------------------------------------------------------------------------
// 7. Classifier

double gradient_check(const ponzi::Matrix& xs, std::span<const double> y, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0, 0.5);
    std::vector<double> w(xs.front().size());
    for (auto& v : w) v = g(rng);
    double b = g(rng);
    const double lambda = 1e-3, h = 1e-5;
    auto at = ponzi::logistic_loss(xs, y, w, b, lambda);
    auto rel = [](double a, double n) { return std::fabs(a - n) / std::max({std::fabs(a), std::fabs(n), 1e-3}); };
    double worst = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        auto wp = w, wm = w;
        wp[j] += h;
        wm[j] -= h;
        double num =
            (ponzi::logistic_loss(xs, y, wp, b, lambda).loss - ponzi::logistic_loss(xs, y, wm, b, lambda).loss) / (2 * h);
        worst = std::max(worst, rel(at.grad_w[j], num));
    }
    double num_b =
        (ponzi::logistic_loss(xs, y, w, b + h, lambda).loss - ponzi::logistic_loss(xs, y, w, b - h, lambda).loss) /
        (2 * h);
    return std::max(worst, rel(at.grad_b, num_b));
}

Outcome criterion_classifier() {
    auto t0 = Clock::now();
    Check check;
    synth::GenConfig cfg;
    cfg.seed = 7;
    cfg.n_blocks = 2000;
    cfg.wallets = 600;
    cfg.ponzi = 50;
    cfg.lottery = 70;
    cfg.erc20_token = 40;
    cfg.erc721_token = 40;
    cfg.internal_creations = 0;
    auto chain = synth::generate_chain(cfg);
    auto info = derive::derive_contract_info(chain.bundles);
    std::vector<Address> addresses;
    for (const auto& r : info) addresses.push_back(r.contract_address);
    auto graphs = flow::build_flow_graphs(addresses, chain.bundles);
    auto labels = chain.truth.labels();

    ponzi::Matrix x;
    std::vector<ponzi::Label> y;
    std::size_t n_ponzi = 0;
    for (const auto& r : info) {
        x.push_back(ponzi::extract_features(graphs.at(r.contract_address), r.code).to_dense());
        y.push_back(labels.at(r.contract_address));
        n_ponzi += y.back() == ponzi::Label::kPonzi;
    }
    check.require(x.size() == 200 && n_ponzi == 50, "corpus has " + std::to_string(x.size()) + " contracts");

    auto cv = ponzi::cross_validate(x, y, 5, ponzi::Hyperparams{}, 11);
    check.require(cv.f1 >= 0.90, "5-fold F1 " + fmt("%.4f", cv.f1));

    auto fit = ponzi::train(x, y);
    bool monotone = true;
    for (std::size_t i = 1; i < fit.loss_history.size(); ++i) {
        monotone = monotone && fit.loss_history[i] <= fit.loss_history[i - 1];
    }
    check.require(monotone, "training loss increased");

    auto stdz = ponzi::fit_standardization(x);
    ponzi::Matrix xs;
    for (const auto& row : x) xs.push_back(stdz.apply(row));
    std::vector<double> yd;
    for (auto l : y) yd.push_back(l == ponzi::Label::kPonzi ? 1.0 : 0.0);
    std::mt19937_64 rng(71);
    double worst = 0;
    for (int trial = 0; trial < 5; ++trial) worst = std::max(worst, gradient_check(xs, yd, rng));
    check.require(worst <= 1e-6, "gradient check error " + fmt("%.3g", worst));

    double s = seconds_since(t0);
    check.require(s < 120, "runtime " + fmt("%.1f", s) + " s");
    return {check.ok(), "200 contracts (50 ponzi), 5-fold F1 " + fmt("%.4f", cv.f1) + " (P " +
                            fmt("%.3f", cv.precision) + ", R " + fmt("%.3f", cv.recall) + "), gradient error " +
                            fmt("%.2e", worst) + ", loss nonincreasing over " +
                            std::to_string(fit.loss_history.size() - 1) + " epochs, " + fmt("%.1f", s) + " s" +
                            (check.ok() ? "" : ": " + check.notes())};
}

// ---------------------------------------------------------------------------
// 8. Numeric micro-oracles

Outcome criterion_numeric() {
    Check check;
    std::mt19937_64 rng(88);
    double worst_gini = 0;
    for (int n = 0; n < 1000; ++n) {
        std::size_t len = 1 + rng() % 80;
        std::vector<Wei> w;
        std::vector<long double> v;
        for (std::size_t i = 0; i < len; ++i) {
            uint64_t a = rng() % (n % 2 == 0 ? 1000 : 1'000'000'000'000ull);
            w.emplace_back(a);
            v.push_back(static_cast<long double>(a));
        }
        if (std::ranges::all_of(v, [](long double a) { return a == 0; })) {
            w[0] = Wei(1);
            v[0] = 1;
        }
        long double sum = 0, diff = 0;
        for (auto a : v) {
            sum += a;
            for (auto b : v) diff += std::fabs(a - b);
        }
        double brute = static_cast<double>(diff / (2 * static_cast<long double>(len) * sum));
        worst_gini = std::max(worst_gini, std::fabs(ponzi::gini(w) - brute));
    }
    check.require(worst_gini <= 1e-12, "gini error " + fmt("%.3g", worst_gini));

    std::normal_distribution<double> g(0, 1);
    double worst_r0 = 0, max_abs_r = 0;
    for (int n = 0; n < 200; ++n) {
        std::vector<double> x(50 + rng() % 400);
        double drift = g(rng);
        for (std::size_t t = 0; t < x.size(); ++t) x[t] = g(rng) * 3 + drift * static_cast<double>(t % 17);
        worst_r0 = std::max(worst_r0, std::fabs(gas::autocorrelation(x, 0) - 1.0));
        for (uint32_t k = 1; k < x.size(); k += 1 + k / 8) max_abs_r = std::max(max_abs_r, std::fabs(gas::autocorrelation(x, k)));
    }
    check.require(worst_r0 <= 1e-12, "r(0) error " + fmt("%.3g", worst_r0));
    check.require(max_abs_r <= 1.0, "|r(k)| reached " + fmt("%.6f", max_abs_r));

    std::size_t probes = 0, flips = 0;
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t d = 2 + rng() % 6;
        ponzi::Matrix x(120, std::vector<double>(d));
        std::vector<double> coef(d);
        for (auto& c : coef) c = g(rng);
        std::vector<ponzi::Label> y;
        for (auto& row : x) {
            double z = g(rng) * 0.3;
            for (std::size_t j = 0; j < d; ++j) {
                row[j] = g(rng);
                z += coef[j] * row[j];
            }
            y.push_back(z > 0 ? ponzi::Label::kPonzi : ponzi::Label::kNormal);
        }
        if (std::ranges::count(y, ponzi::Label::kPonzi) < 2 || std::ranges::count(y, ponzi::Label::kNormal) < 2) continue;
        std::vector<double> scale(d);
        for (auto& s : scale) s = std::exp(g(rng) * 4);
        auto scaled = x;
        for (auto& row : scaled) {
            for (std::size_t j = 0; j < d; ++j) row[j] *= scale[j];
        }
        auto a = ponzi::train(x, y).model;
        auto b = ponzi::train(scaled, y).model;
        for (int q = 0; q < 100; ++q) {
            std::vector<double> probe(d), probe_scaled(d);
            for (std::size_t j = 0; j < d; ++j) {
                probe[j] = g(rng) * 2;
                probe_scaled[j] = probe[j] * scale[j];
            }
            ++probes;
            flips += ponzi::predict(a, probe).label != ponzi::predict(b, probe_scaled).label;
        }
    }
    check.require(flips == 0, std::to_string(flips) + " label changes under rescaling");
    return {check.ok(), "gini max error " + fmt("%.2e", worst_gini) + " over 1000 vectors, r(0) error " +
                            fmt("%.2e", worst_r0) + ", max |r(k)| " + fmt("%.4f", max_abs_r) + ", " +
                            std::to_string(probes) + " rescaled probes unchanged" +
                            (check.ok() ? "" : ": " + check.notes())};
}

// ---------------------------------------------------------------------------
// 9. CLI determinism

struct CliRun {
    int code;
    std::string out;
};

CliRun run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "etherscope");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str()};
}

// Every regular file under `dir`, relative path -> contents.
std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = slurp(e.path());
    }
    return files;
}

Outcome criterion_cli_determinism() {
    Check check;
    std::array<std::map<std::string, std::string>, 2> trees;
    std::array<std::vector<std::string>, 2> stdouts;
    std::size_t commands = 0;
    for (int round = 0; round < 2; ++round) {
        TempDir dir("acc9");
        auto d = [&](const std::string& name) { return (dir / name).string(); };
        std::string ponzi_contract, lottery_contract;
        std::vector<std::vector<std::string>> plan = {
            {"--seed", "5", "synth", "--out", d("raw"), "--blocks", "800"},
            {"validate", "--input", d("raw")},
            {"--workers", std::to_string(1 + round * 7), "derive", "--input", d("raw"), "--out", d("datasets")},
            {"--workers", std::to_string(1 + round * 3), "gas", "--input", d("raw"), "--out", d("gas"), "--min-lag",
             "84", "--max-lag", "252"},
        };
        for (auto& args : plan) {
            auto r = run_cli(args);
            check.require(r.code == 0, args[args[0] == "--seed" || args[0] == "--workers" ? 2 : 0] + " exited " +
                                           std::to_string(r.code));
            stdouts[static_cast<std::size_t>(round)].push_back(r.out);
            ++commands;
        }
        auto truth = synth::read_ground_truth(dir / "raw" / "ground_truth.json");
        ponzi_contract = truth.contracts_of(synth::Archetype::kPonzi).at(0).hex();
        lottery_contract = truth.contracts_of(synth::Archetype::kLottery).at(0).hex();
        std::vector<std::vector<std::string>> rest = {
            {"flow", "--input", d("raw"), "--contract", ponzi_contract, "--format", "svg", "--out", d("ponzi.svg")},
            {"flow", "--input", d("raw"), "--contract", lottery_contract, "--format", "svg", "--out", d("lottery.svg")},
            {"flow", "--input", d("raw"), "--contract", ponzi_contract, "--format", "csv", "--out", d("ponzi.csv")},
            {"features", "--input", d("raw"), "--out", d("features.csv")},
            {"train", "--features", d("features.csv"), "--labels", d("raw/labels.csv"), "--model", d("model.txt"),
             "--cv-folds", "2"},
            {"classify", "--model", d("model.txt"), "--features", d("features.csv"), "--labels",
             d("raw/labels.csv"), "--out", d("predictions.csv")},
        };
        for (auto& args : rest) {
            auto r = run_cli(args);
            check.require(r.code == 0, args[0] + " exited " + std::to_string(r.code));
            stdouts[static_cast<std::size_t>(round)].push_back(r.out);
            ++commands;
        }
        trees[static_cast<std::size_t>(round)] = snapshot(dir.path());
    }
    check.require(stdouts[0] == stdouts[1], "standard output differs between runs");
    check.require(trees[0].size() == trees[1].size(), "different file sets");
    std::size_t svgs = 0;
    for (const auto& [name, body] : trees[0]) {
        auto it = trees[1].find(name);
        check.require(it != trees[1].end() && it->second == body, name + " differs between runs");
        svgs += name.ends_with(".svg");
    }
    return {check.ok(), std::to_string(commands / 2) + " commands twice, " + std::to_string(trees[0].size()) +
                            " files (" + std::to_string(svgs) + " SVG) byte-identical" +
                            (check.ok() ? "" : ": " + check.notes())};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"round trip and validation", criterion_round_trip},
        {"derivation oracle equivalence", criterion_derive_oracle},
        {"conservation", criterion_conservation},
        {"token decoding", criterion_tokens},
        {"gas periodicity and decay", criterion_gas},
        {"flow-graph contrast", criterion_flow_contrast},
        {"classifier", criterion_classifier},
        {"numeric micro-oracles", criterion_numeric},
        {"CLI determinism", criterion_cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << o.detail << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
