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
#include <etherscope/synth/ledger.hpp>

namespace etherscope::synth {

ReplayResult ledger_replay(std::span<const ingest::RawBundle> bundles, const Balances& genesis,
                           const Wei& block_reward) {
    ReplayResult out;
    out.balances = genesis;
    uint64_t block_number = 0;

    auto credit = [&](const Address& a, const Wei& v) {
        Wei& bal = out.balances[a];
        bal += v;
        out.history.push_back({block_number, a, bal});
    };
    auto debit = [&](const Address& a, const Wei& v) {
        Wei& bal = out.balances[a];
        if (bal < v) {
            throw Error(Errc::kNegativeBalance, "block " + std::to_string(block_number) + ": " + a.hex() +
                                                    " sends " + v.to_string() + " but holds " + bal.to_string());
        }
        bal -= v;
        out.history.push_back({block_number, a, bal});
    };
    auto move = [&](const Address& from, const Address& to, const Wei& v) {
        if (v.is_zero()) return;
        debit(from, v);
        credit(to, v);
    };

    for (const auto& bundle : bundles) {
        const Block& b = bundle.block;
        block_number = b.number;
        credit(b.miner, block_reward);
        for (const auto& tx : b.transactions) {
            const Receipt* r = bundle.receipt_for(tx.hash);
            if (r == nullptr) throw Error(Errc::kMissingReceipt, tx.hash.hex());
            if (r->status == TxStatus::kSuccess) {
                if (tx.to) {
                    move(tx.from, *tx.to, tx.value);
                } else if (r->contract_address) {
                    move(tx.from, *r->contract_address, tx.value);
                }
                const auto frames = bundle.traces_for(tx.hash);
                for (const auto& f : frames) {
                    if (f.trace_path.empty() || f.kind == FrameKind::kDelegateCall || f.kind == FrameKind::kStaticCall) {
                        continue;
                    }
                    bool failed = f.error.has_value();
                    for (const auto& g : frames) {
                        if (g.error && g.trace_path.size() < f.trace_path.size() &&
                            std::equal(g.trace_path.begin(), g.trace_path.end(), f.trace_path.begin())) {
                            failed = true;
                        }
                    }
                    if (!failed) move(f.from, f.to, f.value);
                }
            }
            move(tx.from, b.miner, checked_mul(tx.gas_price, Wei(r->gas_used)));
        }
    }
    return out;
}

}  // namespace etherscope::synth
