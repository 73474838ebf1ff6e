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

#include <etherscope/derive/balances.hpp>
#include <etherscope/error.hpp>

namespace etherscope::derive {

BalanceMap balances_from_datasets(const SixDatasets& d, const BalanceMap& initial,
                                  const std::vector<std::pair<Address, Wei>>& rewards) {
    std::map<Address, Wei> credit;
    std::map<Address, Wei> debit;
    auto move = [&](const Address& from, const Address& to, const Wei& v) {
        debit[from] += v;
        credit[to] += v;
    };

    std::map<Hash32, Address> created_by_tx;
    for (const auto& c : d.contracts) {
        if (c.creation_mode == CreationMode::kTopLevel) created_by_tx.emplace(c.creation_tx_hash, c.contract_address);
    }

    for (const auto& r : d.block_txs) {
        if (r.status == TxStatus::kSuccess && !r.value.is_zero()) {
            if (r.to) {
                move(r.from, *r.to, r.value);
            } else if (auto it = created_by_tx.find(r.tx_hash); it != created_by_tx.end()) {
                move(r.from, it->second, r.value);
            }
        }
        Wei fee = checked_mul(r.gas_price, Wei(r.gas_used_by_tx));
        if (!fee.is_zero()) move(r.from, r.miner, fee);
    }
    for (const auto& r : d.internal_transfers) move(r.from, r.to, r.value);
    for (const auto& [miner, amount] : rewards) credit[miner] += amount;

    BalanceMap out = initial;
    for (const auto& [a, v] : credit) out[a] += v;
    for (const auto& [a, v] : debit) {
        Wei& bal = out[a];
        if (bal < v) {
            throw Error(Errc::kNegativeBalance, a.hex() + " spends " + v.to_string() + " but holds " + bal.to_string());
        }
        bal -= v;
    }
    return out;
}

}  // namespace etherscope::derive
