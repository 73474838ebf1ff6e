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

#include <map>
#include <span>
#include <vector>

namespace etherscope::synth {

using Balances = std::map<Address, Wei>;

struct BalanceChange {
    uint64_t block_number{0};
    Address address;
    Wei balance;  // after the change
};

struct ReplayResult {
    Balances balances;
    std::vector<BalanceChange> history;
};

// Replays every value movement of a corpus in chain order, starting from
// `genesis`: the block reward to the miner, then per transaction the
// top-level value (successful transactions; creations credit the receipt's
// contract address), the value of every call/create/selfdestruct frame that
// neither errored nor sits under an errored frame (successful transactions
// only), and the fee gas_price * gas_used from sender to miner. Reads the raw
// records directly. Throws kNegativeBalance.
ReplayResult ledger_replay(std::span<const ingest::RawBundle> bundles, const Balances& genesis, const Wei& block_reward);

}  // namespace etherscope::synth
