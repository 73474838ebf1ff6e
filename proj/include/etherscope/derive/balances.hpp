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

#include <etherscope/derive/records.hpp>

#include <map>
#include <utility>
#include <vector>

namespace etherscope::derive {

using BalanceMap = std::map<Address, Wei>;

// Final balances implied by the derived datasets: successful top-level values
// (creations credit the created contract), internal transfers, fees
// (gas_price x gas_used, sender to miner) and the given block rewards, on top
// of `initial`. Credits and debits are summed before netting so the result
// does not depend on record order. Throws kNegativeBalance if an address ends
// below zero.
BalanceMap balances_from_datasets(const SixDatasets& datasets, const BalanceMap& initial,
                                  const std::vector<std::pair<Address, Wei>>& rewards);

}  // namespace etherscope::derive
