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

#include <etherscope/chain/wei.hpp>

#include <cstdint>

namespace etherscope::synth {

inline const Wei kEther{U256(1'000'000'000'000'000'000ull)};
inline const Wei kGwei{U256(1'000'000'000ull)};

// price(b) = base * decay^b * (1 + amplitude * sin(2 pi b / period)) plus a
// Gaussian term with standard deviation noise * base * decay^b, drawn per
// transaction and rounded to wei (at least 1).
struct GasProcess {
    Wei base{U256(20'000'000'000ull)};
    double decay_per_block{0.99999};
    uint32_t period{168};
    double amplitude{0.3};
    double noise{0.1};

    friend bool operator==(const GasProcess&, const GasProcess&) = default;
};

// Per-block activity rates. The defaults are the intensities under which the
// generator checks the Ponzi/lottery contrast.
struct Activity {
    double wallet_tx_rate{1.5};  // Poisson mean of plain transfers per block
    uint32_t min_tx_per_block{1};
    double failed_transfer_prob{0.01};

    double ponzi_initial_rate{0.35};  // investment probability per block at deployment
    double ponzi_rate_decay{0.997};   // multiplied in every block after deployment
    uint32_t ponzi_payout_num{3};     // payout = investment * num / den
    uint32_t ponzi_payout_den{2};
    double ponzi_revert_prob{0.03};
    double ponzi_errored_payment_prob{0.02};

    double lottery_entry_prob{0.03};
    uint32_t lottery_draw_interval{150};

    double token_transfer_prob{0.05};
    double malformed_log_prob{0.02};
    double approval_log_prob{0.05};

    double child_call_prob{0.02};
    double child_selfdestruct_prob{0.004};

    friend bool operator==(const Activity&, const Activity&) = default;
};

struct GenConfig {
    uint64_t seed{1};
    uint64_t n_blocks{1000};
    uint64_t start_block{0};
    uint64_t start_timestamp{1'600'000'000};
    uint32_t wallets{200};
    uint32_t miners{3};

    uint32_t ponzi{2};
    uint32_t lottery{2};
    uint32_t erc20_token{1};
    uint32_t erc721_token{1};
    // Contracts created from inside a factory contract; 0 omits the factory.
    uint32_t internal_creations{2};

    GasProcess gas;
    Wei block_reward{U256(2'000'000'000'000'000'000ull)};
    Wei genesis_balance{U256(1000) * U256(1'000'000'000'000'000'000ull)};
    Activity activity;

    friend bool operator==(const GenConfig&, const GenConfig&) = default;
};

// Throws kInvalidConfig.
void validate_config(const GenConfig& config);

}  // namespace etherscope::synth
