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

#include <array>
#include <string>
#include <string_view>

namespace etherscope::derive {

inline constexpr std::array<std::string_view, 6> kDatasetFiles = {
    "dataset1_block_tx.csv", "dataset2_internal_tx.csv", "dataset3_contract_info.csv",
    "dataset4_contract_calls.csv", "dataset5_erc20.csv", "dataset6_erc721.csv",
};
inline constexpr std::string_view kDefectsFile = "defects.csv";

// Header rows; columns follow record field order.
inline constexpr std::array<std::string_view, 6> kDatasetHeaders = {
    "block_number,timestamp,miner,tx_hash,tx_index,from,to,value,gas_price,gas_used_by_tx,status",
    "block_number,tx_hash,trace_path,from,to,value,kind",
    "contract_address,creator,creation_block,creation_tx_hash,creation_mode,code",
    "block_number,tx_hash,trace_path,caller,callee,value,kind,selector,status",
    "block_number,tx_hash,log_index,token_contract,from,to,amount_or_token_id,standard",
    "block_number,tx_hash,log_index,token_contract,from,to,amount_or_token_id,standard",
};
inline constexpr std::string_view kDefectsHeader = "block_number,tx_hash,log_index,standard,detail";

// Rows carry no trailing newline. Absent optional fields are empty; no field
// ever needs quoting except defect details, which are quoted.
std::string to_csv_row(const BlockTxRecord& r);
std::string to_csv_row(const InternalTransferRecord& r);
std::string to_csv_row(const ContractInfoRecord& r);
std::string to_csv_row(const ContractCallRecord& r);
std::string to_csv_row(const TokenTransferRecord& r);
std::string to_csv_row(const MalformedTransferLog& r);

}  // namespace etherscope::derive
