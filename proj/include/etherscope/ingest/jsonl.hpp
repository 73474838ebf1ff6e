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

#include <etherscope/chain/model.hpp>

#include <string>
#include <string_view>

namespace etherscope::ingest {

// Canonical single-line JSON encodings: sorted keys, no insignificant
// whitespace, wei quantities as decimal strings.
std::string encode_block(const Block& block);
std::string encode_receipt(const Receipt& receipt);
std::string encode_trace(const TraceFrame& frame);

// Throw Error(kParseError) naming the offending field.
Block decode_block(std::string_view line);
Receipt decode_receipt(std::string_view line);
TraceFrame decode_trace(std::string_view line);

inline constexpr std::string_view kBlocksFile = "blocks.jsonl";
inline constexpr std::string_view kReceiptsFile = "receipts.jsonl";
inline constexpr std::string_view kTracesFile = "traces.jsonl";

}  // namespace etherscope::ingest
