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

#include <etherscope/chain/model.hpp>
#include <etherscope/error.hpp>

#include <algorithm>

namespace etherscope {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::kMalformedHex: return "MalformedHex";
        case Errc::kMalformedNumber: return "MalformedNumber";
        case Errc::kOverflow: return "Overflow";
        case Errc::kUnderflow: return "Underflow";
        case Errc::kParseError: return "ParseError";
        case Errc::kMissingReceipt: return "MissingReceipt";
        case Errc::kOrphanTrace: return "OrphanTrace";
        case Errc::kOrphanReceipt: return "OrphanReceipt";
        case Errc::kInvalidRange: return "InvalidRange";
        case Errc::kRangeUnavailable: return "RangeUnavailable";
        case Errc::kTransientSource: return "TransientSource";
        case Errc::kIoError: return "IoError";
        case Errc::kDuplicateContractAddress: return "DuplicateContractAddress";
        case Errc::kInvalidWindow: return "InvalidWindow";
        case Errc::kSliceTooShort: return "SliceTooShort";
        case Errc::kConstantSeries: return "ConstantSeries";
        case Errc::kUnknownContract: return "UnknownContract";
        case Errc::kEmptyInput: return "EmptyInput";
        case Errc::kAllZero: return "AllZero";
        case Errc::kDegenerateLabels: return "DegenerateLabels";
        case Errc::kNonFiniteFeature: return "NonFiniteFeature";
        case Errc::kDimensionMismatch: return "DimensionMismatch";
        case Errc::kEmptySet: return "EmptySet";
        case Errc::kInvalidConfig: return "InvalidConfig";
        case Errc::kNegativeBalance: return "NegativeBalance";
        case Errc::kMalformedModel: return "MalformedModel";
    }
    return "Unknown";
}

std::string_view to_string(TxStatus s) noexcept { return s == TxStatus::kSuccess ? "success" : "failure"; }

std::string_view to_string(FrameKind k) noexcept {
    switch (k) {
        case FrameKind::kCall: return "call";
        case FrameKind::kDelegateCall: return "delegatecall";
        case FrameKind::kStaticCall: return "staticcall";
        case FrameKind::kCreate: return "create";
        case FrameKind::kSelfDestruct: return "selfdestruct";
    }
    return "call";
}

FrameKind parse_frame_kind(std::string_view text) {
    if (text == "call") return FrameKind::kCall;
    if (text == "delegatecall") return FrameKind::kDelegateCall;
    if (text == "staticcall") return FrameKind::kStaticCall;
    if (text == "create") return FrameKind::kCreate;
    if (text == "selfdestruct") return FrameKind::kSelfDestruct;
    throw Error(Errc::kParseError, "unknown trace type '" + std::string(text) + "'");
}

std::string format_trace_path(const TracePath& path) {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(path[i]);
    }
    return out;
}

bool is_ancestor(const TracePath& prefix, const TracePath& path) noexcept {
    return prefix.size() < path.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

}  // namespace etherscope
