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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace etherscope::ingest {

enum class DefectCode {
    kBrokenParentLink,
    kNonMonotoneNumber,
    kNonMonotoneTimestamp,
    kMissingReceipt,
    kOrphanTrace,
    kBadTxIndex,
};

std::string_view to_string(DefectCode code) noexcept;

struct Defect {
    uint64_t block_number{0};
    DefectCode code{};
    std::string detail;

    friend bool operator==(const Defect&, const Defect&) = default;
};

struct ValidationReport {
    bool ok{true};
    std::vector<Defect> defects;
};

// Incremental form of validate_chain for streamed input.
//
// Each block is checked against the previously fed block: its number must be
// exactly one higher (when it is not, the parent link is not checked, since
// linkage across a numbering fault is meaningless), its parent hash must equal
// the previous hash, and its timestamp must not decrease. Transaction indices
// must run 0..n-1 (one defect per block at the first mismatch), every
// transaction needs a receipt (one defect per missing receipt), and every
// traced transaction hash must belong to the block (one defect per hash).
class ChainValidator {
  public:
    void feed(const RawBundle& bundle);
    [[nodiscard]] ValidationReport finish() const;

  private:
    struct Previous {
        uint64_t number;
        Hash32 hash;
        uint64_t timestamp;
    };
    std::optional<Previous> prev_;
    std::vector<Defect> defects_;
};

ValidationReport validate_chain(std::span<const RawBundle> bundles);

}  // namespace etherscope::ingest
