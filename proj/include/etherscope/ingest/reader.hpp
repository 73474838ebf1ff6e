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

#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>

namespace etherscope::ingest {

// Streams RawBundles out of a directory holding blocks.jsonl, receipts.jsonl
// and traces.jsonl, each sorted by block number. Parse failures carry the
// file name and line number; join failures carry the line that broke the join.
class RawReader {
  public:
    explicit RawReader(const std::filesystem::path& dir);

    std::optional<RawBundle> next();

  private:
    struct LineSource {
        std::ifstream in;
        std::string name;
        uint64_t line_no{0};
        bool next_line(std::string& out);
    };

    template <class Record>
    struct Lookahead {
        std::optional<Record> record;
        uint64_t line_no{0};
    };

    void fill_receipt();
    void fill_trace();

    LineSource blocks_;
    LineSource receipts_;
    LineSource traces_;
    Lookahead<Receipt> pending_receipt_;
    Lookahead<TraceFrame> pending_trace_;
};

Corpus read_raw(const std::filesystem::path& dir);

// Writes the three canonical JSONL files. Receipts follow transaction order;
// frames follow transaction order, then trace path.
void write_raw(std::span<const RawBundle> bundles, const std::filesystem::path& dir);

}  // namespace etherscope::ingest
