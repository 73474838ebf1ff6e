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

#include <iosfwd>

namespace etherscope::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitDefects = 1,  // validate found data defects
    kExitUsage = 2,
    kExitFailure = 3,
};

// Entry point of the etherscope tool:
//
//   etherscope <synth|validate|derive|gas|flow|features|train|classify> [flags]
//
// Data goes to files or `out`; diagnostics go to `err`. Values resolve as
// command line > --config file > ETHERSCOPE_* environment (paths and worker
// count only) > built-in default.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace etherscope::cli
