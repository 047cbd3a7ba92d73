// Copyright 2026 The Ranklabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ranklabel {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `ranklabel` tool; args[0] is the program name.
//
//   ranklabel label --input <csv> --weights a=w[,b=w...]
//                   --normalize {none|minmax|zscore} --sensitive <attr>
//                   [--diversity <attr>[,<attr>]] [--k <int>]
//                   [--alpha <float>] [--p <float>] --format {json|html}
//                   [--out <path>] [--timestamp]
//   ranklabel stats --input <csv> [--attr <name>]
//   ranklabel serve [--port <int>] [--data-dir <path>]
//
// Machine output goes to --out or `out`; diagnostics go to `err`. Data and
// validation failures print one line "error: <code>: <message>" and return
// kExitDataError; usage errors print the usage text and return kExitUsage.
// serve honours RANKLABEL_PORT and RANKLABEL_DATA_DIR when the flags are
// absent.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ranklabel
