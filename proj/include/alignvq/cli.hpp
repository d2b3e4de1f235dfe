// Copyright 2026 The AlignVQ Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. Subcommands: score, evaluate (eval), winoground,
// rank, localize, congen, report.

#ifndef ALIGNVQ_CLI_HPP_
#define ALIGNVQ_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "alignvq/config.hpp"
#include "alignvq/metrics.hpp"

namespace alignvq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command. `args` excludes the program name. Normal output goes to
/// `out`; diagnostics and --stats to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, const EnvLookup& env = process_env());

/// Scatter plot of per-model mean score against human mean with the fitted
/// line, as a self-contained SVG document.
std::string render_comparison_svg(const ModelComparison& comparison);

}  // namespace alignvq

#endif  // ALIGNVQ_CLI_HPP_
