// Copyright 2026 The lfspec Authors
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

#ifndef LFS_CLI_HPP
#define LFS_CLI_HPP

#include <iosfwd>

namespace lfs {

/// Exit codes of run_cli.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitNumerical = 2,
  kExitValidation = 3,
};

/// Entry point of the lfspec tool:
///
///   lfspec spectrum --p 2 --e 1 --f 1 --m-max 3 --n-max 5
///   lfspec validate --p 3 --N 10 [--input spectrum.json] [--corrupt 1e-3]
///   lfspec zeta --p 2 --s 1,2,3 | --s-re-range 0.5:4:0.5 [--s-im 1.0]
///
/// Output goes to --out, else to $LFSPEC_OUTPUT_DIR/<command>.<ext>, else to
/// `out`. Diagnostics go to `err` only.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lfs

#endif  // LFS_CLI_HPP
