// Copyright 2026 The wpf Authors
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

#ifndef WPF_TOOLS_CLI_HPP_
#define WPF_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace wpf {

/// Runs the `wpf` command line with `args` (program name excluded). JSON
/// reports go to `out`, diagnostics to `err`. Returns the exit status.
int wpf_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace wpf

#endif  // WPF_TOOLS_CLI_HPP_
