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

#ifndef WPF_REPORT_HPP_
#define WPF_REPORT_HPP_

#include <string>

#include <json.hpp>

#include "wpf/attacks.hpp"
#include "wpf/blackbox.hpp"
#include "wpf/games.hpp"
#include "wpf/qsim.hpp"

namespace wpf {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char *kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// {"schema_version", "tool", "tool_version", "command", "config", "results"}.
Json report_envelope(const std::string &command, Json config, Json results);

/// wall_time is left out unless asked for, so equal seeds give equal bytes.
Json to_json(const TrialReport &r, bool include_wall_time = false);
Json to_json(const GameConfig &cfg);
Json to_json(const Family &f, std::uint64_t k);
Json to_json(const AttackOutcome &out);
Json to_json(const BlackBoxDescriptor &d);
Json to_json(const qsim::CircuitCheck &c);
Json to_json(const qsim::ConversionReport &r);
Json to_json(const qsim::QpeResult &r);
Json to_json(const BfsResult &r);

BlackBoxDescriptor descriptor_from_json(const Json &j);

}  // namespace wpf

#endif  // WPF_REPORT_HPP_
