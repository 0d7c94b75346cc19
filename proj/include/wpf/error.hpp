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

#ifndef WPF_ERROR_HPP_
#define WPF_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace wpf {

enum class ErrorKind {
    InvalidArgument,
    IndexOutOfRange,
    ArityMismatch,
    UnknownSymbol,
    BadInputIndex,
    ForwardReference,
    VarietyMismatch,
    UnsupportedVariety,
    BudgetExceeded,
    ProtocolViolation,
    NoPreimage,
    WidthMismatch,
    OverlappingRegisters,
    TrivialVariety,
    Parse,
};

const char *error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

}  // namespace wpf

#endif  // WPF_ERROR_HPP_
