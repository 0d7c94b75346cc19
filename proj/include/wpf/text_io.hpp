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

#ifndef WPF_TEXT_IO_HPP_
#define WPF_TEXT_IO_HPP_

#include <string>
#include <string_view>

#include "wpf/algebra.hpp"

namespace wpf {

/// Parses `name/arity, ...`.
Signature parse_signature(std::string_view text);

/// Prefix notation: `mul(a1, inv(a2))`. Variables are `a<i>` or `z<i>`;
/// nullary symbols may be written `one` or `one()`.
Term parse_term(std::string_view text);

/// Table format:
///
///   signature: mul/2, inv/1, one/0
///   carrier: 0 1 2
///   table mul
///   0 1 2
///   1 2 0
///   2 0 1
///   table inv
///   0 2 1
///   table one
///   0
///
/// A symbol of arity k >= 1 has |carrier|^(k-1) rows of |carrier| labels;
/// a nullary symbol has a single label. `#` starts a comment.
FiniteAlgebra parse_algebra(std::string_view text, std::string name = "algebra");
std::string format_algebra(const FiniteAlgebra &alg);

}  // namespace wpf

#endif  // WPF_TEXT_IO_HPP_
