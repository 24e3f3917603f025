// Copyright 2026 The freeconv Authors
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

#pragma once

// Text grammar for measure specs:
//
//   expr     := term ('*' term)*
//   term     := atom ('^' exponent)?
//   atom     := 'mp' '(' number ')' | 'as' | 'id'
//             | 'rat' '(' list ';' list ')' | '(' expr ')' | alias
//   exponent := integer | '(' number ')'
//   number   := ['-'] digits ['.' digits] ['/' digits]
//   list     := integer (',' integer)*      (ascending powers of w)
//
// Aliases: fc2, fc3, bures, bures2, mp-sqrt, mp-cbrt. Decimals are read
// exactly, so mp(0.25) == mp(1/4). Whitespace is ignored.

#include <optional>
#include <string>
#include <string_view>

#include "freeconv/errors.hpp"
#include "freeconv/measures.hpp"

namespace freeconv::measures {

/// Throws ParseError with the offset of the offending character.
MeasureSpec parse_measure(std::string_view text);

/// Exact rational from "3", "-2/3", "0.125".
Rational parse_rational(std::string_view text);

/// The spec an alias stands for, if `name` is one.
std::optional<MeasureSpec> alias_spec(std::string_view name);

/// Two-line diagnostic: the input and a caret under the error position.
std::string format_parse_error(std::string_view text, const ParseError& err);

}  // namespace freeconv::measures
