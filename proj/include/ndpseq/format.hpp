// Copyright 2026 The ndpseq Authors.
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

#ifndef NDPSEQ_FORMAT_HPP
#define NDPSEQ_FORMAT_HPP

#include <string>
#include <string_view>

#include <json.hpp>

namespace ndpseq {

using Json = nlohmann::ordered_json;

/// 17 significant digits, locale independent ("%.17g" semantics). NaN and
/// infinities render as "nan", "inf", "-inf".
std::string format_double(double value);

/// Fixed notation with the given number of decimals.
std::string format_fixed(double value, int decimals);

/// Locale-independent parse of a complete decimal number. Throws
/// ValidationError naming `what` on failure.
double parse_double(std::string_view text, std::string_view what);
long long parse_integer(std::string_view text, std::string_view what);

/// Serializes JSON with two-space indentation, keys in insertion order and
/// every floating-point number in 17-significant-digit form. Non-finite
/// numbers become null.
std::string dump_json(const Json& value);

}  // namespace ndpseq

#endif  // NDPSEQ_FORMAT_HPP
