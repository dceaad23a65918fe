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

#include "ndpseq/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "ndpseq/error.hpp"

namespace ndpseq {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string format_fixed(double value, int decimals) {
  if (!std::isfinite(value)) return format_double(value);
  std::array<char, 512> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed, decimals);
  if (res.ec != std::errc()) return format_double(value);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

double parse_double(std::string_view text, std::string_view what) {
  const auto s = trim(text);
  std::string_view body = s;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(body.data(), body.data() + body.size(), value);
  if (body.empty() || res.ec != std::errc() || res.ptr != body.data() + body.size()) {
    throw ValidationError("cannot parse " + std::string(what) + " '" + std::string(s) +
                          "' as a number");
  }
  return value;
}

long long parse_integer(std::string_view text, std::string_view what) {
  const auto s = trim(text);
  std::string_view body = s;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  long long value = 0;
  const auto res = std::from_chars(body.data(), body.data() + body.size(), value);
  if (body.empty() || res.ec != std::errc() || res.ptr != body.data() + body.size()) {
    throw ValidationError("cannot parse " + std::string(what) + " '" + std::string(s) +
                          "' as an integer");
  }
  return value;
}

namespace {

void dump(const Json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        out += Json(it.key()).dump();
        out += ": ";
        dump(it.value(), out, indent + 1);
      }
      out += '\n';
      out += pad;
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& e : v) scalars = scalars && !e.is_structured();
      if (scalars) {
        out += '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          dump(v[i], out, indent + 1);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump(v[i], out, indent + 1);
      }
      out += '\n';
      out += pad;
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
      } else {
        std::string s = format_double(d);
        // Keep floats recognizable as floats after a round trip.
        if (s.find_first_of(".eE") == std::string::npos) s += ".0";
        out += s;
      }
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const Json& value) {
  std::string out;
  dump(value, out, 0);
  out += '\n';
  return out;
}

}  // namespace ndpseq
