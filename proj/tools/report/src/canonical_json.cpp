// Copyright 2026 The IFE Authors
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


#include "ife/report/canonical_json.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ife::report {

namespace {

bool is_scalar(const Json& v) { return !v.is_array() && !v.is_object(); }

// Scalars, or arrays whose elements are all scalar arrays ([re, im] rows).
bool is_flat(const Json& v) {
  if (!v.is_array()) return false;
  for (const Json& e : v) {
    if (is_scalar(e)) continue;
    if (!e.is_array()) return false;
    for (const Json& x : e) {
      if (!is_scalar(x)) return false;
    }
  }
  return true;
}

void write(const Json& v, int indent, std::string& out);

void write_scalar(const Json& v, std::string& out) {
  if (v.is_number_float()) {
    out += format_double(v.get<double>());
  } else {
    out += v.dump();
  }
}

void write_inline(const Json& v, std::string& out) {
  if (is_scalar(v)) {
    write_scalar(v, out);
    return;
  }
  out += '[';
  bool first = true;
  for (const Json& e : v) {
    if (!first) out += ", ";
    first = false;
    write_inline(e, out);
  }
  out += ']';
}

void newline(int indent, std::string& out) {
  out += '\n';
  out.append(static_cast<std::size_t>(indent), ' ');
}

void write(const Json& v, int indent, std::string& out) {
  if (is_scalar(v)) {
    write_scalar(v, out);
  } else if (v.empty()) {
    out += v.is_array() ? "[]" : "{}";
  } else if (v.is_object()) {
    out += '{';
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) out += ',';
      first = false;
      newline(indent + 2, out);
      out += Json(it.key()).dump();
      out += ": ";
      write(it.value(), indent + 2, out);
    }
    newline(indent, out);
    out += '}';
  } else if (is_flat(v)) {
    write_inline(v, out);
  } else {
    out += '[';
    bool first = true;
    for (const Json& e : v) {
      if (!first) out += ',';
      first = false;
      newline(indent + 2, out);
      write(e, indent + 2, out);
    }
    newline(indent, out);
    out += ']';
  }
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("canonical_dump: non-finite number");
  if (x == 0.0) return "0.0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string canonical_dump(const Json& value) {
  std::string out;
  write(value, 0, out);
  out += '\n';
  return out;
}

}  // namespace ife::report
