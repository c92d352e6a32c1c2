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


// Canonical text form for system files and reports: sorted keys, two-space
// indent, floats with 17 significant digits, and arrays of scalars or of
// scalar pairs kept on one line (so a matrix prints one row per line).

#ifndef IFE_REPORT_CANONICAL_JSON_HPP
#define IFE_REPORT_CANONICAL_JSON_HPP

#include <string>

#include <json.hpp>

namespace ife::report {

using Json = nlohmann::json;

/// Serialized form, newline terminated. Non-finite floats throw
/// std::invalid_argument; -0.0 is written as 0.0.
std::string canonical_dump(const Json& value);

/// %.17g, with a trailing ".0" when the result would read back as an integer.
std::string format_double(double x);

}  // namespace ife::report

#endif  // IFE_REPORT_CANONICAL_JSON_HPP
