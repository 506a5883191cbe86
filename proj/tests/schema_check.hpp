// Copyright 2026 The Prosody Labeling Toolkit Authors
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

// Validator for the JSON Schema subset used by docs/api: type, required,
// properties, items, min/maxItems, min/maxLength, minimum, maximum,
// exclusiveMinimum and local "#/definitions/..." references.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace prosody::testing {

class SchemaChecker {
public:
  explicit SchemaChecker(nlohmann::json root) : root_(std::move(root)) {}

  /// Returns one message per violation; empty when the document conforms.
  std::vector<std::string> check(const nlohmann::json &doc) const {
    std::vector<std::string> errors;
    visit(root_, doc, "$", errors);
    return errors;
  }

private:
  static bool has_type(const nlohmann::json &v, const std::string &t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
  }

  void visit(const nlohmann::json &schema, const nlohmann::json &v, const std::string &at,
             std::vector<std::string> &errors) const {
    if (schema.contains("$ref")) {
      const std::string ref = schema["$ref"];
      const std::string prefix = "#/definitions/";
      visit(root_["definitions"][ref.substr(prefix.size())], v, at, errors);
      return;
    }
    auto fail = [&](const std::string &msg) { errors.push_back(at + ": " + msg); };
    if (schema.contains("type") && !has_type(v, schema["type"])) {
      fail("expected " + schema["type"].get<std::string>());
      return;
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (schema.contains("minimum") && x < schema["minimum"].get<double>()) fail("below minimum");
      if (schema.contains("maximum") && x > schema["maximum"].get<double>()) fail("above maximum");
      if (schema.contains("exclusiveMinimum") && x <= schema["exclusiveMinimum"].get<double>())
        fail("not above exclusiveMinimum");
    }
    if (v.is_string()) {
      const auto n = v.get<std::string>().size();
      if (schema.contains("minLength") && n < schema["minLength"].get<std::size_t>()) fail("too short");
      if (schema.contains("maxLength") && n > schema["maxLength"].get<std::size_t>()) fail("too long");
    }
    if (v.is_array()) {
      if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>())
        fail("too few items");
      if (schema.contains("maxItems") && v.size() > schema["maxItems"].get<std::size_t>())
        fail("too many items");
      if (schema.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i)
          visit(schema["items"], v[i], at + "[" + std::to_string(i) + "]", errors);
    }
    if (v.is_object()) {
      if (schema.contains("required"))
        for (const auto &key : schema["required"])
          if (!v.contains(key.get<std::string>())) fail("missing '" + key.get<std::string>() + "'");
      if (schema.contains("properties"))
        for (const auto &[key, sub] : schema["properties"].items())
          if (v.contains(key)) visit(sub, v[key], at + "." + key, errors);
    }
  }

  nlohmann::json root_;
};

} // namespace prosody::testing
