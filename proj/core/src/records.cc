// Copyright 2026 The finrel Authors.
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

#include "finrel/records.h"

#include <algorithm>
#include <array>

#include "json.hpp"

#include "finrel/error.h"
#include "finrel/io.h"
#include "finrel/text.h"

namespace finrel {
namespace {

constexpr std::array<std::pair<VariableName, std::string_view>, 5> kNames{{
    {VariableName::kFounder, "founder"},
    {VariableName::kCountry, "country"},
    {VariableName::kRevenue, "revenue"},
    {VariableName::kCustomersUsers, "customers/users"},
    {VariableName::kInvestment, "investment"},
}};

std::string checked_field(std::string_view raw, std::string_view field,
                          bool allow_comma) {
  const std::string_view v = text::trim(raw);
  if (v.empty()) throw ValidationError("record " + std::string(field) + " is empty");
  if (v.find('|') != std::string_view::npos) {
    throw ValidationError("record " + std::string(field) + " contains '|': " +
                          std::string(v));
  }
  if (!allow_comma && v.find(',') != std::string_view::npos) {
    throw ValidationError("record " + std::string(field) +
                          " contains a comma: " + std::string(v));
  }
  return std::string(v);
}

}  // namespace

std::string_view to_string(VariableName name) {
  for (const auto& [n, s] : kNames) {
    if (n == name) return s;
  }
  return "?";
}

std::optional<VariableName> variable_name_from_string(std::string_view s) {
  for (const auto& [n, name] : kNames) {
    if (name == s) return n;
  }
  return std::nullopt;
}

RelationRecord::RelationRecord(std::string_view company, VariableName variable,
                               std::string_view value, std::string_view date)
    : company_(checked_field(company, "company", false)),
      variable_(variable),
      value_(checked_field(value, "value", false)),
      date_(checked_field(date, "date", true)) {}

std::string serialize(const std::vector<RelationRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    if (!out.empty()) out += ' ';
    out += r.company();
    out += ", ";
    out += to_string(r.variable());
    out += ", ";
    out += r.value();
    out += ", ";
    out += r.date();
    out += '|';
  }
  return out;
}

std::vector<RelationRecord> parse_records(std::string_view s) {
  std::vector<RelationRecord> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t bar = s.find('|', pos);
    if (bar == std::string_view::npos) bar = s.size();
    const std::string_view chunk = text::trim(s.substr(pos, bar - pos));
    pos = bar + 1;
    if (chunk.empty()) continue;

    std::array<std::string_view, 4> fields;
    std::size_t start = 0;
    for (int f = 0; f < 3; ++f) {
      const std::size_t comma = chunk.find(',', start);
      if (comma == std::string_view::npos) {
        throw ParseError("record has fewer than four fields: '" +
                         std::string(chunk) + "'");
      }
      fields[f] = chunk.substr(start, comma - start);
      start = comma + 1;
    }
    fields[3] = chunk.substr(start);

    const std::string_view name = text::trim(fields[1]);
    const auto variable = variable_name_from_string(name);
    if (!variable) {
      throw ValidationError("unknown variable name '" + std::string(name) +
                            "' in record '" + std::string(chunk) + "'");
    }
    out.emplace_back(fields[0], *variable, fields[2], fields[3]);
  }
  return out;
}

std::string information_key(const RelationRecord& r) {
  std::string key = text::fold_case(text::normalize_whitespace(r.company()));
  key += '\x1f';
  key += to_string(r.variable());
  key += '\x1f';
  key += text::fold_case(text::normalize_whitespace(r.value()));
  key += '\x1f';
  key += text::fold_case(text::normalize_whitespace(r.date()));
  return key;
}

std::vector<std::string> information_content(
    const std::vector<RelationRecord>& records) {
  std::vector<std::string> keys;
  keys.reserve(records.size());
  for (const auto& r : records) keys.push_back(information_key(r));
  std::sort(keys.begin(), keys.end());
  return keys;
}

bool record_set_equal(const std::vector<RelationRecord>& a,
                      const std::vector<RelationRecord>& b) {
  return a.size() == b.size() && information_content(a) == information_content(b);
}

std::vector<Prediction> load_predictions(const std::string& path) {
  std::vector<Prediction> out;
  for_each_line(path, [&](std::string_view line, std::size_t number) {
    if (text::trim(line).empty()) return;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), number);
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
        !j.contains("predicted_text") || !j["predicted_text"].is_string()) {
      throw ParseError("prediction needs string fields id and predicted_text",
                       number);
    }
    out.push_back({j["id"].get<std::string>(),
                   j["predicted_text"].get<std::string>()});
  });
  return out;
}

std::string prediction_to_json_line(const Prediction& p) {
  nlohmann::ordered_json j;
  j["id"] = p.id;
  j["predicted_text"] = p.predicted_text;
  return j.dump();
}

}  // namespace finrel
