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

#ifndef FINREL_RECORDS_H_
#define FINREL_RECORDS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace finrel {

// Closed inventory of variable names a record may carry.
enum class VariableName { kFounder, kCountry, kRevenue, kCustomersUsers, kInvestment };

std::string_view to_string(VariableName name);
std::optional<VariableName> variable_name_from_string(std::string_view s);

// Date placeholder for records whose source states no date; serialized
// literally.
inline constexpr std::string_view kUnknownDate = "unknown-date";

// One (company, variable name, variable value, variable date) tuple.
//
// Construction trims every field and rejects values that cannot survive
// the target-text format: empty company/value/date, a '|' anywhere, or a
// comma in the company or value. Dates may contain commas.
class RelationRecord {
 public:
  RelationRecord(std::string_view company, VariableName variable,
                 std::string_view value,
                 std::string_view date = kUnknownDate);

  const std::string& company() const { return company_; }
  VariableName variable() const { return variable_; }
  const std::string& value() const { return value_; }
  const std::string& date() const { return date_; }
  bool has_date() const { return date_ != kUnknownDate; }

  friend bool operator==(const RelationRecord&, const RelationRecord&) = default;

 private:
  std::string company_;
  VariableName variable_;
  std::string value_;
  std::string date_;
};

// Renders `company, variable, value, date|` per record, records joined by a
// single space. Empty input renders as the empty string.
std::string serialize(const std::vector<RelationRecord>& records);

// Inverse of serialize. Throws ParseError for a record with fewer than
// three commas and ValidationError for an unknown variable name or a field
// RelationRecord rejects.
std::vector<RelationRecord> parse_records(std::string_view text);

// Case-folded, whitespace-normalized key of one record; equal keys mean
// equal information.
std::string information_key(const RelationRecord& record);

// Sorted multiset of information keys.
std::vector<std::string> information_content(
    const std::vector<RelationRecord>& records);

// Multiset equality after case folding and whitespace normalization.
bool record_set_equal(const std::vector<RelationRecord>& a,
                      const std::vector<RelationRecord>& b);

// One line of a prediction file.
struct Prediction {
  std::string id;
  std::string predicted_text;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

// JSON-lines prediction file: {"id": ..., "predicted_text": ...} per line.
std::vector<Prediction> load_predictions(const std::string& path);
std::string prediction_to_json_line(const Prediction& prediction);

}  // namespace finrel

#endif  // FINREL_RECORDS_H_
