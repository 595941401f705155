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

#include "finrel/evalkit.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include <spdlog/spdlog.h>

#include "json.hpp"

#include "finrel/error.h"
#include "finrel/text.h"

namespace finrel {
namespace {

// Similarities are ratios of small integers; comparisons against the
// threshold absorb rounding in the last few ulps.
constexpr double kThresholdSlack = 1e-9;

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double round4(double x) { return std::round(x * 10000.0) / 10000.0; }

// Bit-parallel Levenshtein distance (Myers 1999, Hyyro 2001) for a pattern
// of at most 64 code points.
std::size_t edit_distance_bits(std::u32string_view pattern,
                               std::u32string_view text) {
  const std::size_t m = pattern.size();
  const std::uint64_t mask = m == 64 ? ~0ULL : ((1ULL << m) - 1);
  const std::uint64_t top = 1ULL << (m - 1);

  std::vector<std::pair<char32_t, std::uint64_t>> peq;
  for (std::size_t i = 0; i < m; ++i) {
    auto it = std::find_if(peq.begin(), peq.end(),
                           [&](const auto& e) { return e.first == pattern[i]; });
    if (it == peq.end()) {
      peq.emplace_back(pattern[i], 1ULL << i);
    } else {
      it->second |= 1ULL << i;
    }
  }

  std::uint64_t pv = mask;
  std::uint64_t mv = 0;
  std::size_t score = m;
  for (char32_t c : text) {
    std::uint64_t eq = 0;
    for (const auto& [ch, bits] : peq) {
      if (ch == c) {
        eq = bits;
        break;
      }
    }
    const std::uint64_t xv = eq | mv;
    const std::uint64_t xh = ((((eq & pv) + pv) & mask) ^ pv) | eq;
    std::uint64_t ph = mv | (~(xh | pv) & mask);
    std::uint64_t mh = pv & xh;
    if (ph & top) {
      ++score;
    } else if (mh & top) {
      --score;
    }
    ph = ((ph << 1) | 1) & mask;
    mh = (mh << 1) & mask;
    pv = mh | (~(xv | ph) & mask);
    mv = ph & xv;
  }
  return score;
}

std::size_t edit_distance_rows(std::u32string_view a, std::u32string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                         prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

std::string_view to_string(MatchMode mode) {
  return mode == MatchMode::kExact ? "exact" : "fuzzy";
}

void EvalConfig::validate() const {
  if (!(fuzzy_threshold > 0.0 && fuzzy_threshold <= 1.0)) {
    throw ArgumentError("fuzzy threshold must lie in (0, 1]");
  }
}

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();
  if (b.size() <= 64) return edit_distance_bits(b, a);
  return edit_distance_rows(a, b);
}

double similarity(std::string_view a, std::string_view b) {
  const std::u32string ua = text::decode_utf8(text::fold_case(a));
  const std::u32string ub = text::decode_utf8(text::fold_case(b));
  const std::size_t longest = std::max(ua.size(), ub.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(ua, ub)) /
                   static_cast<double>(longest);
}

bool word_match(std::string_view a, std::string_view b, const EvalConfig& cfg) {
  a = text::trim(a);
  b = text::trim(b);
  if (cfg.mode == MatchMode::kExact) {
    return text::fold_case(a) == text::fold_case(b);
  }
  return similarity(a, b) + kThresholdSlack >= cfg.fuzzy_threshold;
}

std::vector<std::string> scoring_tokens(std::string_view s, const EvalConfig& cfg) {
  if (!cfg.strip_separators) return text::split_whitespace(s);
  std::string stripped;
  stripped.reserve(s.size());
  for (char c : s) {
    if (c != ',' && c != '|') stripped += c;
  }
  return text::split_whitespace(stripped);
}

Counts score_example(std::string_view target, std::string_view predicted,
                     const EvalConfig& cfg) {
  const auto t = scoring_tokens(target, cfg);
  const auto p = scoring_tokens(predicted, cfg);
  Counts c;
  if (t.empty() && p.empty()) {
    c.tn = 1;
    return c;
  }
  const std::size_t n = std::max(t.size(), p.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i < t.size() && i < p.size()) {
      if (word_match(t[i], p[i], cfg)) {
        ++c.tp;
      } else {
        ++c.fp;
      }
    } else if (i < t.size()) {
      ++c.fn;
    } else {
      ++c.fp;
    }
  }
  return c;
}

double f1_score(double precision, double recall) {
  const double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

EvalReport make_report(const Counts& c) {
  EvalReport r;
  r.counts = c;
  r.accuracy = ratio(c.tp + c.tn, c.total());
  r.precision = ratio(c.tp, c.tp + c.fp);
  r.recall = ratio(c.tp, c.tp + c.fn);
  r.specificity = ratio(c.tn, c.tn + c.fp);
  r.f1 = f1_score(r.precision, r.recall);
  return r;
}

EvalReport aggregate(std::span<const Counts> scores) {
  Counts total;
  for (const Counts& s : scores) total += s;
  return make_report(total);
}

CorpusEvaluation evaluate_corpus(
    const std::vector<GoldExample>& gold,
    const std::map<std::string, std::string>& predictions,
    const EvalConfig& cfg) {
  cfg.validate();
  std::vector<std::string> missing;
  for (const auto& g : gold) {
    if (!predictions.contains(g.id)) missing.push_back(g.id);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) {
      if (!list.empty()) list += ", ";
      list += id;
    }
    throw ValidationError("no prediction for gold id(s): " + list);
  }
  if (predictions.size() > gold.size()) {
    spdlog::warn("{} predictions have no gold example and are ignored",
                 predictions.size() - gold.size());
  }

  CorpusEvaluation out;
  out.per_example.reserve(gold.size());
  Counts total;
  for (const auto& g : gold) {
    const Counts c = score_example(g.target_text, predictions.at(g.id), cfg);
    total += c;
    out.per_example.push_back({g.id, c});
  }
  out.report = make_report(total);
  return out;
}

std::string report_to_json(const EvalReport& r, const EvalConfig& cfg) {
  nlohmann::ordered_json j;
  j["tp"] = r.counts.tp;
  j["tn"] = r.counts.tn;
  j["fp"] = r.counts.fp;
  j["fn"] = r.counts.fn;
  j["accuracy"] = round4(r.accuracy);
  j["precision"] = round4(r.precision);
  j["recall"] = round4(r.recall);
  j["specificity"] = round4(r.specificity);
  j["f1"] = round4(r.f1);
  j["mode"] = to_string(cfg.mode);
  if (cfg.mode == MatchMode::kFuzzy) j["fuzzy_threshold"] = cfg.fuzzy_threshold;
  j["strip_separators"] = cfg.strip_separators;
  return j.dump(2) + "\n";
}

std::string per_example_to_json_lines(std::span<const ExampleScore> scores) {
  std::string out;
  for (const auto& s : scores) {
    nlohmann::ordered_json j;
    j["id"] = s.id;
    j["tp"] = s.counts.tp;
    j["tn"] = s.counts.tn;
    j["fp"] = s.counts.fp;
    j["fn"] = s.counts.fn;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace finrel
