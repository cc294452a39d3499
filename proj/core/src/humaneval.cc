// Copyright 2026 The rttape Authors. All Rights Reserved.
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

#include <algorithm>
#include <cctype>
#include <numeric>

#include <fmt/format.h>

#include "rttape/analysis.h"
#include "rttape/errors.h"
#include "rttape/random.h"

namespace rttape {
namespace {

constexpr std::string_view kColumns[] = {
    "schema_version",    "assignment_id",    "item_id",  "rater_slot",
    "source",            "output",           "fluency_question",
    "accuracy_question", "fluency",          "accuracy", "internal_system_label"};
constexpr std::size_t kNumColumns = std::size(kColumns);

std::string EscapeField(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string UnescapeField(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      const char n = s[++i];
      out.push_back(n == 't' ? '\t' : n == 'n' ? '\n' : n == 'r' ? '\r' : n);
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string MakeHumanEvalTasks(std::span<const HumanEvalInput> items,
                               std::size_t raters_per_item, std::uint64_t seed) {
  struct Row {
    std::size_t item;
    std::size_t slot;
  };
  std::vector<Row> rows;
  rows.reserve(items.size() * raters_per_item);
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t r = 0; r < raters_per_item; ++r) rows.push_back({i, r + 1});
  }
  Rng rng(seed);
  for (std::size_t i = rows.size(); i > 1; --i) {
    std::swap(rows[i - 1], rows[rng.Below(i)]);
  }

  const int id_width = static_cast<int>(std::to_string(std::max<std::size_t>(items.size(), 1)).size());
  std::string out;
  for (std::size_t c = 0; c < kNumColumns; ++c) {
    out += kColumns[c];
    out.push_back(c + 1 == kNumColumns ? '\n' : '\t');
  }
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const HumanEvalInput& item = items[rows[a].item];
    out += fmt::format("{}\t{}\titem-{:0{}}\t{}\t{}\t{}\t{}\t{}\t\t\t{}\n", kHumanEvalSchema,
                       a + 1, rows[a].item + 1, id_width, rows[a].slot,
                       EscapeField(item.source), EscapeField(item.output), kFluencyPrompt,
                       kAccuracyPrompt, EscapeField(item.system_label));
  }
  return out;
}

std::vector<HumanEvalItem> ParseHumanEvalTasks(std::string_view tsv) {
  std::map<std::string, HumanEvalItem> by_id;
  std::vector<std::string> order;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t start = 0;
  while (start < tsv.size()) {
    std::size_t nl = tsv.find('\n', start);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto fields = SplitTabs(line);
    if (!header_seen) {
      if (fields.empty() || fields[0] != kColumns[0]) {
        throw DataError("human-eval file does not start with the expected header");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != kNumColumns) {
      throw DataError(fmt::format("human-eval line {}: expected {} columns, found {}", line_no,
                                  kNumColumns, fields.size()));
    }
    if (fields[0] != kHumanEvalSchema) {
      throw DataError(fmt::format("human-eval line {}: unsupported schema '{}'", line_no,
                                  fields[0]));
    }
    const std::string id(fields[2]);
    auto [it, inserted] = by_id.try_emplace(id);
    HumanEvalItem& item = it->second;
    if (inserted) {
      order.push_back(id);
      item.item_id = id;
      item.source = UnescapeField(fields[4]);
      item.output = UnescapeField(fields[5]);
      item.system_label = UnescapeField(fields[10]);
    } else if (item.system_label != UnescapeField(fields[10])) {
      throw DataError(fmt::format("human-eval line {}: item {} has conflicting system labels",
                                  line_no, id));
    }
    if (const std::string_view f = fields[8]; !f.empty()) {
      if (f.size() != 1 || f[0] < '1' || f[0] > '5') {
        throw DataError(fmt::format("human-eval line {}: fluency '{}' is not 1..5", line_no, f));
      }
      item.fluency_ratings.push_back(f[0] - '0');
    }
    if (const std::string_view a = fields[9]; !a.empty()) {
      const std::string v = Lower(a);
      if (v == "no") {
        item.accuracy_ratings.push_back(true);
      } else if (v == "yes") {
        item.accuracy_ratings.push_back(false);
      } else {
        throw DataError(fmt::format("human-eval line {}: accuracy '{}' is not yes/no", line_no, a));
      }
    }
  }
  if (!header_seen) throw DataError("human-eval file is empty");
  std::vector<HumanEvalItem> out;
  out.reserve(order.size());
  for (const auto& id : order) out.push_back(std::move(by_id[id]));
  return out;
}

std::string SystemRating::Formatted() const {
  return fmt::format("{:.2f} / {:.1f}%", fluency, accuracy_pct);
}

std::map<std::string, SystemRating> AggregateHumanEval(std::span<const HumanEvalItem> items,
                                                       bool allow_partial,
                                                       std::size_t ratings_per_item) {
  std::vector<std::string> incomplete;
  for (const auto& item : items) {
    if (item.fluency_ratings.size() != ratings_per_item ||
        item.accuracy_ratings.size() != ratings_per_item) {
      incomplete.push_back(item.item_id);
    }
  }
  if (!incomplete.empty() && !allow_partial) {
    std::sort(incomplete.begin(), incomplete.end());
    std::string ids;
    for (const auto& id : incomplete) ids += (ids.empty() ? "" : ", ") + id;
    throw DataError(fmt::format("{} item(s) without exactly {} ratings: {}", incomplete.size(),
                                ratings_per_item, ids));
  }

  // Sum in item-id order so results do not depend on input order.
  std::vector<const HumanEvalItem*> sorted;
  for (const auto& item : items) sorted.push_back(&item);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->item_id < b->item_id; });

  struct Acc {
    double fluency_sum = 0.0;
    std::size_t fluency_items = 0;
    std::size_t accurate = 0;
    std::size_t accuracy_ratings = 0;
    std::size_t items = 0;
  };
  std::map<std::string, Acc> acc;
  for (const HumanEvalItem* item : sorted) {
    Acc& a = acc[item->system_label];
    ++a.items;
    if (!item->fluency_ratings.empty()) {
      std::vector<int> f = item->fluency_ratings;
      std::sort(f.begin(), f.end());
      a.fluency_sum += static_cast<double>(std::accumulate(f.begin(), f.end(), 0)) /
                       static_cast<double>(f.size());
      ++a.fluency_items;
    }
    a.accurate += static_cast<std::size_t>(
        std::count(item->accuracy_ratings.begin(), item->accuracy_ratings.end(), true));
    a.accuracy_ratings += item->accuracy_ratings.size();
  }

  std::map<std::string, SystemRating> out;
  for (const auto& [label, a] : acc) {
    SystemRating r;
    r.items = a.items;
    r.fluency = a.fluency_items ? a.fluency_sum / static_cast<double>(a.fluency_items) : 0.0;
    r.accuracy_pct = a.accuracy_ratings ? 100.0 * static_cast<double>(a.accurate) /
                                              static_cast<double>(a.accuracy_ratings)
                                        : 0.0;
    out[label] = r;
  }
  return out;
}

nlohmann::json ToJson(const std::map<std::string, SystemRating>& ratings) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [label, r] : ratings) {
    j[label] = {{"fluency", r.fluency},
                {"accuracy", r.accuracy_pct},
                {"items", r.items},
                {"cell", r.Formatted()}};
  }
  return j;
}

std::string RenderRatings(const std::map<std::string, SystemRating>& ratings) {
  std::size_t width = 6;
  for (const auto& [label, _] : ratings) width = std::max(width, label.size());
  std::string out = fmt::format("{:<{}}  {:>16}  {:>5}\n", "system", width,
                                "fluency / acc.", "items");
  for (const auto& [label, r] : ratings) {
    out += fmt::format("{:<{}}  {:>16}  {:>5}\n", label, width, r.Formatted(), r.items);
  }
  return out;
}

}  // namespace rttape
