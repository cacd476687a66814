// Copyright 2026 The islandparse Authors
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


#include "islandparse/report.hpp"

#include <charconv>
#include <nlohmann/json.hpp>

namespace islandparse {

namespace {

constexpr std::pair<QueryKind, std::string_view> kKindNames[] = {
    {QueryKind::Parse, "parse"}, {QueryKind::Cover, "cover"},     {QueryKind::Mc, "mc"},
    {QueryKind::Minmax, "minmax"}, {QueryKind::Seq, "seq"},       {QueryKind::MaxT, "maxt"},
    {QueryKind::Success, "success"}, {QueryKind::MsSuccess, "ms-success"},
};

}  // namespace

std::optional<QueryKind> parse_query_kind(std::string_view name) {
  for (auto [kind, text] : kKindNames)
    if (text == name) return kind;
  return std::nullopt;
}

std::string_view query_kind_name(QueryKind kind) {
  for (auto [k, text] : kKindNames)
    if (k == kind) return text;
  return "?";
}

std::size_t QueryOutput::record_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.records.size();
  return n;
}

Record to_record(const Solution& s) {
  return Record{s.rule_id, s.island.begin, s.island.end, s.coverage, to_string(s.result), s.ratio};
}

Record to_record(const ChartEntry& e) {
  std::string term = e.rule_id == kTerminalRuleId ? "@" + e.result.name() : to_string(e.result);
  return Record{e.rule_id, e.island.begin, e.island.end, e.coverage, std::move(term),
                coverage_ratio(e.coverage, e.island)};
}

namespace {

void add_solutions(Block& block, const ParseSet& set, std::size_t& budget) {
  for (const auto& s : set.solutions()) {
    if (budget == 0) return;
    block.records.push_back(to_record(s));
    --budget;
  }
}

void add_entries(QueryOutput& out, const std::vector<ChartEntry>& entries, std::size_t budget) {
  Block b;
  for (const auto& e : entries) {
    if (budget-- == 0) break;
    b.records.push_back(to_record(e));
  }
  out.blocks.push_back(std::move(b));
}

}  // namespace

QueryOutput run_query(ParseSession& session, const QueryRequest& request) {
  QueryOutput out{request.kind, {}};
  std::size_t budget = request.max_solutions == 0 ? static_cast<std::size_t>(-1) : request.max_solutions;
  const Term& cat = request.category;
  switch (request.kind) {
    case QueryKind::Parse: {
      Block b;
      add_solutions(b, all_phrases(session, cat, request.max_solutions), budget);
      out.blocks.push_back(std::move(b));
      break;
    }
    case QueryKind::Cover: {
      Block b;
      add_solutions(b, cv_phrases(session, cat), budget);
      out.blocks.push_back(std::move(b));
      break;
    }
    case QueryKind::Mc:
    case QueryKind::Minmax: {
      auto found = request.kind == QueryKind::Mc ? mc_phrases(session, cat) : minmax_phrases(session, cat);
      if (!found) break;
      Block b{"coverage " + std::to_string(found->coverage), {}};
      add_solutions(b, found->parses, budget);
      out.blocks.push_back(std::move(b));
      break;
    }
    case QueryKind::Seq: {
      std::size_t n = 0;
      seq_phrase(session, cat, [&](std::span<const Solution> seq) {
        Block b{"sequence " + std::to_string(++n), {}};
        for (const auto& s : seq) b.records.push_back(to_record(s));
        out.blocks.push_back(std::move(b));
        return --budget > 0;
      });
      break;
    }
    case QueryKind::MaxT: {
      for (auto& g : maxT_phrases(session, cat)) {
        if (budget == 0) break;
        Block b{"ratio " + to_string(g.ratio), {}};
        add_solutions(b, g.parses, budget);
        out.blocks.push_back(std::move(b));
      }
      break;
    }
    case QueryKind::Success:
    case QueryKind::MsSuccess: {
      session.solve_call(cat, session.whole_input(), [](const Solution&) { return true; });
      if (request.kind == QueryKind::Success)
        add_entries(out, success_list(session), budget);
      else if (request.rule)
        add_entries(out, ms_success_for(*request.rule, session), budget);
      else
        add_entries(out, ms_success_list(session), budget);
      break;
    }
  }
  std::erase_if(out.blocks, [](const Block& b) { return b.records.empty(); });
  return out;
}

std::string render_line(const Record& r) {
  return "(" + std::to_string(r.rule_id) + ") [" + std::to_string(r.begin) + "--" + std::to_string(r.end) + ") /" +
         std::to_string(r.coverage) + " ~~> " + r.term;
}

std::string render_chart_entry(const ChartEntry& e) { return render_line(to_record(e)); }

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  bool literal(std::string_view lit) {
    if (s_.substr(0, lit.size()) != lit) return false;
    s_.remove_prefix(lit.size());
    return true;
  }
  bool integer(int& out) {
    auto [ptr, ec] = std::from_chars(s_.data(), s_.data() + s_.size(), out);
    if (ec != std::errc() || ptr == s_.data()) return false;
    s_.remove_prefix(static_cast<std::size_t>(ptr - s_.data()));
    return true;
  }
  std::string_view rest() const { return s_; }

 private:
  std::string_view s_;
};

}  // namespace

std::optional<ChartLine> parse_chart_line(std::string_view line) {
  Cursor c(line);
  ChartLine out{};
  if (c.literal("(") && c.integer(out.rule_id) && c.literal(") [") && c.integer(out.begin) && c.literal("--") &&
      c.integer(out.end) && c.literal(") /") && c.integer(out.coverage) && c.literal(" ~~> ")) {
    out.term = std::string(c.rest());
    if (!out.term.empty()) return out;
  }
  return std::nullopt;
}

std::vector<std::string> render_text(const QueryOutput& out) {
  std::vector<std::string> lines;
  for (const auto& b : out.blocks) {
    if (!b.heading.empty()) lines.push_back("% " + b.heading);
    for (const auto& r : b.records) lines.push_back(render_line(r));
  }
  return lines;
}

std::vector<std::string> render_json(const QueryOutput& out, std::size_t input_line) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < out.blocks.size(); ++i) {
    for (const auto& r : out.blocks[i].records) {
      nlohmann::ordered_json j;
      j["line"] = input_line;
      j["rule_id"] = r.rule_id;
      j["begin"] = r.begin;
      j["end"] = r.end;
      j["coverage"] = r.coverage;
      j["term"] = r.term;
      j["ratio"] = to_string(r.ratio);
      if (out.kind == QueryKind::Seq) j["sequence"] = i + 1;
      if (out.kind == QueryKind::MaxT) j["group"] = i + 1;
      lines.push_back(j.dump());
    }
  }
  return lines;
}

}  // namespace islandparse
