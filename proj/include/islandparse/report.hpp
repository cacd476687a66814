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


#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "islandparse/engine.hpp"
#include "islandparse/queries.hpp"

namespace islandparse {

enum class QueryKind { Parse, Cover, Mc, Minmax, Seq, MaxT, Success, MsSuccess };

std::optional<QueryKind> parse_query_kind(std::string_view name);
std::string_view query_kind_name(QueryKind kind);

// One reported solution or chart success.
struct Record {
  RuleId rule_id = 0;
  Position begin = 1;
  Position end = 1;
  int coverage = 0;
  std::string term;
  Rational ratio{1};
  friend bool operator==(const Record&, const Record&) = default;
};

// Records sharing a heading: a ratio group, a coverage class or a sequence.
struct Block {
  std::string heading;  // empty when the query has no grouping
  std::vector<Record> records;
};

struct QueryOutput {
  QueryKind kind = QueryKind::Parse;
  std::vector<Block> blocks;
  std::size_t record_count() const;
};

struct QueryRequest {
  QueryKind kind = QueryKind::Parse;
  Term category = Term::atom("s");
  std::optional<RuleId> rule;  // restricts ms-success to one rule
  std::size_t max_solutions = 0;  // 0: unlimited
};

// Runs one query on a session. The success listings first run the category
// to exhaustion so that the chart holds everything it can derive.
QueryOutput run_query(ParseSession& session, const QueryRequest& request);

Record to_record(const Solution& s);
Record to_record(const ChartEntry& e);

// `(<rule>) [<b>--<e>) /<cov> ~~> <term>`; terminals print as `@word`.
std::string render_line(const Record& r);
std::string render_chart_entry(const ChartEntry& e);

struct ChartLine {
  RuleId rule_id;
  Position begin;
  Position end;
  int coverage;
  std::string term;
};
std::optional<ChartLine> parse_chart_line(std::string_view line);

// Plain listing: `% <heading>` before each headed block, one line per record.
std::vector<std::string> render_text(const QueryOutput& out);
// One JSON object per record, tagged with the 1-based input line number.
std::vector<std::string> render_json(const QueryOutput& out, std::size_t input_line);

}  // namespace islandparse
