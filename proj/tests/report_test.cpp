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


#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "islandparse/batch.hpp"
#include "islandparse/report.hpp"
#include "support/fixtures.hpp"
#include "support/random_grammar.hpp"

namespace islandparse {
namespace {

using testing::at_threshold;
using testing::brook_sentence;

TEST(QueryKindTest, NamesRoundTrip) {
  for (auto k : {QueryKind::Parse, QueryKind::Cover, QueryKind::Mc, QueryKind::Minmax, QueryKind::Seq, QueryKind::MaxT,
                 QueryKind::Success, QueryKind::MsSuccess})
    EXPECT_EQ(parse_query_kind(query_kind_name(k)), k);
  EXPECT_EQ(parse_query_kind("ms-success"), QueryKind::MsSuccess);
  EXPECT_FALSE(parse_query_kind("best"));
}

TEST(RenderTest, ChartLineFormat) {
  Record r{4, 2, 8, 4, "np(nppp(you,pp(by,np(the,brook,A))))", Rational(2, 3)};
  EXPECT_EQ(render_line(r), "(4) [2--8) /4 ~~> np(nppp(you,pp(by,np(the,brook,A))))");
  Record t{kTerminalRuleId, 1, 2, 1, "@have", Rational(1)};
  EXPECT_EQ(render_line(t), "(-1) [1--2) /1 ~~> @have");
}

TEST(RenderTest, TerminalEntriesPrintAsWords) {
  ParseSession s(testing::bundled("maptask.lhip"), brook_sentence(), at_threshold(Rational(0)));
  s.consume_terminal("have", s.whole_input(), [](const Solution&) { return true; });
  ASSERT_EQ(s.chart().size(), 1u);
  EXPECT_EQ(render_chart_entry(s.chart().entry(0)), "(-1) [1--2) /1 ~~> @have");
}

TEST(RenderTest, ParseRejectsGarbage) {
  EXPECT_FALSE(parse_chart_line(""));
  EXPECT_FALSE(parse_chart_line("(4) [2--8 /4 ~~> np"));
  EXPECT_FALSE(parse_chart_line("(x) [2--8) /4 ~~> np"));
}

TEST(RenderProperty, ChartLinesRoundTrip) {
  ParseSession s(testing::bundled("maptask.lhip"), brook_sentence(), at_threshold(Rational(0)));
  QueryRequest q;
  q.kind = QueryKind::Success;
  q.category = parse_term("s(S)");
  auto out = run_query(s, q);
  ASSERT_GT(out.record_count(), 0u);
  for (const auto& e : s.chart().entries()) {
    auto line = parse_chart_line(render_chart_entry(e));
    ASSERT_TRUE(line);
    EXPECT_EQ(line->rule_id, e.rule_id);
    EXPECT_EQ(line->begin, e.island.begin);
    EXPECT_EQ(line->end, e.island.end);
    EXPECT_EQ(line->coverage, e.coverage);
  }
}

void expect_same(const QueryOutput& out) {
  std::vector<const Record*> records;
  for (const auto& b : out.blocks)
    for (const auto& r : b.records) records.push_back(&r);
  const auto json = render_json(out, 3);
  ASSERT_EQ(json.size(), records.size());
  std::vector<std::string> text;
  for (const auto& l : render_text(out))
    if (!l.starts_with("%")) text.push_back(l);
  ASSERT_EQ(text.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto j = nlohmann::json::parse(json[i]);
    const auto t = parse_chart_line(text[i]);
    ASSERT_TRUE(t);
    EXPECT_EQ(j["line"], 3);
    EXPECT_EQ(j["rule_id"], t->rule_id);
    EXPECT_EQ(j["begin"], t->begin);
    EXPECT_EQ(j["end"], t->end);
    EXPECT_EQ(j["coverage"], t->coverage);
    EXPECT_EQ(j["term"], t->term);
    EXPECT_EQ(j["ratio"], to_string(records[i]->ratio));
  }
}

TEST(RenderProperty, TextAndJsonAgree) {
  for (auto kind : {QueryKind::Parse, QueryKind::Cover, QueryKind::Mc, QueryKind::Minmax, QueryKind::Seq,
                    QueryKind::MaxT, QueryKind::Success, QueryKind::MsSuccess}) {
    ParseSession s(testing::bundled("maptask.lhip"), brook_sentence(), at_threshold(Rational(0)));
    QueryRequest q;
    q.kind = kind;
    q.category = parse_term("np(X)");
    expect_same(run_query(s, q));
  }
}

TEST(RunQueryTest, MaxTHeadings) {
  ParseSession s(testing::bundled("maptask.lhip"), brook_sentence(), at_threshold(Rational(0)));
  QueryRequest q;
  q.kind = QueryKind::MaxT;
  q.category = parse_term("np(X)");
  auto out = run_query(s, q);
  ASSERT_EQ(out.blocks.size(), 3u);
  EXPECT_EQ(out.blocks[0].heading, "ratio 1");
  EXPECT_EQ(out.blocks[1].heading, "ratio 2/3");
  EXPECT_EQ(out.blocks[2].heading, "ratio 2/5");
  EXPECT_EQ(out.record_count(), 6u);
}

TEST(RunQueryTest, MsSuccessForOneRule) {
  ParseSession s(testing::bundled("maptask.lhip"), brook_sentence(), at_threshold(Rational(0)));
  QueryRequest q;
  q.kind = QueryKind::MsSuccess;
  q.category = parse_term("s(S)");
  q.rule = 4;
  auto out = run_query(s, q);
  EXPECT_EQ(out.record_count(), 2u);
  q.rule.reset();
  EXPECT_EQ(run_query(s, q).record_count(), 5u);
}

TEST(RunQueryTest, MaxSolutionsCapsParse) {
  ParseSession s(testing::bundled("maptask.lhip"), brook_sentence(), at_threshold(Rational(0)));
  QueryRequest q;
  q.category = parse_term("np(X)");
  q.max_solutions = 2;
  EXPECT_EQ(run_query(s, q).record_count(), 2u);
}

TEST(TokenizeTest, Examples) {
  EXPECT_EQ(tokenize("Have you", true), (std::vector<std::string>{"have", "you"}));
  EXPECT_EQ(tokenize("Have you"), (std::vector<std::string>{"Have", "you"}));
  EXPECT_EQ(tokenize("right-hand corner"), (std::vector<std::string>{"right-hand", "corner"}));
  EXPECT_EQ(tokenize("  the\ttree   by\t\tthe brook "), tokenize("the tree by the brook"));
  EXPECT_TRUE(tokenize(" \t ").empty());
}

BatchConfig maptask_batch(QueryKind kind) {
  BatchConfig c;
  c.grammar = testing::bundled("maptask.lhip");
  c.request.kind = kind;
  c.request.category = parse_term("np(X)");
  c.session = at_threshold(Rational(0));
  return c;
}

TEST(BatchTest, LineResults) {
  auto c = maptask_batch(QueryKind::Parse);
  auto r = run_line(c, 4, "have you the tree by the brook that");
  EXPECT_EQ(r.line, 4u);
  EXPECT_EQ(r.output.record_count(), 6u);
  EXPECT_TRUE(r.error.empty());
  EXPECT_EQ(run_line(c, 1, "").output.record_count(), 0u);
  c.request.category = parse_term("X");
  EXPECT_FALSE(run_line(c, 1, "the tree").error.empty());
}

TEST(BatchProperty, ParallelMatchesSerial) {
  std::mt19937 rng(3);
  const std::vector<std::string> words{"have", "you", "the", "tree", "by", "brook", "that", "big", "old", "map", "see"};
  std::vector<std::string> lines;
  for (int i = 0; i < 80; ++i) {
    std::string l;
    for (int n = static_cast<int>(rng() % 9); n > 0; --n) l += words[rng() % words.size()] + " ";
    lines.push_back(l);
  }
  for (auto kind : {QueryKind::Parse, QueryKind::MaxT, QueryKind::MsSuccess}) {
    auto c = maptask_batch(kind);
    auto serial = run_lines_serial(c, lines);
    auto parallel = run_lines_parallel(c, lines);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      EXPECT_EQ(parallel[i].line, i + 1);
      EXPECT_EQ(render_text(serial[i].output), render_text(parallel[i].output));
      EXPECT_EQ(serial[i].error, parallel[i].error);
    }
  }
}

}  // namespace
}  // namespace islandparse
