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


// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "islandparse/batch.hpp"
#include "islandparse/compiler.hpp"
#include "islandparse/engine.hpp"
#include "islandparse/grammar_dsl.hpp"
#include "islandparse/oracle.hpp"
#include "islandparse/queries.hpp"
#include "support/dcg.hpp"
#include "support/random_grammar.hpp"

namespace ip = islandparse;
namespace it = islandparse::testing;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<ip::RuleSource> load(const std::string& name) {
  const std::filesystem::path p = std::filesystem::path(ISLANDPARSE_GRAMMAR_DIR) / name;
  return ip::load_grammar_files({&p, 1});
}

std::shared_ptr<const ip::Grammar> compiled(const std::vector<ip::RuleSource>& rules) {
  return std::make_shared<const ip::Grammar>(ip::compile(rules));
}

std::string words(const std::vector<std::string>& tokens, const std::vector<ip::Position>& at) {
  std::string out;
  for (auto p : at) out += (out.empty() ? "" : " ") + tokens[static_cast<std::size_t>(p - 1)];
  return out;
}

// Covered-token readings of every s-solution.
std::set<std::string> s_readings(const std::shared_ptr<const ip::Grammar>& g, const std::vector<std::string>& tokens,
                                 ip::Rational t) {
  ip::SessionOptions so;
  so.global_threshold = t;
  ip::ParseSession session(g, tokens, so);
  std::set<std::string> out;
  session.solve_call(ip::parse_term("s(S)"), session.whole_input(), [&](const ip::Solution& s) {
    if (s.chart_ref) out.insert(words(tokens, session.chart().covered_positions(*s.chart_ref)));
    return true;
  });
  return out;
}

const std::vector<std::string> kConjunctInput{"john", "saw", "mary", "and", "mark", "saw", "them"};

Verdict criterion1() {
  Verdict v;
  const auto t0 = Clock::now();
  auto readings = s_readings(compiled(load("conjunct.lhip")), kConjunctInput, ip::Rational(0));
  for (const char* want : {"john saw mary", "john saw mark", "john saw them", "mary saw them", "mary and mark saw them",
                           "john saw mary and mark saw them"})
    if (!readings.count(want)) v.fail(std::string("missing reading '") + want + "'");
  const double secs = seconds_since(t0);
  if (secs >= 1.0) v.fail("took " + std::to_string(secs) + " s");
  if (v.pass) v.detail << readings.size() << " distinct readings, " << secs << " s";
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto t0 = Clock::now();
  auto readings = s_readings(compiled(load("conjunct.lhip")), kConjunctInput, ip::Rational(1));
  if (!readings.count("mark saw them")) v.fail("no solution covering 'mark saw them'");
  if (!readings.count("mary and mark saw them")) v.fail("no solution covering 'mary and mark saw them'");
  if (readings.count("john saw them")) v.fail("threshold 1 admitted 'john saw them'");
  const double secs = seconds_since(t0);
  if (secs >= 1.0) v.fail("took " + std::to_string(secs) + " s");
  if (v.pass) v.detail << readings.size() << " readings at threshold 1, " << secs << " s";
  return v;
}

// (terminal?, begin, end, coverage, term up to renaming)
using Line = std::tuple<bool, int, int, int, std::string>;

Line expected(bool terminal, int b, int e, int c, const std::string& term) {
  return {terminal, b, e, c, terminal ? term : ip::variant_key(ip::parse_term(term))};
}

Line actual(const ip::ChartEntry& e) {
  const bool terminal = e.rule_id == ip::kTerminalRuleId;
  return {terminal, e.island.begin, e.island.end, e.coverage, terminal ? e.result.name() : ip::variant_key(e.result)};
}

Verdict criterion3() {
  Verdict v;
  const auto t0 = Clock::now();
  const std::vector<std::string> tokens{"have", "you", "the", "tree", "by", "the", "brook", "that"};
  ip::SessionOptions so;
  so.global_threshold = ip::Rational(0);
  ip::ParseSession session(compiled(load("maptask.lhip")), tokens, so);
  if (ip::phrase(session, ip::parse_term("s(S)"))) v.fail("phrase(s(S)) succeeded");

  const std::set<Line> want_ms{
      expected(true, 1, 2, 1, "have"),
      expected(true, 8, 9, 1, "that"),
      expected(false, 2, 8, 4, "np(nppp(you,pp(by,np(the,brook,J))))"),
      expected(false, 3, 8, 5, "np(nppp(np(the,tree,H),pp(by,np(the,brook,I))))"),
      expected(false, 3, 8, 2, "np(np(the,brook,K))"),
  };
  std::set<Line> got_ms;
  for (const auto& e : ip::ms_success_list(session)) got_ms.insert(actual(e));
  if (got_ms != want_ms) v.fail("ms_success differs (" + std::to_string(got_ms.size()) + " entries)");

  std::set<Line> got;
  for (const auto& e : ip::success_list(session)) got.insert(actual(e));
  for (const auto& [w, b] : std::vector<std::pair<std::string, int>>{
           {"brook", 7}, {"by", 5}, {"have", 1}, {"that", 8}, {"the", 3}, {"the", 6}, {"tree", 4}, {"you", 2}})
    if (!got.count(expected(true, b, b + 1, 1, w))) v.fail("success lacks @" + w);
  if (!got.count(expected(false, 5, 8, 3, "pp(pp(by,np(the,brook,F)))"))) v.fail("success lacks the [5--8)/3 pp");
  const double secs = seconds_since(t0);
  if (secs >= 1.0) v.fail("took " + std::to_string(secs) + " s");
  if (v.pass) v.detail << got.size() << " successes, " << got_ms.size() << " most specific, " << secs << " s";
  return v;
}

using SolutionSet = ip::oracle::OracleResult;

SolutionSet engine_set(ip::ParseSession& session, const ip::Term& cat) {
  SolutionSet out;
  session.solve_call(cat, session.whole_input(), [&](const ip::Solution& s) {
    out.insert({ip::variant_key(s.result), s.island.begin, s.island.end, s.coverage});
    return true;
  });
  return out;
}

struct DifferentialTotals {
  long grammars = 0;
  long comparisons = 0;
  long nonempty = 0;
  long chart_entries = 0;
  long invariant_violations = 0;
  long monotonicity_checks = 0;
  long monotonicity_violations = 0;
  std::string first_mismatch;
  std::string first_violation;
};

DifferentialTotals run_differential(int grammars, unsigned seed) {
  DifferentialTotals totals;
  std::mt19937 rng(seed);
  const ip::Rational thresholds[] = {ip::Rational(0), ip::Rational(1, 2), ip::Rational(1)};
  const ip::Rational ladder[] = {ip::Rational(0), ip::Rational(1, 4), ip::Rational(1, 2), ip::Rational(3, 4),
                                 ip::Rational(1)};
  for (int gi = 0; gi < grammars; ++gi) {
    it::GrammarShape shape;
    shape.local_thresholds = gi % 2 == 1;
    auto rg = it::random_grammar(rng, shape);
    auto with_heads = ip::parse_grammar(rg.text);
    auto without_heads = ip::parse_grammar(rg.text_without_heads);
    auto g_with = compiled(with_heads);
    auto g_without = compiled(without_heads);
    const ip::Term cat = ip::parse_term(rg.start);
    ++totals.grammars;
    for (const auto& tokens : it::test_inputs(with_heads, cat.name(), rng, 6, 8)) {
      for (const auto& t : thresholds) {
        const auto oracle = ip::oracle::enumerate_all(with_heads, cat, tokens, t);
        if (ip::oracle::enumerate_all(without_heads, cat, tokens, t) != oracle && totals.first_mismatch.empty())
          totals.first_mismatch = "oracle depends on head marks:\n" + rg.text;
        for (const auto& g : {g_with, g_without}) {
          ip::SessionOptions so;
          so.global_threshold = t;
          ip::ParseSession session(g, tokens, so);
          const auto got = engine_set(session, cat);
          ++totals.comparisons;
          if (!got.empty()) ++totals.nonempty;
          if (got != oracle && totals.first_mismatch.empty()) {
            std::string input;
            for (const auto& w : tokens) input += w + " ";
            totals.first_mismatch = "engine differs from oracle at t=" + ip::to_string(t) + " on '" + input + "':\n" +
                                    (g == g_with ? rg.text : rg.text_without_heads);
          }
          totals.chart_entries += static_cast<long>(session.chart().size());
          for (const auto& msg : it::chart_violations(session)) {
            ++totals.invariant_violations;
            if (totals.first_violation.empty()) totals.first_violation = msg + "\n" + rg.text;
          }
        }
      }
      if (rg.has_local_thresholds) continue;
      ip::SessionOptions so;
      so.global_threshold = ip::Rational(0);
      ip::ParseSession session(g_with, tokens, so);
      SolutionSet previous;
      for (std::size_t i = 0; i < std::size(ladder); ++i) {
        session.set_global_threshold(ladder[i]);
        const auto current = engine_set(session, cat);
        if (i > 0) {
          ++totals.monotonicity_checks;
          if (!std::includes(previous.begin(), previous.end(), current.begin(), current.end())) {
            ++totals.monotonicity_violations;
            if (totals.first_violation.empty()) totals.first_violation = "monotonicity broken:\n" + rg.text;
          }
        }
        previous = current;
      }
    }
  }
  return totals;
}

Verdict criterion4(const DifferentialTotals& d, double secs) {
  Verdict v;
  if (d.grammars < 200) v.fail("only " + std::to_string(d.grammars) + " grammars");
  if (!d.first_mismatch.empty()) v.fail(d.first_mismatch);
  if (secs >= 300) v.fail("took " + std::to_string(secs) + " s");
  if (v.pass)
    v.detail << d.grammars << " grammars, " << d.comparisons << " comparisons (" << d.nonempty
             << " non-empty), thresholds {0,1/2,1}, with and without heads, " << secs << " s";
  return v;
}

Verdict criterion5(const DifferentialTotals& d) {
  Verdict v;
  if (d.invariant_violations + d.monotonicity_violations > 0)
    v.fail(std::to_string(d.invariant_violations) + " chart and " + std::to_string(d.monotonicity_violations) +
           " monotonicity violations; first: " + d.first_violation);
  if (v.pass)
    v.detail << d.chart_entries << " chart entries checked, " << d.monotonicity_checks
             << " threshold steps checked, zero violations";
  return v;
}

Verdict criterion6() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937 rng(6);
  it::GrammarShape shape;
  shape.optionals = false;
  shape.ignore_rules = false;
  long cases = 0, accepted = 0;
  for (int gi = 0; gi < 50; ++gi) {
    auto rg = it::random_grammar(rng, shape);
    auto rules = ip::parse_grammar(rg.text);
    auto g = compiled(rules);
    const ip::Term cat = ip::parse_term(rg.start);
    for (const auto& tokens : it::test_inputs(rules, cat.name(), rng, 20, 8)) {
      ip::SessionOptions so;
      so.global_threshold = ip::Rational(1);
      ip::ParseSession session(g, tokens, so);
      const bool engine = ip::cv_phrase(session, cat);
      const bool dcg = it::dcg_accepts(rules, cat, tokens);
      ++cases;
      accepted += dcg ? 1 : 0;
      if (engine != dcg) {
        std::string input;
        for (const auto& w : tokens) input += w + " ";
        v.fail("cv_phrase=" + std::to_string(engine) + " dcg=" + std::to_string(dcg) + " on '" + input + "':\n" +
               rg.text);
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 60) v.fail("took " + std::to_string(secs) + " s");
  if (v.pass) v.detail << "50 grammars, " << cases << " inputs (" << accepted << " accepted), " << secs << " s";
  return v;
}

bool rejected_with(const std::string& text, ip::Diagnostic::Kind kind) {
  try {
    ip::compile(ip::parse_grammar(text));
  } catch (const ip::CompileError& e) {
    return std::any_of(e.diagnostics().begin(), e.diagnostics().end(),
                       [kind](const ip::Diagnostic& d) { return d.kind == kind; });
  }
  return false;
}

Verdict criterion7() {
  Verdict v;
  using K = ip::Diagnostic::Kind;
  if (!rejected_with("x ~> (? y ?), [].\ny ~> @y.\n", K::CoveringRestrictionViolation))
    v.fail("covering restriction violation accepted");
  if (!rejected_with("x ~> (? y ?), [].\n", K::CoveringRestrictionViolation))
    v.fail("covering restriction not reported without y");
  if (!rejected_with("np ~> @the.\ns ~> -np, @x.\n", K::IgnoreInvocationOfNormalRule))
    v.fail("ignore invocation of a normal rule accepted");
  if (v.pass) v.detail << "both rejected with the designated diagnostics";
  return v;
}

}  // namespace

// Optional arguments: number of differential grammars (default 200) and
// generator seed.
int main(int argc, char** argv) {
  const int grammars = argc > 1 ? std::stoi(argv[1]) : 200;
  const unsigned seed = argc > 2 ? static_cast<unsigned>(std::stoul(argv[2])) : 20261016u;
  std::vector<std::pair<std::string, Verdict>> results;
  results.emplace_back("1 deletion enumeration at threshold 0", criterion1());
  results.emplace_back("2 threshold 1 filtering", criterion2());
  results.emplace_back("3 partial results after a failed parse", criterion3());
  const auto t0 = Clock::now();
  const auto diff = run_differential(grammars, seed);
  const double secs = seconds_since(t0);
  results.emplace_back("4 oracle equivalence", criterion4(diff, secs));
  results.emplace_back("5 chart invariants and threshold monotonicity", criterion5(diff));
  results.emplace_back("6 agreement with a plain DCG at threshold 1", criterion6());
  results.emplace_back("7 compiler rejections", criterion7());
  bool all = true;
  for (const auto& [name, v] : results) {
    std::cout << "criterion " << name << ": " << (v.pass ? "PASS" : "FAIL") << " (" << v.detail.str() << ")\n";
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
