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


#include "islandparse/queries.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace islandparse {

std::string solution_key(const Solution& s) {
  return variant_key(s.result) + "@" + std::to_string(s.island.begin) + "-" + std::to_string(s.island.end) + "/" +
         std::to_string(s.coverage);
}

bool ParseSet::add(const Solution& s) {
  if (!keys_.insert(solution_key(s)).second) return false;
  solutions_.push_back(s);
  return true;
}

int ParseSet::max_coverage() const {
  if (empty()) throw std::logic_error("max_coverage of an empty parse set");
  int best = solutions_.front().coverage;
  for (const auto& s : solutions_) best = std::max(best, s.coverage);
  return best;
}

int ParseSet::min_span() const {
  if (empty()) throw std::logic_error("min_span of an empty parse set");
  int best = solutions_.front().island.span();
  for (const auto& s : solutions_) best = std::min(best, s.island.span());
  return best;
}

Rational ParseSet::max_ratio() const {
  if (empty()) throw std::logic_error("max_ratio of an empty parse set");
  Rational best = solutions_.front().ratio;
  for (const auto& s : solutions_) best = std::max(best, s.ratio);
  return best;
}

ParseSet all_phrases(ParseSession& session, const Term& cat, std::size_t limit) {
  ParseSet out;
  session.solve_call(cat, session.whole_input(), [&](const Solution& s) {
    out.add(s);
    return limit == 0 || out.size() < limit;
  });
  return out;
}

bool phrase(ParseSession& session, const Term& cat) {
  bool found = false;
  session.solve_call(cat, session.whole_input(), [&](const Solution&) {
    found = true;
    return false;
  });
  return found;
}

std::vector<PhraseBounds> phrase_x(ParseSession& session, const Term& cat) {
  std::vector<PhraseBounds> out;
  const ParseSet all = all_phrases(session, cat);
  for (const auto& s : all.solutions())
    out.push_back({s.result, s.island.begin, s.island.end, s.coverage});
  return out;
}

namespace {

bool covers_all(const Solution& s, const ParseSession& session) {
  const Region whole = session.whole_input();
  return s.island.begin == whole.begin && s.island.end == whole.end &&
         s.coverage == static_cast<int>(session.token_count());
}

}  // namespace

ParseSet cv_phrases(ParseSession& session, const Term& cat) {
  ParseSet out;
  if (session.token_count() == 0) return out;
  session.solve_call(cat, session.whole_input(), [&](const Solution& s) {
    if (covers_all(s, session)) out.add(s);
    return true;
  });
  return out;
}

bool cv_phrase(ParseSession& session, const Term& cat) {
  if (session.token_count() == 0) return false;
  bool found = false;
  session.solve_call(cat, session.whole_input(), [&](const Solution& s) {
    found = covers_all(s, session);
    return !found;
  });
  return found;
}

std::optional<CoverageSet> mc_phrases(ParseSession& session, const Term& cat) {
  ParseSet all = all_phrases(session, cat);
  if (all.empty()) return std::nullopt;
  CoverageSet out{all.max_coverage(), {}};
  for (const auto& s : all.solutions())
    if (s.coverage == out.coverage) out.parses.add(s);
  return out;
}

std::optional<CoverageSet> minmax_phrases(ParseSession& session, const Term& cat) {
  auto mc = mc_phrases(session, cat);
  if (!mc) return std::nullopt;
  const int span = mc->parses.min_span();
  CoverageSet out{mc->coverage, {}};
  for (const auto& s : mc->parses.solutions())
    if (s.island.span() == span) out.parses.add(s);
  return out;
}

namespace {

bool extend(std::span<const Solution> sorted, std::vector<Solution>& chain, std::size_t from,
            const SequenceVisitor& visit) {
  for (std::size_t i = from; i < sorted.size(); ++i) {
    if (!chain.empty() && sorted[i].island.begin < chain.back().island.end) continue;
    chain.push_back(sorted[i]);
    bool go = visit(chain) && extend(sorted, chain, i + 1, visit);
    chain.pop_back();
    if (!go) return false;
  }
  return true;
}

}  // namespace

bool seq_phrase(ParseSession& session, const Term& cat, const SequenceVisitor& visit) {
  std::vector<Solution> sorted = all_phrases(session, cat).solutions();
  // Empty islands would chain with themselves indefinitely.
  std::erase_if(sorted, [](const Solution& s) { return s.island.empty(); });
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Solution& a, const Solution& b) { return a.island < b.island; });
  std::vector<Solution> chain;
  return extend(sorted, chain, 0, visit);
}

std::vector<ThresholdGroup> maxT_phrases(ParseSession& session, const Term& cat) {
  std::map<Rational, ParseSet, std::greater<>> groups;
  const ParseSet all = all_phrases(session, cat);
  for (const auto& s : all.solutions()) groups[s.ratio].add(s);
  std::vector<ThresholdGroup> out;
  for (auto& [ratio, set] : groups) out.push_back({ratio, std::move(set)});
  return out;
}

namespace {

void sort_entries(std::vector<ChartEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const ChartEntry& a, const ChartEntry& b) {
    return std::tie(a.rule_id, a.island, a.id) < std::tie(b.rule_id, b.island, b.id);
  });
}

}  // namespace

std::vector<ChartEntry> success_list(const ParseSession& session) {
  std::vector<ChartEntry> out = session.chart().entries();
  sort_entries(out);
  return out;
}

std::vector<ChartEntry> ms_success_list(const ParseSession& session) {
  std::vector<ChartEntry> out;
  for (const auto& e : session.chart().entries())
    if (e.used_by.empty()) out.push_back(e);
  sort_entries(out);
  return out;
}

std::vector<ChartEntry> ms_success_for(RuleId rule, const ParseSession& session) {
  std::vector<ChartEntry> out = ms_success_list(session);
  std::erase_if(out, [rule](const ChartEntry& e) { return e.rule_id != rule; });
  return out;
}

}  // namespace islandparse
