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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "islandparse/engine.hpp"

namespace islandparse {

// Solutions in enumeration order, merged on (term variant, island, coverage).
class ParseSet {
 public:
  // False if an identical solution is already present.
  bool add(const Solution& s);

  const std::vector<Solution>& solutions() const { return solutions_; }
  std::size_t size() const { return solutions_.size(); }
  bool empty() const { return solutions_.empty(); }

  // Aggregates; all throw std::logic_error on an empty set.
  int max_coverage() const;
  int min_span() const;
  Rational max_ratio() const;

 private:
  std::vector<Solution> solutions_;
  std::unordered_set<std::string> keys_;
};

std::string solution_key(const Solution& s);

// Every solution of `cat` over the whole input. `limit` caps the number of
// distinct solutions kept; 0 means no cap.
ParseSet all_phrases(ParseSession& session, const Term& cat, std::size_t limit = 0);

bool phrase(ParseSession& session, const Term& cat);

struct PhraseBounds {
  Term result;
  Position begin;
  Position end;
  int coverage;
};
std::vector<PhraseBounds> phrase_x(ParseSession& session, const Term& cat);

// Solutions spanning the whole input with every token covered.
ParseSet cv_phrases(ParseSession& session, const Term& cat);
bool cv_phrase(ParseSession& session, const Term& cat);

struct CoverageSet {
  int coverage;
  ParseSet parses;
};
std::optional<CoverageSet> mc_phrases(ParseSession& session, const Term& cat);
// Maximal coverage, then least span.
std::optional<CoverageSet> minmax_phrases(ParseSession& session, const Term& cat);

// Receives each sequence; returns false to stop.
using SequenceVisitor = std::function<bool(std::span<const Solution>)>;
// Chains of solutions where each island ends at or before the next begins,
// leftmost first. Every chain is reported, starting with the singletons it
// extends. Returns false iff the visitor stopped.
bool seq_phrase(ParseSession& session, const Term& cat, const SequenceVisitor& visit);

struct ThresholdGroup {
  Rational ratio;
  ParseSet parses;
};
// Groups by coverage ratio, highest first.
std::vector<ThresholdGroup> maxT_phrases(ParseSession& session, const Term& cat);

// Chart successes ordered by rule id, island start, island end, chart id.
std::vector<ChartEntry> success_list(const ParseSession& session);
// Successes not used as a sub-result of any other success.
std::vector<ChartEntry> ms_success_list(const ParseSession& session);
std::vector<ChartEntry> ms_success_for(RuleId rule, const ParseSession& session);

}  // namespace islandparse
