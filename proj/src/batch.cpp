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


#include "islandparse/batch.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <sstream>

namespace islandparse {

std::vector<std::string> tokenize(std::string_view line, bool lowercase) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string word;
  while (in >> word) {
    if (lowercase)
      std::transform(word.begin(), word.end(), word.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    out.push_back(std::move(word));
  }
  return out;
}

LineResult run_line(const BatchConfig& config, std::size_t line_number, std::string_view text) {
  LineResult r;
  r.line = line_number;
  r.output.kind = config.request.kind;
  try {
    auto tokens = tokenize(text, config.lowercase);
    if (tokens.empty()) return r;
    ParseSession session(config.grammar, std::move(tokens), config.session);
    r.output = run_query(session, config.request);
    r.notes = session.notes();
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<LineResult> run_lines_serial(const BatchConfig& config, std::span<const std::string> lines) {
  std::vector<LineResult> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) out.push_back(run_line(config, i + 1, lines[i]));
  return out;
}

std::vector<LineResult> run_lines_parallel(const BatchConfig& config, std::span<const std::string> lines) {
  std::vector<LineResult> out(lines.size());
  const auto n = static_cast<long>(lines.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = run_line(config, k + 1, lines[k]);
  }
  return out;
}

}  // namespace islandparse
