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

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "islandparse/compiler.hpp"
#include "islandparse/engine.hpp"
#include "islandparse/report.hpp"

namespace islandparse {

// Splits on runs of whitespace. Punctuation is kept.
std::vector<std::string> tokenize(std::string_view line, bool lowercase = false);

struct BatchConfig {
  std::shared_ptr<const Grammar> grammar;
  QueryRequest request;
  SessionOptions session;
  bool lowercase = false;
};

struct LineResult {
  std::size_t line = 0;  // 1-based
  QueryOutput output;
  std::vector<std::string> notes;
  std::string error;  // set when the query threw
};

LineResult run_line(const BatchConfig& config, std::size_t line_number, std::string_view text);

// Reference implementation: one line after another.
std::vector<LineResult> run_lines_serial(const BatchConfig& config, std::span<const std::string> lines);

// One session per line on an OpenMP worker pool; results keep input order.
std::vector<LineResult> run_lines_parallel(const BatchConfig& config, std::span<const std::string> lines);

}  // namespace islandparse
