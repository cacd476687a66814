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


// Serial reference against the OpenMP line runner on a synthetic corpus of
// map-task style utterances.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "islandparse/batch.hpp"
#include "islandparse/compiler.hpp"
#include "islandparse/grammar_dsl.hpp"

namespace ip = islandparse;

namespace {

ip::BatchConfig make_config() {
  const std::filesystem::path path = ISLANDPARSE_GRAMMAR_DIR "/maptask.lhip";
  ip::BatchConfig config;
  config.grammar = std::make_shared<const ip::Grammar>(ip::compile(ip::load_grammar_files({&path, 1})));
  config.request.kind = ip::QueryKind::MsSuccess;
  config.request.category = ip::parse_term("s(S)");
  config.session.global_threshold = ip::Rational(0);
  return config;
}

std::vector<std::string> make_corpus(std::size_t lines, std::size_t words) {
  static const char* vocab[] = {"have", "you", "the", "tree", "by", "brook", "that", "see", "map", "uh", "big", "old"};
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(vocab) - 1);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < lines; ++i) {
    std::string line;
    for (std::size_t w = 0; w < words; ++w) line += std::string(w ? " " : "") + vocab[pick(rng)];
    out.push_back(line);
  }
  return out;
}

void BM_Serial(benchmark::State& state) {
  const auto config = make_config();
  const auto corpus = make_corpus(static_cast<std::size_t>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(ip::run_lines_serial(config, corpus));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Parallel(benchmark::State& state) {
  const auto config = make_config();
  const auto corpus = make_corpus(static_cast<std::size_t>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(ip::run_lines_parallel(config, corpus));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
