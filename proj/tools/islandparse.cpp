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


// islandparse: run island-parser queries over one utterance per input line,
// or edit and inspect a grammar interactively with the `repl` subcommand.

#include <unistd.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "islandparse/batch.hpp"
#include "islandparse/compiler.hpp"
#include "islandparse/engine.hpp"
#include "islandparse/grammar_dsl.hpp"
#include "islandparse/queries.hpp"
#include "islandparse/report.hpp"

namespace ip = islandparse;

namespace {

constexpr int kExitNoParse = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::vector<std::string> grammars;
  std::string category = "s(S)";
  std::string threshold = "0";
  std::string query = "parse";
  std::optional<int> rule;
  bool json = false;
  std::size_t max_solutions = 0;
  int depth_limit = 128;
  bool lowercase = false;
  bool no_occurs_check = false;
  bool serial = false;
  std::string input;
};

// Loads and compiles; reports problems on stderr and returns null on error.
std::shared_ptr<const ip::Grammar> load(const std::vector<std::string>& files) {
  std::vector<std::filesystem::path> paths(files.begin(), files.end());
  try {
    auto rules = ip::load_grammar_files(paths);
    auto grammar = std::make_shared<const ip::Grammar>(ip::compile(rules));
    for (const auto& w : grammar->warnings()) std::cerr << w.to_string() << "\n";
    return grammar;
  } catch (const ip::CompileError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << d.to_string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
  }
  return nullptr;
}

std::optional<ip::Term> parse_category(const std::string& text) {
  try {
    ip::Term t = ip::parse_term(text);
    if (t.is_callable()) return t;
    std::cerr << "category " << text << " is not a rule name\n";
  } catch (const std::exception& e) {
    std::cerr << "bad category " << text << ": " << e.what() << "\n";
  }
  return std::nullopt;
}

std::optional<ip::Rational> parse_threshold(const std::string& text) {
  auto t = ip::parse_rational(text);
  if (!t || *t < 0 || *t > 1) {
    std::cerr << "threshold must be a number in [0,1], got " << text << "\n";
    return std::nullopt;
  }
  return t;
}

void print(const ip::QueryOutput& out, bool json, std::size_t line) {
  for (const auto& s : json ? ip::render_json(out, line) : ip::render_text(out)) std::cout << s << "\n";
}

int run_batch(const Options& opt) {
  auto grammar = load(opt.grammars);
  if (!grammar) return kExitUsage;
  auto category = parse_category(opt.category);
  auto threshold = parse_threshold(opt.threshold);
  auto kind = ip::parse_query_kind(opt.query);
  if (!category || !threshold || !kind) return kExitUsage;

  std::vector<std::string> lines;
  std::ifstream file;
  if (!opt.input.empty() && opt.input != "-") {
    file.open(opt.input);
    if (!file) {
      std::cerr << "cannot open " << opt.input << "\n";
      return kExitUsage;
    }
  }
  std::istream& in = file.is_open() ? static_cast<std::istream&>(file) : std::cin;
  for (std::string line; std::getline(in, line);) lines.push_back(line);

  ip::BatchConfig config;
  config.grammar = grammar;
  config.request = ip::QueryRequest{*kind, *category, opt.rule, opt.max_solutions};
  config.session.global_threshold = *threshold;
  config.session.depth_limit = opt.depth_limit;
  config.session.occurs_check = !opt.no_occurs_check;
  config.lowercase = opt.lowercase;

  auto results = opt.serial ? ip::run_lines_serial(config, lines) : ip::run_lines_parallel(config, lines);
  bool any = false;
  for (const auto& r : results) {
    for (const auto& n : r.notes) std::cerr << "line " << r.line << ": " << n << "\n";
    if (!r.error.empty()) std::cerr << "line " << r.line << ": " << r.error << "\n";
    if (!opt.json && results.size() > 1 && r.output.record_count() > 0) std::cout << "% line " << r.line << "\n";
    print(r.output, opt.json, r.line);
    any = any || r.output.record_count() > 0;
  }
  if (*kind == ip::QueryKind::Success || *kind == ip::QueryKind::MsSuccess) return 0;
  return any ? 0 : kExitNoParse;
}

// ---------------------------------------------------------------------------

class Repl {
 public:
  explicit Repl(Options opt) : opt_(std::move(opt)) {}

  int run() {
    if (!opt_.grammars.empty()) grammar_ = load(opt_.grammars);
    auto t = parse_threshold(opt_.threshold);
    if (!t) return kExitUsage;
    threshold_ = *t;
    const bool interactive = isatty(STDIN_FILENO);
    std::string line;
    while (true) {
      if (interactive) std::cout << "islandparse> " << std::flush;
      if (!std::getline(std::cin, line)) break;
      if (!command(line)) break;
    }
    return 0;
  }

 private:
  bool command(const std::string& line) {
    std::istringstream in(line);
    std::string cmd;
    if (!(in >> cmd) || cmd.front() == '%') return true;
    std::string rest;
    std::getline(in, rest);
    rest.erase(0, rest.find_first_not_of(" \t"));
    try {
      if (cmd == "quit" || cmd == "exit") return false;
      if (cmd == "help") help();
      else if (cmd == "load") load_files(ip::tokenize(rest));
      else if (cmd == "reload") load_files(opt_.grammars);
      else if (cmd == "rules") rules();
      else if (cmd == "threshold") set_threshold(rest);
      else if (cmd == "input") input(rest);
      else if (cmd == "chart") chart();
      else if (cmd == "success" || cmd == "ms-success") listing(cmd, rest);
      else if (auto kind = ip::parse_query_kind(cmd)) query(*kind, rest);
      else std::cout << "unknown command " << cmd << "; try help\n";
    } catch (const std::exception& e) {
      std::cout << "error: " << e.what() << "\n";
    }
    return true;
  }

  static void help() {
    std::cout << "load <file>...      replace the grammar\n"
                 "reload              re-read the grammar files\n"
                 "rules               list the loaded rules with their ids\n"
                 "threshold <t>       set the global threshold\n"
                 "input <words>       start a new parse of the given words\n"
                 "parse|cover|mc|minmax|seq|maxt <category>\n"
                 "success             list every success in the chart\n"
                 "ms-success [rule]   list the most specific successes\n"
                 "chart               chart listing with engine statistics\n"
                 "quit\n";
  }

  void load_files(std::vector<std::string> files) {
    if (files.empty()) {
      std::cout << "no grammar files given\n";
      return;
    }
    auto g = load(files);
    if (!g) {
      std::cout << "grammar not loaded\n";
      return;
    }
    opt_.grammars = std::move(files);
    grammar_ = std::move(g);
    std::cout << grammar_->size() << " rules loaded\n";
    if (session_) restart(session_->tokens());
  }

  void rules() const {
    if (!require_grammar()) return;
    for (const auto& r : grammar_->rules()) std::cout << r.id << "\t" << r.source << "\n";
  }

  void set_threshold(const std::string& text) {
    auto t = parse_threshold(text);
    if (!t) return;
    threshold_ = *t;
    if (session_) session_->set_global_threshold(threshold_);
  }

  void input(const std::string& text) {
    if (!require_grammar()) return;
    restart(ip::tokenize(text, opt_.lowercase));
  }

  void restart(std::vector<std::string> tokens) {
    ip::SessionOptions so;
    so.global_threshold = threshold_;
    so.depth_limit = opt_.depth_limit;
    so.occurs_check = !opt_.no_occurs_check;
    session_ = std::make_unique<ip::ParseSession>(grammar_, std::move(tokens), so);
  }

  void query(ip::QueryKind kind, const std::string& text) {
    if (!require_session()) return;
    auto cat = parse_category(text.empty() ? opt_.category : text);
    if (!cat) return;
    auto out = ip::run_query(*session_, ip::QueryRequest{kind, *cat, std::nullopt, opt_.max_solutions});
    if (out.record_count() == 0) std::cout << "no\n";
    print(out, opt_.json, 1);
  }

  void listing(const std::string& cmd, const std::string& rule) {
    if (!require_session()) return;
    std::vector<ip::ChartEntry> entries;
    if (cmd == "success")
      entries = ip::success_list(*session_);
    else if (!rule.empty())
      entries = ip::ms_success_for(std::stoi(rule), *session_);
    else
      entries = ip::ms_success_list(*session_);
    for (const auto& e : entries) std::cout << ip::render_chart_entry(e) << "\n";
  }

  void chart() const {
    if (!require_session()) return;
    for (const auto& e : ip::success_list(*session_)) std::cout << ip::render_chart_entry(e) << "\n";
    const auto& s = session_->stats();
    std::cout << "% " << session_->chart().size() << " entries, " << s.rule_body_evaluations
              << " rule evaluations, " << s.table_replays << " replays\n";
    for (const auto& n : session_->notes()) std::cout << "% " << n << "\n";
  }

  bool require_grammar() const {
    if (grammar_) return true;
    std::cout << "no grammar loaded\n";
    return false;
  }

  bool require_session() const {
    if (!require_grammar()) return false;
    if (session_) return true;
    std::cout << "no input; use: input <words>\n";
    return false;
  }

  Options opt_;
  std::shared_ptr<const ip::Grammar> grammar_;
  std::unique_ptr<ip::ParseSession> session_;
  ip::Rational threshold_{0};
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Island parser for robust partial analysis of transcribed speech"};
  app.fallthrough();
  Options opt;
  app.add_option("--grammar,-g", opt.grammars, "Grammar file (repeatable; rules are numbered in load order)");
  app.add_option("--category,-c", opt.category, "Category to parse, e.g. 's(S)'")->capture_default_str();
  app.add_option("--threshold,-t", opt.threshold, "Global threshold in [0,1], e.g. 1/2")->capture_default_str();
  app.add_option("--query,-q", opt.query, "parse|cover|mc|minmax|seq|maxt|success|ms-success")
      ->capture_default_str()
      ->check(CLI::IsMember({"parse", "cover", "mc", "minmax", "seq", "maxt", "success", "ms-success"}));
  app.add_option("--rule", opt.rule, "Restrict ms-success to one rule id");
  app.add_flag("--json", opt.json, "One JSON record per line");
  app.add_option("--max-solutions", opt.max_solutions, "Cap on reported solutions per line")
      ->check(CLI::PositiveNumber);
  app.add_option("--depth-limit", opt.depth_limit, "Maximum call nesting")->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_flag("--lowercase", opt.lowercase, "Lowercase input tokens");
  app.add_flag("--no-occurs-check", opt.no_occurs_check, "Unify without the occurs check");
  app.add_flag("--serial", opt.serial, "Process lines one at a time");
  app.add_option("input", opt.input, "Input file, one utterance per line (default: stdin)");
  auto* repl = app.add_subcommand("repl", "Interactive grammar development loop");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (repl->parsed()) return Repl(opt).run();
  if (opt.grammars.empty()) {
    std::cerr << "at least one --grammar is required\n";
    return kExitUsage;
  }
  return run_batch(opt);
}
