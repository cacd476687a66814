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

#include "islandparse/grammar_dsl.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace islandparse {

std::string RuleSource::signature() const { return head.name() + "/" + std::to_string(head.arity()); }

GrammarSyntaxError::GrammarSyntaxError(std::string source, int line, int column, std::string expected,
                                       std::string found)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": expected " +
                         expected + ", found " + found),
      source_(std::move(source)),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

ThresholdRangeError::ThresholdRangeError(std::string source, int line, int column, Rational value)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": threshold " +
                         to_string(value) + " outside [0,1]"),
      line_(line),
      column_(column),
      value_(value) {}

// ---------------------------------------------------------------------------
// Structural equality

bool operator==(const ClauseItem& a, const ClauseItem& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, IgnoreClassClause>) {
          return true;
        } else if constexpr (std::is_same_v<T, CallClause>) {
          return x.term == y.term && x.is_head == y.is_head;
        } else if constexpr (std::is_same_v<T, TerminalClause>) {
          return x.text == y.text && x.is_head == y.is_head;
        } else if constexpr (std::is_same_v<T, IgnoreCallClause>) {
          return x.term == y.term;
        } else {
          return x.name == y.name && x.args == y.args;
        }
      },
      a);
}

bool operator==(const BodyNode& a, const BodyNode& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, ClauseItem>) {
          return x == y;
        } else if constexpr (std::is_same_v<T, Sequence>) {
          return x.gaps == y.gaps && x.items == y.items;
        } else if constexpr (std::is_same_v<T, Disjunction>) {
          return x.alternatives == y.alternatives;
        } else {
          return *x.body == *y.body;
        }
      },
      a.node);
}

bool operator==(const RuleSource& a, const RuleSource& b) {
  return a.ignore_rule == b.ignore_rule && a.head == b.head && a.local_threshold == b.local_threshold &&
         a.threshold_var == b.threshold_var && a.body == b.body && a.var_names == b.var_names;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  Atom,    // lowercase identifier
  Var,     // uppercase or `_` identifier
  Number,  // digits, optionally `.digits`
  Quoted,  // 'text'
  Arrow,   // ~>
  OptOpen,   // (?
  OptClose,  // ?)
  LParen,
  RParen,
  Comma,
  Semi,
  Colon,
  Star,
  At,
  Minus,
  Hash,
  Slash,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  End,  // rule-terminating `.`
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Eof:
      return "end of input";
    case Tok::End:
      return "'.'";
    case Tok::Quoted:
      return quote_atom(t.text);
    default:
      return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t{Tok::Eof, "", line_, col_};
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      auto next = [&](std::size_t k = 1) { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; };
      if (std::islower(static_cast<unsigned char>(c))) {
        t.kind = Tok::Atom;
        t.text = take_ident();
      } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Var;
        t.text = take_ident();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Number;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        if (pos_ + 1 < text_.size() && text_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
          advance();
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        }
        t.text = std::string(text_.substr(start, pos_ - start));
      } else if (c == '\'') {
        t.kind = Tok::Quoted;
        t.text = take_quoted();
      } else if (c == '~' && next() == '>') {
        t = punct(Tok::Arrow, 2);
      } else if (c == '(' && next() == '?') {
        t = punct(Tok::OptOpen, 2);
      } else if (c == '?' && next() == ')') {
        t = punct(Tok::OptClose, 2);
      } else if (c == '.') {
        char n = next();
        if (n != '\0' && n != '%' && !std::isspace(static_cast<unsigned char>(n)))
          throw GrammarSyntaxError(source_, line_, col_, "whitespace after '.'", std::string("'") + n + "'");
        t = punct(Tok::End, 1);
      } else {
        static const std::map<char, Tok> single = {
            {'(', Tok::LParen}, {')', Tok::RParen},   {',', Tok::Comma},    {';', Tok::Semi},
            {':', Tok::Colon},  {'*', Tok::Star},     {'@', Tok::At},       {'-', Tok::Minus},
            {'#', Tok::Hash},   {'/', Tok::Slash},    {'[', Tok::LBracket}, {']', Tok::RBracket},
            {'{', Tok::LBrace}, {'}', Tok::RBrace}};
        auto it = single.find(c);
        if (it == single.end())
          throw GrammarSyntaxError(source_, line_, col_, "a token", std::string("'") + c + "'");
        t = punct(it->second, 1);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string take_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string take_quoted() {
    int line = line_, col = col_;
    advance();
    std::string s;
    while (pos_ < text_.size() && text_[pos_] != '\'') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
      if (text_[pos_] == '\n') throw GrammarSyntaxError(source_, line, col, "closing quote", "end of line");
      s += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size()) throw GrammarSyntaxError(source_, line, col, "closing quote", "end of input");
    advance();
    if (s.empty()) throw GrammarSyntaxError(source_, line, col, "non-empty quoted token", "''");
    return s;
  }

  Token punct(Tok k, std::size_t len) {
    Token t{k, std::string(text_.substr(pos_, len)), line_, col_};
    for (std::size_t i = 0; i < len; ++i) advance();
    return t;
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string source) : toks_(std::move(toks)), source_(std::move(source)) {}

  std::vector<RuleSource> grammar() {
    std::vector<RuleSource> rules;
    while (peek().kind != Tok::Eof) rules.push_back(rule());
    return rules;
  }

  Term single_term(std::vector<std::string>* names) {
    vars_.clear();
    names_.clear();
    Term t = term();
    if (peek().kind == Tok::End) take();
    expect(Tok::Eof, "end of term");
    if (names) *names = names_;
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw GrammarSyntaxError(source_, t.line, t.column, expected, describe(t));
  }

  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail(what);
    return take();
  }

  RuleSource rule() {
    vars_.clear();
    names_.clear();
    RuleSource r;
    r.source = source_;
    r.line = peek().line;
    if (peek().kind == Tok::Minus) {
      take();
      r.ignore_rule = true;
    }
    if (peek().kind != Tok::Atom && peek().kind != Tok::Quoted) fail("rule name");
    r.head = term();
    if (peek().kind == Tok::Hash) {
      take();
      threshold(r);
    }
    expect(Tok::Arrow, "'~>'");
    r.body = body();
    expect(Tok::End, "',', ';', ':' or '.'");
    r.var_names = names_;
    return r;
  }

  void threshold(RuleSource& r) {
    const Token& t = peek();
    if (t.kind == Tok::Var) {
      r.threshold_var = term();
      return;
    }
    if (t.kind != Tok::Number) fail("threshold value");
    Token num = take();
    std::string text = num.text;
    if (peek().kind == Tok::Slash) {
      take();
      text += "/" + expect(Tok::Number, "denominator").text;
    }
    auto value = parse_rational(text);
    if (!value) throw GrammarSyntaxError(source_, num.line, num.column, "rational threshold", "'" + text + "'");
    if (*value < 0 || *value > 1) throw ThresholdRangeError(source_, num.line, num.column, *value);
    r.local_threshold = *value;
  }

  BodyNode body() {
    BodyNode first = sequence();
    if (peek().kind != Tok::Semi) return first;
    Disjunction d;
    BodyNode out;
    out.line = first.line;
    out.column = first.column;
    auto add = [&d](BodyNode n) {
      if (auto* inner = std::get_if<Disjunction>(&n.node))
        for (auto& alt : inner->alternatives) d.alternatives.push_back(std::move(alt));
      else
        d.alternatives.push_back(std::move(n));
    };
    add(std::move(first));
    while (peek().kind == Tok::Semi) {
      take();
      add(sequence());
    }
    out.node = std::move(d);
    return out;
  }

  BodyNode sequence() {
    BodyNode first = primary();
    Connective gap;
    if (peek().kind == Tok::Comma)
      gap = Connective::Ordered;
    else if (peek().kind == Tok::Colon)
      gap = Connective::Adjacent;
    else
      return first;
    take();
    BodyNode rest = sequence();
    Sequence s;
    s.items.push_back(std::move(first));
    s.gaps.push_back(gap);
    auto* inner = std::get_if<Sequence>(&rest.node);
    bool uniform = inner != nullptr;
    if (inner)
      for (Connective g : inner->gaps) uniform = uniform && g == gap;
    if (uniform) {
      for (auto& item : inner->items) s.items.push_back(std::move(item));
      for (std::size_t i = 0; i + 1 < inner->items.size(); ++i) s.gaps.push_back(gap);
    } else {
      s.items.push_back(std::move(rest));
    }
    BodyNode out;
    out.line = s.items.front().line;
    out.column = s.items.front().column;
    out.node = std::move(s);
    return out;
  }

  BodyNode primary() {
    const Token start = peek();
    BodyNode n;
    n.line = start.line;
    n.column = start.column;
    switch (start.kind) {
      case Tok::LParen: {
        take();
        BodyNode inner = body();
        expect(Tok::RParen, "')'");
        inner.line = start.line;
        inner.column = start.column;
        return inner;
      }
      case Tok::OptOpen: {
        take();
        auto inner = std::make_shared<BodyNode>(body());
        expect(Tok::OptClose, "'?)'");
        n.node = OptionalGroup{std::move(inner)};
        return n;
      }
      case Tok::Star: {
        take();
        if (peek().kind == Tok::At) {
          take();
          n.node = ClauseItem{TerminalClause{terminal_text(), true}};
        } else {
          if (peek().kind != Tok::Atom && peek().kind != Tok::Quoted) fail("head clause");
          n.node = ClauseItem{CallClause{term(), true}};
        }
        return n;
      }
      case Tok::At:
        take();
        n.node = ClauseItem{TerminalClause{terminal_text(), false}};
        return n;
      case Tok::Minus:
        take();
        if (peek().kind != Tok::Atom && peek().kind != Tok::Quoted) fail("ignore rule name");
        n.node = ClauseItem{IgnoreCallClause{term()}};
        return n;
      case Tok::LBracket:
        take();
        expect(Tok::RBracket, "']'");
        n.node = ClauseItem{IgnoreClassClause{}};
        return n;
      case Tok::LBrace: {
        take();
        if (peek().kind != Tok::Atom && peek().kind != Tok::Quoted) fail("hook name");
        Term t = term();
        expect(Tok::RBrace, "'}'");
        HookClause h{t.name(), {t.args().begin(), t.args().end()}};
        n.node = ClauseItem{std::move(h)};
        return n;
      }
      case Tok::Atom:
      case Tok::Quoted:
        n.node = ClauseItem{CallClause{term(), false}};
        return n;
      default:
        fail("clause");
    }
  }

  std::string terminal_text() {
    const Token& t = peek();
    if (t.kind == Tok::Atom || t.kind == Tok::Var || t.kind == Tok::Quoted ||
        (t.kind == Tok::Number && t.text.find('.') == std::string::npos))
      return take().text;
    fail("terminal string");
  }

  Term term() {
    const Token t = take();
    switch (t.kind) {
      case Tok::Var: {
        VarId id;
        if (t.text == "_") {
          id = static_cast<VarId>(names_.size());
          names_.push_back("_");
        } else if (auto it = vars_.find(t.text); it != vars_.end()) {
          id = it->second;
        } else {
          id = static_cast<VarId>(names_.size());
          names_.push_back(t.text);
          vars_.emplace(t.text, id);
        }
        return Term::variable(id);
      }
      case Tok::Number: {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || p != t.text.data() + t.text.size())
          throw GrammarSyntaxError(source_, t.line, t.column, "integer", "'" + t.text + "'");
        return Term::number(v);
      }
      case Tok::Atom:
      case Tok::Quoted: {
        if (peek().kind != Tok::LParen) return Term::atom(t.text);
        take();
        std::vector<Term> args;
        args.push_back(term());
        while (peek().kind == Tok::Comma) {
          take();
          args.push_back(term());
        }
        expect(Tok::RParen, "',' or ')'");
        return Term::compound(t.text, std::move(args));
      }
      default:
        --pos_;
        fail("term");
    }
  }

  std::vector<Token> toks_;
  std::string source_;
  std::size_t pos_ = 0;
  std::map<std::string, VarId> vars_;
  std::vector<std::string> names_;
};

}  // namespace

std::vector<RuleSource> parse_grammar(std::string_view text, std::string_view source_name) {
  std::string source(source_name);
  Parser p(Lexer(text, source).run(), source);
  return p.grammar();
}

std::vector<RuleSource> load_grammar_files(std::span<const std::filesystem::path> paths) {
  std::vector<RuleSource> all;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open grammar file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    auto rules = parse_grammar(buf.str(), path.string());
    for (auto& r : rules) all.push_back(std::move(r));
  }
  return all;
}

Term parse_term(std::string_view text, std::vector<std::string>* var_names) {
  Parser p(Lexer(text, "<term>").run(), "<term>");
  return p.single_term(var_names);
}

// ---------------------------------------------------------------------------
// Pretty printer

namespace {

bool bare_terminal(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

void print_body(const BodyNode& n, std::span<const std::string> names, bool parenthesize, std::string& out);

void print_clause(const ClauseItem& c, std::span<const std::string> names, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IgnoreClassClause>) {
          out += "[]";
        } else if constexpr (std::is_same_v<T, CallClause>) {
          if (x.is_head) out += "* ";
          out += to_source(x.term, names);
        } else if constexpr (std::is_same_v<T, TerminalClause>) {
          if (x.is_head) out += "* ";
          out += "@";
          out += bare_terminal(x.text) ? x.text : quote_atom(x.text);
        } else if constexpr (std::is_same_v<T, IgnoreCallClause>) {
          out += "-" + to_source(x.term, names);
        } else {
          out += "{ ";
          std::vector<Term> args(x.args);
          out += to_source(Term::compound(x.name, std::move(args)), names);
          out += " }";
        }
      },
      c);
}

void print_body(const BodyNode& n, std::span<const std::string> names, bool parenthesize, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ClauseItem>) {
          print_clause(x, names, out);
        } else if constexpr (std::is_same_v<T, OptionalGroup>) {
          out += "(? ";
          print_body(*x.body, names, false, out);
          out += " ?)";
        } else if constexpr (std::is_same_v<T, Disjunction>) {
          if (parenthesize) out += "(";
          for (std::size_t i = 0; i < x.alternatives.size(); ++i) {
            if (i) out += " ; ";
            print_body(x.alternatives[i], names, false, out);
          }
          if (parenthesize) out += ")";
        } else {
          if (parenthesize) out += "(";
          for (std::size_t i = 0; i < x.items.size(); ++i) {
            const bool last = i + 1 == x.items.size();
            const BodyNode& item = x.items[i];
            bool wrap = std::holds_alternative<Disjunction>(item.node) ||
                        (!last && std::holds_alternative<Sequence>(item.node));
            print_body(item, names, wrap, out);
            if (!last) out += x.gaps[i] == Connective::Ordered ? ", " : " : ";
          }
          if (parenthesize) out += ")";
        }
      },
      n.node);
}

}  // namespace

std::string pretty_print(const BodyNode& body, std::span<const std::string> var_names) {
  std::string out;
  print_body(body, var_names, false, out);
  return out;
}

std::string pretty_print(const RuleSource& rule) {
  std::string out;
  if (rule.ignore_rule) out += "- ";
  out += to_source(rule.head, rule.var_names);
  if (rule.local_threshold) out += " # " + to_string(*rule.local_threshold);
  if (rule.threshold_var) out += " # " + to_source(*rule.threshold_var, rule.var_names);
  out += " ~> ";
  out += pretty_print(rule.body, rule.var_names);
  out += ".\n";
  return out;
}

std::string pretty_print(std::span<const RuleSource> rules) {
  std::string out;
  for (const auto& r : rules) out += pretty_print(r);
  return out;
}

}  // namespace islandparse
