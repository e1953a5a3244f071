#pragma once

#include <charconv>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "credal/corpus.hpp"
#include "credal/credal_set.hpp"
#include "credal/decide.hpp"
#include "credal/errors.hpp"
#include "credal/interval.hpp"
#include "credal/logic.hpp"

namespace credal {

struct Diagnostic {
  enum class Severity { error, warning };

  int line = 1;
  int column = 1;
  Severity severity = Severity::error;
  std::string message;

  std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " +
           (severity == Severity::error ? "error: " : "warning: ") + message;
  }
};

/// Either a parsed value plus any warnings, or error diagnostics and no
/// value.  Every failure carries at least one positioned error.
template <typename T>
struct ParseResult {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

namespace kbdetail {

struct Token {
  enum class Kind {
    ident,
    number,
    lparen,
    rparen,
    lbracket,
    rbracket,
    lbrace,
    rbrace,
    comma,
    tilde,
    amp,
    pipe,
    arrow,
    star,
    slash,
    plus,
    minus,
    le_op,
    end
  };

  Kind kind = Kind::end;
  std::string text;
  double number = 0.0;
  bool is_integer = false;
  int line = 1;
  int column = 1;
};

inline bool lex_line(std::string_view text, int line_no, std::vector<Token>& out,
                     std::vector<Diagnostic>& diags) {
  std::size_t i = 0;
  auto make = [&](Token::Kind k, std::size_t start, std::size_t len) {
    Token t;
    t.kind = k;
    t.text = std::string(text.substr(start, len));
    t.line = line_no;
    t.column = static_cast<int>(start) + 1;
    out.push_back(std::move(t));
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;  // comment to end of line
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      make(Token::Kind::ident, i, j - i);
      i = j;
      continue;
    }
    if ((c >= '0' && c <= '9') || (c == '.' && i + 1 < text.size() &&
                                   text[i + 1] >= '0' && text[i + 1] <= '9')) {
      std::size_t j = i;
      bool dot = false;
      while (j < text.size() &&
             ((text[j] >= '0' && text[j] <= '9') || (text[j] == '.' && !dot))) {
        if (text[j] == '.') dot = true;
        ++j;
      }
      make(Token::Kind::number, i, j - i);
      Token& t = out.back();
      t.is_integer = !dot;
      t.number = std::strtod(t.text.c_str(), nullptr);
      i = j;
      continue;
    }
    switch (c) {
      case '(': make(Token::Kind::lparen, i, 1); ++i; continue;
      case ')': make(Token::Kind::rparen, i, 1); ++i; continue;
      case '[': make(Token::Kind::lbracket, i, 1); ++i; continue;
      case ']': make(Token::Kind::rbracket, i, 1); ++i; continue;
      case '{': make(Token::Kind::lbrace, i, 1); ++i; continue;
      case '}': make(Token::Kind::rbrace, i, 1); ++i; continue;
      case ',': make(Token::Kind::comma, i, 1); ++i; continue;
      case '~': make(Token::Kind::tilde, i, 1); ++i; continue;
      case '&': make(Token::Kind::amp, i, 1); ++i; continue;
      case '|': make(Token::Kind::pipe, i, 1); ++i; continue;
      case '*': make(Token::Kind::star, i, 1); ++i; continue;
      case '/': make(Token::Kind::slash, i, 1); ++i; continue;
      case '+': make(Token::Kind::plus, i, 1); ++i; continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          make(Token::Kind::arrow, i, 2);
          i += 2;
        } else {
          make(Token::Kind::minus, i, 1);
          ++i;
        }
        continue;
      case '<':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          make(Token::Kind::le_op, i, 2);
          i += 2;
          continue;
        }
        [[fallthrough]];
      default:
        diags.push_back({line_no, static_cast<int>(i) + 1, Diagnostic::Severity::error,
                         std::string("unexpected character '") + c + "'"});
        return false;
    }
  }
  Token t;
  t.kind = Token::Kind::end;
  t.line = line_no;
  t.column = static_cast<int>(text.size()) + 1;
  out.push_back(std::move(t));
  return true;
}

class TokenStream {
 public:
  explicit TokenStream(const std::vector<Token>& tokens) : tokens_(&tokens) {}

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_->size() ? (*tokens_)[i] : tokens_->back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_->size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::end; }

 private:
  const std::vector<Token>* tokens_;
  std::size_t pos_ = 0;
};

inline void error_at(std::vector<Diagnostic>& diags, const Token& t, std::string message) {
  diags.push_back({t.line, t.column, Diagnostic::Severity::error, std::move(message)});
}

inline std::optional<std::string> expect_ident(TokenStream& ts, std::vector<Diagnostic>& diags,
                                               const char* what) {
  const Token& t = ts.peek();
  if (t.kind != Token::Kind::ident) {
    error_at(diags, t, std::string("expected ") + what);
    return std::nullopt;
  }
  ts.next();
  return t.text;
}

inline bool expect_kind(TokenStream& ts, std::vector<Diagnostic>& diags, Token::Kind kind,
                        const char* what) {
  const Token& t = ts.peek();
  if (t.kind != kind) {
    error_at(diags, t, std::string("expected ") + what);
    return false;
  }
  ts.next();
  return true;
}

inline bool expect_keyword(TokenStream& ts, std::vector<Diagnostic>& diags, const char* word) {
  const Token& t = ts.peek();
  if (t.kind != Token::Kind::ident || t.text != word) {
    error_at(diags, t, std::string("expected '") + word + "'");
    return false;
  }
  ts.next();
  return true;
}

/// Decimal or fraction a/b, optionally signed.
inline std::optional<double> parse_number(TokenStream& ts, std::vector<Diagnostic>& diags,
                                          bool allow_sign) {
  double sign = 1.0;
  if (allow_sign &&
      (ts.peek().kind == Token::Kind::minus || ts.peek().kind == Token::Kind::plus)) {
    if (ts.next().kind == Token::Kind::minus) sign = -1.0;
  }
  const Token& t = ts.peek();
  if (t.kind != Token::Kind::number) {
    error_at(diags, t, "expected number");
    return std::nullopt;
  }
  ts.next();
  double value = t.number;
  if (t.is_integer && ts.peek().kind == Token::Kind::slash) {
    ts.next();
    const Token& den = ts.peek();
    if (den.kind != Token::Kind::number || !den.is_integer) {
      error_at(diags, den, "fraction parts must be integers");
      return std::nullopt;
    }
    ts.next();
    if (den.number == 0.0) {
      error_at(diags, den, "fraction denominator must be nonzero");
      return std::nullopt;
    }
    value /= den.number;
  }
  return sign * value;
}

/// `[ prob , prob ]`; range errors are reported at the opening bracket.
inline std::optional<Interval> parse_interval(TokenStream& ts, std::vector<Diagnostic>& diags) {
  const Token open = ts.peek();
  if (!expect_kind(ts, diags, Token::Kind::lbracket, "'['")) return std::nullopt;
  auto lo = parse_number(ts, diags, false);
  if (!lo) return std::nullopt;
  if (!expect_kind(ts, diags, Token::Kind::comma, "','")) return std::nullopt;
  auto hi = parse_number(ts, diags, false);
  if (!hi) return std::nullopt;
  if (!expect_kind(ts, diags, Token::Kind::rbracket, "']'")) return std::nullopt;
  try {
    return Interval(*lo, *hi);
  } catch (const InvalidInputError&) {
    error_at(diags, open, "interval out of range");
    return std::nullopt;
  }
}

/// Recursive descent over the sentence grammar.  Precedence ~ > & > | > ->,
/// with -> right-associative and & | left-associative.
class SentenceParser {
 public:
  SentenceParser(TokenStream& ts, std::vector<Diagnostic>& diags) : ts_(ts), diags_(diags) {}

  std::optional<logic::Sentence> parse() { return implication(); }

 private:
  std::optional<logic::Sentence> implication() {
    auto lhs = disjunction();
    if (!lhs) return std::nullopt;
    if (ts_.peek().kind == Token::Kind::arrow) {
      ts_.next();
      auto rhs = implication();
      if (!rhs) return std::nullopt;
      return logic::implication(std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<logic::Sentence> disjunction() {
    auto lhs = conjunction();
    if (!lhs) return std::nullopt;
    while (ts_.peek().kind == Token::Kind::pipe) {
      ts_.next();
      auto rhs = conjunction();
      if (!rhs) return std::nullopt;
      lhs = logic::disjunction(std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<logic::Sentence> conjunction() {
    auto lhs = unary();
    if (!lhs) return std::nullopt;
    while (ts_.peek().kind == Token::Kind::amp) {
      ts_.next();
      auto rhs = unary();
      if (!rhs) return std::nullopt;
      lhs = logic::conjunction(std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<logic::Sentence> unary() {
    if (ts_.peek().kind == Token::Kind::tilde) {
      ts_.next();
      auto rhs = unary();
      if (!rhs) return std::nullopt;
      return logic::negation(std::move(*rhs));
    }
    return primary();
  }

  std::optional<logic::Sentence> primary() {
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::lparen) {
      ts_.next();
      auto inner = implication();
      if (!inner) return std::nullopt;
      if (!expect_kind(ts_, diags_, Token::Kind::rparen, "')'")) return std::nullopt;
      return inner;
    }
    if (t.kind == Token::Kind::ident) {
      ts_.next();
      if (!expect_kind(ts_, diags_, Token::Kind::lparen, "'(' after attribute")) {
        return std::nullopt;
      }
      auto individual = expect_ident(ts_, diags_, "individual name");
      if (!individual) return std::nullopt;
      if (!expect_kind(ts_, diags_, Token::Kind::rparen, "')'")) return std::nullopt;
      return logic::atom(t.text, *individual);
    }
    error_at(diags_, t, "expected sentence");
    return std::nullopt;
  }

  TokenStream& ts_;
  std::vector<Diagnostic>& diags_;
};

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      lines.emplace_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return lines;
}

/// Shortest decimal text that reads back to the same double.
inline std::string number_text(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace kbdetail

/// Parses one sentence; trailing input is an error.  Diagnostics use
/// 1-based positions within the query text.
inline ParseResult<logic::Sentence> parse_query(std::string_view text) {
  ParseResult<logic::Sentence> result;
  std::vector<kbdetail::Token> tokens;
  const auto lines = kbdetail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<kbdetail::Token> line_tokens;
    if (!kbdetail::lex_line(lines[i], static_cast<int>(i) + 1, line_tokens,
                            result.diagnostics)) {
      return result;
    }
    if (i + 1 < lines.size()) line_tokens.pop_back();  // keep a single end token
    tokens.insert(tokens.end(), line_tokens.begin(), line_tokens.end());
  }

  kbdetail::TokenStream ts(tokens);
  kbdetail::SentenceParser parser(ts, result.diagnostics);
  auto sentence = parser.parse();
  if (!sentence) return result;
  if (!ts.at_end()) {
    kbdetail::error_at(result.diagnostics, ts.peek(), "unexpected input after sentence");
    return result;
  }
  result.value = std::move(*sentence);
  return result;
}

/// Parses the knowledge-base format:
///
///   stakes 9
///   class Bird
///   subset Ostrich Bird
///   member tweety Bird
///   stat Fly | Bird in [0.95, 1]
///   sentence Fly(tweety) -> Feathered(tweety)
///   independent t1 t2
///   evidence member tweety Ostrich error 0.001
///
/// `#` starts a comment; probabilities accept decimals and fractions.
/// Evidence lines are gated against the evidential level e at parse time: a
/// rejected report becomes a warning, an accepted one joins the corpus like
/// a plain declaration (the corpus does not retain error rates).
inline ParseResult<EvidentialCorpus> parse_kb(std::string_view text) {
  using kbdetail::Token;
  ParseResult<EvidentialCorpus> result;
  auto& diags = result.diagnostics;

  const auto lines = kbdetail::split_lines(text);
  std::vector<std::vector<Token>> tokenized(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!kbdetail::lex_line(lines[i], static_cast<int>(i) + 1, tokenized[i], diags)) {
      tokenized[i].clear();
    }
  }

  // The stakes declaration is located first so evidence gates can be applied
  // in a single sweep regardless of where `stakes` appears in the file.
  std::optional<Thresholds> thresholds;
  bool stakes_seen = false;
  for (const auto& toks : tokenized) {
    if (toks.empty()) continue;
    kbdetail::TokenStream ts(toks);
    if (ts.peek().kind != Token::Kind::ident || ts.peek().text != "stakes") continue;
    const Token keyword = ts.next();
    if (stakes_seen) {
      kbdetail::error_at(diags, keyword, "duplicate stakes declaration");
      continue;
    }
    stakes_seen = true;
    auto ratio = kbdetail::parse_number(ts, diags, false);
    if (!ratio) continue;
    if (!ts.at_end()) {
      kbdetail::error_at(diags, ts.peek(), "unexpected input after stakes");
      continue;
    }
    try {
      thresholds = Thresholds(*ratio);
    } catch (const DomainError&) {
      kbdetail::error_at(diags, keyword, "stakes ratio must exceed 1");
    }
  }
  if (!stakes_seen) {
    diags.push_back({1, 1, Diagnostic::Severity::error, "missing stakes declaration"});
  }

  std::vector<std::pair<logic::Sentence, int>> sentences;
  std::vector<std::pair<TaxonomyFact, int>> taxonomy;
  std::vector<Membership> memberships;
  std::vector<std::pair<StatStatement, int>> stats;
  IndependenceSet independents;

  // Inner statement of a plain line or of an `evidence ... error p` wrapper.
  auto parse_statement = [&](kbdetail::TokenStream& ts,
                             const Token& keyword) -> std::optional<CorpusStatement> {
    if (keyword.text == "subset") {
      auto sub = kbdetail::expect_ident(ts, diags, "subclass name");
      auto super = sub ? kbdetail::expect_ident(ts, diags, "superclass name") : std::nullopt;
      if (!sub || !super) return std::nullopt;
      if (*sub == *super) {
        kbdetail::error_at(diags, keyword, "subset fact may not be reflexive");
        return std::nullopt;
      }
      return CorpusStatement(TaxonomyFact(*sub, *super));
    }
    if (keyword.text == "member") {
      auto ind = kbdetail::expect_ident(ts, diags, "individual name");
      auto cls = ind ? kbdetail::expect_ident(ts, diags, "class name") : std::nullopt;
      if (!ind || !cls) return std::nullopt;
      return CorpusStatement(Membership(*ind, *cls));
    }
    if (keyword.text == "stat") {
      auto attr = kbdetail::expect_ident(ts, diags, "attribute name");
      if (!attr) return std::nullopt;
      if (!kbdetail::expect_kind(ts, diags, Token::Kind::pipe, "'|'")) return std::nullopt;
      auto cls = kbdetail::expect_ident(ts, diags, "class name");
      if (!cls) return std::nullopt;
      if (!kbdetail::expect_keyword(ts, diags, "in")) return std::nullopt;
      auto interval = kbdetail::parse_interval(ts, diags);
      if (!interval) return std::nullopt;
      return CorpusStatement(StatStatement(*attr, *cls, *interval));
    }
    if (keyword.text == "sentence") {
      kbdetail::SentenceParser parser(ts, diags);
      auto s = parser.parse();
      if (!s) return std::nullopt;
      return CorpusStatement(std::move(*s));
    }
    kbdetail::error_at(diags, keyword, "unknown declaration '" + keyword.text + "'");
    return std::nullopt;
  };

  auto record = [&](CorpusStatement&& st, int line) {
    std::visit(
        [&](auto&& item) {
          using T = std::decay_t<decltype(item)>;
          if constexpr (std::is_same_v<T, logic::Sentence>) {
            sentences.emplace_back(std::move(item), line);
          } else if constexpr (std::is_same_v<T, TaxonomyFact>) {
            taxonomy.emplace_back(std::move(item), line);
          } else if constexpr (std::is_same_v<T, Membership>) {
            memberships.push_back(std::move(item));
          } else {
            stats.emplace_back(std::move(item), line);
          }
        },
        std::move(st));
  };

  for (const auto& toks : tokenized) {
    if (toks.empty()) continue;
    kbdetail::TokenStream ts(toks);
    if (ts.at_end()) continue;  // blank or comment-only line
    const Token& head = ts.peek();
    if (head.kind != Token::Kind::ident) {
      kbdetail::error_at(diags, head, "expected declaration keyword");
      continue;
    }
    const Token keyword = ts.next();
    if (keyword.text == "stakes") continue;  // handled above
    if (keyword.text == "class") {
      kbdetail::expect_ident(ts, diags, "class name");
    } else if (keyword.text == "independent") {
      auto a = kbdetail::expect_ident(ts, diags, "individual name");
      auto b = a ? kbdetail::expect_ident(ts, diags, "individual name") : std::nullopt;
      if (!a || !b) continue;
      if (*a == *b) {
        kbdetail::error_at(diags, keyword, "independence must relate distinct individuals");
        continue;
      }
      independents.insert(ordered_pair(*a, *b));
    } else if (keyword.text == "evidence") {
      const Token& inner_head = ts.peek();
      if (inner_head.kind != Token::Kind::ident || inner_head.text == "evidence" ||
          inner_head.text == "stakes" || inner_head.text == "independent" ||
          inner_head.text == "class") {
        kbdetail::error_at(diags, inner_head, "expected evidence statement");
        continue;
      }
      const Token inner_keyword = ts.next();
      auto statement = parse_statement(ts, inner_keyword);
      if (!statement) continue;
      if (!kbdetail::expect_keyword(ts, diags, "error")) continue;
      auto rate = kbdetail::parse_number(ts, diags, false);
      if (!rate) continue;
      if (*rate < 0.0 || *rate > 1.0) {
        kbdetail::error_at(diags, keyword, "error rate must lie in [0,1]");
        continue;
      }
      if (!ts.at_end()) {
        kbdetail::error_at(diags, ts.peek(), "unexpected trailing input");
        continue;
      }
      if (!thresholds) continue;  // stakes missing; already an error
      if (1.0 - *rate < thresholds->e()) {
        diags.push_back({keyword.line, keyword.column, Diagnostic::Severity::warning,
                         "evidence rejected: veridicality " + kbdetail::number_text(1.0 - *rate) +
                             " falls short of the evidential level"});
        continue;
      }
      record(std::move(*statement), keyword.line);
      continue;
    } else {
      auto statement = parse_statement(ts, keyword);
      if (!statement) continue;
      record(std::move(*statement), keyword.line);
    }
    if (!ts.at_end()) {
      kbdetail::error_at(diags, ts.peek(), "unexpected trailing input");
    }
  }

  // Conflicting statistics get positioned diagnostics here; the corpus
  // constructor would reject them anyway, but without a line.
  {
    std::map<std::pair<std::string, std::string>, Interval> seen;
    for (const auto& [st, line] : stats) {
      auto key = std::make_pair(st.attribute(), st.refclass());
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, st.freq());
      } else if (!(it->second == st.freq())) {
        diags.push_back({line, 1, Diagnostic::Severity::error,
                         "conflicting statistic for " + st.attribute() + " | " + st.refclass()});
      }
    }
  }
  // Same for taxonomy cycles: replaying the facts one at a time attributes
  // the cycle to the fact that closes it.
  {
    std::vector<TaxonomyFact> prefix;
    for (const auto& [fact, line] : taxonomy) {
      prefix.push_back(fact);
      try {
        TaxonomyClosure closure(prefix);
      } catch (const TaxonomyCycleError&) {
        diags.push_back({line, 1, Diagnostic::Severity::error,
                         "subset facts form a cycle"});
        break;
      }
    }
  }

  bool failed = !thresholds;
  for (const Diagnostic& d : diags) {
    if (d.severity == Diagnostic::Severity::error) failed = true;
  }
  if (failed) return result;

  auto unwrap_sentences = [&]() {
    std::vector<logic::Sentence> out;
    for (const auto& [s, line] : sentences) out.push_back(s);
    return out;
  };
  auto unwrap_taxonomy = [&]() {
    std::vector<TaxonomyFact> out;
    for (const auto& [f, line] : taxonomy) out.push_back(f);
    return out;
  };

  try {
    result.value = EvidentialCorpus(*thresholds, unwrap_sentences(), unwrap_taxonomy(),
                                    memberships, [&] {
                                      std::vector<StatStatement> out;
                                      for (const auto& [st, line] : stats) out.push_back(st);
                                      return out;
                                    }(),
                                    independents);
  } catch (const ConsistencyError&) {
    // Replay sentences to attribute the inconsistency to a line.
    int culprit_line = 1;
    std::vector<logic::Sentence> prefix;
    for (const auto& [s, line] : sentences) {
      prefix.push_back(s);
      try {
        EvidentialCorpus(*thresholds, prefix, unwrap_taxonomy(), memberships, {}, {});
      } catch (const ConsistencyError&) {
        culprit_line = line;
        break;
      }
    }
    diags.push_back({culprit_line, 1, Diagnostic::Severity::error,
                     "sentence makes the evidential corpus inconsistent"});
  } catch (const Error& e) {
    diags.push_back({1, 1, Diagnostic::Severity::error, e.what()});
  }
  return result;
}

/// Canonical text for a corpus; parse_kb reads it back to an equal corpus.
inline std::string to_kb_text(const EvidentialCorpus& kb) {
  std::string out = "stakes " + kbdetail::number_text(kb.thresholds().stake_ratio()) + "\n";
  for (const TaxonomyFact& f : kb.taxonomy_facts()) {
    out += "subset " + f.sub() + " " + f.super() + "\n";
  }
  for (const Membership& m : kb.memberships()) {
    out += "member " + m.individual() + " " + m.refclass() + "\n";
  }
  for (const StatStatement& st : kb.stats()) {
    out += "stat " + st.attribute() + " | " + st.refclass() + " in [" +
           kbdetail::number_text(st.freq().lower()) + ", " +
           kbdetail::number_text(st.freq().upper()) + "]\n";
  }
  for (const IndividualPair& p : kb.independents()) {
    out += "independent " + p.first + " " + p.second + "\n";
  }
  for (const logic::Sentence& s : kb.sentences()) {
    out += "sentence " + logic::to_text(s) + "\n";
  }
  return out;
}

/// Parses the decision-problem format:
///
///   states s1 s2
///   act a1 utilities 10 0
///   belief P(s1) in [0.3, 0.7]
///   belief 1*s1 - 1*s2 <= 0.5
///
/// Utilities may be negative; coefficients in linear belief constraints may
/// be omitted (`s1 - s2 <= 0.5`).
inline ParseResult<DecisionProblem> parse_decision(std::string_view text) {
  using kbdetail::Token;
  ParseResult<DecisionProblem> result;
  auto& diags = result.diagnostics;

  const auto lines = kbdetail::split_lines(text);
  std::vector<std::vector<Token>> tokenized(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!kbdetail::lex_line(lines[i], static_cast<int>(i) + 1, tokenized[i], diags)) {
      tokenized[i].clear();
    }
  }

  std::optional<std::vector<std::string>> states;
  struct RawAct {
    std::string name;
    std::vector<double> utilities;
    Token keyword;
  };
  std::vector<RawAct> acts;
  std::vector<const std::vector<Token>*> belief_lines;

  for (const auto& toks : tokenized) {
    if (toks.empty()) continue;
    kbdetail::TokenStream ts(toks);
    if (ts.at_end()) continue;
    const Token& head = ts.peek();
    if (head.kind != Token::Kind::ident) {
      kbdetail::error_at(diags, head, "expected declaration keyword");
      continue;
    }
    const Token keyword = ts.next();
    if (keyword.text == "states") {
      if (states) {
        kbdetail::error_at(diags, keyword, "duplicate states declaration");
        continue;
      }
      std::vector<std::string> labels;
      while (ts.peek().kind == Token::Kind::ident) labels.push_back(ts.next().text);
      if (labels.empty()) {
        kbdetail::error_at(diags, keyword, "states line needs at least one state");
        continue;
      }
      if (!ts.at_end()) {
        kbdetail::error_at(diags, ts.peek(), "unexpected trailing input");
        continue;
      }
      states = std::move(labels);
    } else if (keyword.text == "act") {
      auto name = kbdetail::expect_ident(ts, diags, "act name");
      if (!name) continue;
      if (!kbdetail::expect_keyword(ts, diags, "utilities")) continue;
      std::vector<double> utilities;
      bool bad = false;
      while (!ts.at_end()) {
        auto u = kbdetail::parse_number(ts, diags, true);
        if (!u) {
          bad = true;
          break;
        }
        utilities.push_back(*u);
      }
      if (bad) continue;
      if (utilities.empty()) {
        kbdetail::error_at(diags, keyword, "act needs at least one utility");
        continue;
      }
      acts.push_back({*name, std::move(utilities), keyword});
    } else if (keyword.text == "belief") {
      belief_lines.push_back(&toks);
    } else {
      kbdetail::error_at(diags, keyword, "unknown declaration '" + keyword.text + "'");
    }
  }

  if (!states) {
    diags.push_back({1, 1, Diagnostic::Severity::error, "missing states declaration"});
  }
  if (acts.empty()) {
    diags.push_back({1, 1, Diagnostic::Severity::error, "no acts declared"});
  }
  if (states) {
    for (const RawAct& a : acts) {
      if (a.utilities.size() != states->size()) {
        kbdetail::error_at(diags, a.keyword,
                           "act " + a.name + " needs " + std::to_string(states->size()) +
                               " utilities, got " + std::to_string(a.utilities.size()));
      }
    }
  }

  std::optional<OutcomeSpace> space;
  std::vector<lp::Constraint> constraints;
  int last_belief_line = 1;
  if (states) {
    try {
      space = OutcomeSpace(*states);
    } catch (const InvalidInputError& e) {
      diags.push_back({1, 1, Diagnostic::Severity::error, e.what()});
    }
  }
  if (space) {
    for (const std::vector<Token>* toks : belief_lines) {
      kbdetail::TokenStream ts(*toks);
      const Token keyword = ts.next();  // `belief`
      last_belief_line = keyword.line;
      if (ts.peek().kind == Token::Kind::ident && ts.peek().text == "P" &&
          ts.peek(1).kind == Token::Kind::lparen) {
        ts.next();
        ts.next();
        auto state = kbdetail::expect_ident(ts, diags, "state name");
        if (!state) continue;
        if (!space->contains(*state)) {
          kbdetail::error_at(diags, keyword, "unknown state: " + *state);
          continue;
        }
        if (!kbdetail::expect_kind(ts, diags, Token::Kind::rparen, "')'")) continue;
        if (!kbdetail::expect_keyword(ts, diags, "in")) continue;
        auto interval = kbdetail::parse_interval(ts, diags);
        if (!interval) continue;
        if (!ts.at_end()) {
          kbdetail::error_at(diags, ts.peek(), "unexpected trailing input");
          continue;
        }
        std::vector<double> ind(space->size(), 0.0);
        ind[space->index_of(*state)] = 1.0;
        constraints.push_back(lp::make_ge(ind, interval->lower()));
        constraints.push_back(lp::make_le(std::move(ind), interval->upper()));
      } else {
        // linear form: [c*]STATE ((+|-) [c*]STATE)* <= NUMBER
        std::vector<double> row(space->size(), 0.0);
        bool bad = false;
        double sign = 1.0;
        if (ts.peek().kind == Token::Kind::minus) {
          ts.next();
          sign = -1.0;
        }
        while (true) {
          double coeff = sign;
          if (ts.peek().kind == Token::Kind::number) {
            auto c = kbdetail::parse_number(ts, diags, false);
            if (!c) {
              bad = true;
              break;
            }
            coeff = sign * *c;
            if (!kbdetail::expect_kind(ts, diags, Token::Kind::star, "'*'")) {
              bad = true;
              break;
            }
          }
          auto state = kbdetail::expect_ident(ts, diags, "state name");
          if (!state) {
            bad = true;
            break;
          }
          if (!space->contains(*state)) {
            kbdetail::error_at(diags, keyword, "unknown state: " + *state);
            bad = true;
            break;
          }
          row[space->index_of(*state)] += coeff;
          if (ts.peek().kind == Token::Kind::plus) {
            ts.next();
            sign = 1.0;
            continue;
          }
          if (ts.peek().kind == Token::Kind::minus) {
            ts.next();
            sign = -1.0;
            continue;
          }
          break;
        }
        if (bad) continue;
        if (!kbdetail::expect_kind(ts, diags, Token::Kind::le_op, "'<='")) continue;
        auto rhs = kbdetail::parse_number(ts, diags, true);
        if (!rhs) continue;
        if (!ts.at_end()) {
          kbdetail::error_at(diags, ts.peek(), "unexpected trailing input");
          continue;
        }
        constraints.push_back(lp::make_le(std::move(row), *rhs));
      }
    }
  }

  for (const Diagnostic& d : diags) {
    if (d.severity == Diagnostic::Severity::error) return result;
  }

  try {
    CredalSet beliefs(*space, std::move(constraints));
    std::vector<std::string> act_names;
    std::vector<std::vector<double>> utility;
    for (RawAct& a : acts) {
      act_names.push_back(a.name);
      utility.push_back(std::move(a.utilities));
    }
    result.value = DecisionProblem(std::move(act_names), std::move(utility), std::move(beliefs));
  } catch (const EmptyCredalSetError&) {
    diags.push_back(
        {last_belief_line, 1, Diagnostic::Severity::error, "infeasible beliefs"});
  } catch (const Error& e) {
    diags.push_back({1, 1, Diagnostic::Severity::error, e.what()});
  }
  return result;
}

/// Input for a witness search: an outcome space plus marginal and
/// conditional interval constraints.
struct WitnessProblem {
  OutcomeSpace space;
  std::vector<MarginalConstraint> marginals;
  std::vector<ConditionalConstraint> conditionals;
};

/// Parses the witness-constraint format:
///
///   outcomes ef e f n
///   marginal {ef, e} in [0.9, 1]
///   conditional {ef, f} given {ef, e} in [0, 0.01]
inline ParseResult<WitnessProblem> parse_witness(std::string_view text) {
  using kbdetail::Token;
  ParseResult<WitnessProblem> result;
  auto& diags = result.diagnostics;

  const auto lines = kbdetail::split_lines(text);
  std::vector<std::vector<Token>> tokenized(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!kbdetail::lex_line(lines[i], static_cast<int>(i) + 1, tokenized[i], diags)) {
      tokenized[i].clear();
    }
  }

  std::optional<std::vector<std::string>> outcomes;
  std::vector<const std::vector<Token>*> constraint_lines;
  for (const auto& toks : tokenized) {
    if (toks.empty()) continue;
    kbdetail::TokenStream ts(toks);
    if (ts.at_end()) continue;
    const Token& head = ts.peek();
    if (head.kind != Token::Kind::ident) {
      kbdetail::error_at(diags, head, "expected declaration keyword");
      continue;
    }
    const Token keyword = ts.next();
    if (keyword.text == "outcomes") {
      if (outcomes) {
        kbdetail::error_at(diags, keyword, "duplicate outcomes declaration");
        continue;
      }
      std::vector<std::string> labels;
      while (ts.peek().kind == Token::Kind::ident) labels.push_back(ts.next().text);
      if (labels.empty()) {
        kbdetail::error_at(diags, keyword, "outcomes line needs at least one label");
        continue;
      }
      outcomes = std::move(labels);
    } else if (keyword.text == "marginal" || keyword.text == "conditional") {
      constraint_lines.push_back(&toks);
    } else {
      kbdetail::error_at(diags, keyword, "unknown declaration '" + keyword.text + "'");
    }
  }

  if (!outcomes) {
    diags.push_back({1, 1, Diagnostic::Severity::error, "missing outcomes declaration"});
    return result;
  }
  std::optional<OutcomeSpace> space;
  try {
    space = OutcomeSpace(*outcomes);
  } catch (const InvalidInputError& e) {
    diags.push_back({1, 1, Diagnostic::Severity::error, e.what()});
    return result;
  }

  auto parse_event = [&](kbdetail::TokenStream& ts) -> std::optional<Event> {
    if (!kbdetail::expect_kind(ts, diags, Token::Kind::lbrace, "'{'")) return std::nullopt;
    Event event;
    while (true) {
      const Token& t = ts.peek();
      auto label = kbdetail::expect_ident(ts, diags, "outcome label");
      if (!label) return std::nullopt;
      if (!space->contains(*label)) {
        kbdetail::error_at(diags, t, "unknown outcome: " + *label);
        return std::nullopt;
      }
      event.push_back(*label);
      if (ts.peek().kind == Token::Kind::comma) {
        ts.next();
        continue;
      }
      break;
    }
    if (!kbdetail::expect_kind(ts, diags, Token::Kind::rbrace, "'}'")) return std::nullopt;
    return event;
  };

  std::vector<MarginalConstraint> marginals;
  std::vector<ConditionalConstraint> conditionals;
  for (const std::vector<Token>* toks : constraint_lines) {
    kbdetail::TokenStream ts(*toks);
    const Token keyword = ts.next();
    auto event = parse_event(ts);
    if (!event) continue;
    if (keyword.text == "marginal") {
      if (!kbdetail::expect_keyword(ts, diags, "in")) continue;
      auto interval = kbdetail::parse_interval(ts, diags);
      if (!interval) continue;
      if (!ts.at_end()) {
        kbdetail::error_at(diags, ts.peek(), "unexpected trailing input");
        continue;
      }
      marginals.push_back({std::move(*event), *interval});
    } else {
      if (!kbdetail::expect_keyword(ts, diags, "given")) continue;
      auto given = parse_event(ts);
      if (!given) continue;
      if (!kbdetail::expect_keyword(ts, diags, "in")) continue;
      auto interval = kbdetail::parse_interval(ts, diags);
      if (!interval) continue;
      if (!ts.at_end()) {
        kbdetail::error_at(diags, ts.peek(), "unexpected trailing input");
        continue;
      }
      conditionals.push_back({std::move(*event), std::move(*given), *interval});
    }
  }

  for (const Diagnostic& d : diags) {
    if (d.severity == Diagnostic::Severity::error) return result;
  }
  result.value = WitnessProblem{std::move(*space), std::move(marginals), std::move(conditionals)};
  return result;
}

}  // namespace credal
