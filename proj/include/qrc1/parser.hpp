#pragma once

// Concrete syntax:
//
//   formula := "T" | ident "(" term ("," term)* ")" | "(" formula "&" formula ")"
//            | "<>" formula | "A" var "." formula
//   term    := var | const
//
// UTF-8 aliases: ⊤ for T, ∧ for &, ◇ for <>, ∀ for A. A zero-ary relation is
// written `P()`.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qrc1/syntax.hpp"

namespace qrc1 {

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("parse error at offset " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, Signature* sig, bool extend)
      : text_(text), sig_(sig), extend_(extend) {}

  Formula parse() {
    Formula f = formula();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool eat(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!eat(token)) fail("expected '" + std::string(token) + "'");
  }

  static bool ident_char(char ch) {
    return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
           ch == '_' || ch == '#';
  }

  std::string ident() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool next_is_paren() {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == '(';
  }

  Formula formula() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (eat("<>") || eat("◇")) return Formula::diamond(formula());
    if (eat("⊤")) return Formula::top();
    if (eat("∀")) return quantifier();
    if (eat("(")) {
      Formula a = formula();
      if (!eat("&") && !eat("∧")) fail("expected '&'");
      Formula b = formula();
      expect(")");
      return Formula::conj(std::move(a), std::move(b));
    }
    std::size_t start = pos_;
    std::string name = ident();
    if (name == "T" && !next_is_paren()) return Formula::top();
    if (name == "A" && !next_is_paren()) return quantifier();
    if (!next_is_paren()) {
      pos_ = start;
      fail("expected formula, found '" + name + "'");
    }
    return atom(name, start);
  }

  Formula quantifier() {
    std::size_t at = (skip_space(), pos_);
    std::string v = ident();
    if (!is_variable_name(v)) {
      pos_ = at;
      fail("quantified name '" + v + "' is not a variable");
    }
    expect(".");
    return Formula::forall(v, formula());
  }

  Term term() {
    skip_space();
    std::size_t at = pos_;
    std::string name = ident();
    if (sig_->has_constant(name)) return Term::constant(name);
    if (is_variable_name(name)) return Term::variable(name);
    if (is_constant_name(name)) {
      if (!extend_) {
        pos_ = at;
        fail("unknown constant '" + name + "'");
      }
      sig_->add_constant(name);
      return Term::constant(name);
    }
    pos_ = at;
    fail("'" + name + "' is neither a variable nor a constant");
  }

  Formula atom(const std::string& symbol, std::size_t at) {
    if (!is_relation_name(symbol)) {
      pos_ = at;
      fail("invalid relation symbol '" + symbol + "'");
    }
    expect("(");
    std::vector<Term> args;
    if (!eat(")")) {
      args.push_back(term());
      while (eat(",")) args.push_back(term());
      expect(")");
    }
    auto arity = sig_->arity(symbol);
    if (!arity) {
      if (!extend_) {
        pos_ = at;
        fail("unknown relation symbol '" + symbol + "'");
      }
      sig_->add_relation(symbol, args.size());
    } else if (*arity != args.size()) {
      pos_ = at;
      fail("arity mismatch for " + symbol + ": expected " + std::to_string(*arity) + ", got " +
           std::to_string(args.size()));
    }
    return Formula::rel(symbol, std::move(args));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Signature* sig_;
  bool extend_;
};

}  // namespace detail

/// Parses against a fixed signature; unknown symbols and arity mismatches are
/// errors.
inline Formula parse_formula(std::string_view text, const Signature& sig) {
  Signature copy = sig;
  return detail::FormulaParser(text, &copy, false).parse();
}

/// Parses and records every new relation (arity fixed by first use) and
/// c-prefixed constant into `sig`.
inline Formula parse_formula_extending(std::string_view text, Signature& sig) {
  return detail::FormulaParser(text, &sig, true).parse();
}

inline std::string to_string(const Formula& f) { return f.to_string(); }

inline std::string to_string(const Term& t) { return t.name; }

}  // namespace qrc1
