#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "dal/ast.hpp"
#include "dal/rational.hpp"

namespace dal {

// Recursive-descent parser for the concrete grammar:
//   terms:    rationals p/q, identifiers, primes as trailing apostrophes,
//             + - * and ^k (k a nonnegative integer literal), f(e1,...,ek)
//   formulas: <= < = != >= >, & | ! -> <->, \forall x, \exists x, [a]F, <a>F,
//             P(e1,...,ek), tuple sugar (x,y)=f(...) expanding to a conjunction
//   programs: x:=e, ?F, {x,y & F}, ;, ++ for choice, postfix *
// All binary operators associate to the right.

namespace detail {

enum class Tok {
  End, Ident, PrimedIdent, Number, LParen, RParen, LBrace, RBrace, LBracket,
  RBracket, Comma, Semicolon, Amp, Bar, Bang, Plus, Minus, Star, Slash, Caret,
  Question, Assign, ChoiceOp, Lt, Gt, Le, Ge, Eq, Ne, Imply, Equiv, Forall,
  Exists, Prime
};

struct Token {
  Tok kind;
  std::string text;
  long pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token next() {
    Token t = current_;
    advance();
    return t;
  }
  long pos() const { return current_.pos; }

  struct Snapshot {
    size_t i;
    Token current;
  };
  Snapshot save() const { return {i_, current_}; }
  void restore(const Snapshot& s) {
    i_ = s.i;
    current_ = s.current;
  }

 private:
  void advance() {
    skip_space();
    current_.pos = static_cast<long>(i_);
    if (i_ >= text_.size()) {
      current_ = {Tok::End, "", static_cast<long>(i_)};
      return;
    }
    char c = text_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i_;
      while (i_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_'))
        ++i_;
      std::string name = text_.substr(start, i_ - start);
      size_t primes = 0;
      while (i_ < text_.size() && text_[i_] == '\'') {
        ++primes;
        ++i_;
      }
      if (primes > 1)
        fail(ErrorKind::Lexical, "only single primes are supported: " + name,
             static_cast<long>(start));
      current_ = {primes ? Tok::PrimedIdent : Tok::Ident, name, static_cast<long>(start)};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i_;
      while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
      current_ = {Tok::Number, text_.substr(start, i_ - start), static_cast<long>(start)};
      return;
    }
    long at = static_cast<long>(i_);
    auto two = [&](char a, char b) {
      return c == a && i_ + 1 < text_.size() && text_[i_ + 1] == b;
    };
    if (c == '\\') {
      size_t start = i_ + 1;
      size_t j = start;
      while (j < text_.size() && std::isalpha(static_cast<unsigned char>(text_[j]))) ++j;
      std::string word = text_.substr(start, j - start);
      if (word == "forall") {
        i_ = j;
        current_ = {Tok::Forall, word, at};
        return;
      }
      if (word == "exists") {
        i_ = j;
        current_ = {Tok::Exists, word, at};
        return;
      }
      fail(ErrorKind::Lexical, "unknown keyword \\" + word, at);
    }
    if (c == '<' && i_ + 2 < text_.size() && text_[i_ + 1] == '-' && text_[i_ + 2] == '>') {
      i_ += 3;
      current_ = {Tok::Equiv, "<->", at};
      return;
    }
    if (two('<', '=')) { i_ += 2; current_ = {Tok::Le, "<=", at}; return; }
    if (two('>', '=')) { i_ += 2; current_ = {Tok::Ge, ">=", at}; return; }
    if (two('!', '=')) { i_ += 2; current_ = {Tok::Ne, "!=", at}; return; }
    if (two('-', '>')) { i_ += 2; current_ = {Tok::Imply, "->", at}; return; }
    if (two('+', '+')) { i_ += 2; current_ = {Tok::ChoiceOp, "++", at}; return; }
    if (two(':', '=')) { i_ += 2; current_ = {Tok::Assign, ":=", at}; return; }
    ++i_;
    switch (c) {
      case '(': current_ = {Tok::LParen, "(", at}; return;
      case ')': current_ = {Tok::RParen, ")", at}; return;
      case '{': current_ = {Tok::LBrace, "{", at}; return;
      case '}': current_ = {Tok::RBrace, "}", at}; return;
      case '[': current_ = {Tok::LBracket, "[", at}; return;
      case ']': current_ = {Tok::RBracket, "]", at}; return;
      case ',': current_ = {Tok::Comma, ",", at}; return;
      case ';': current_ = {Tok::Semicolon, ";", at}; return;
      case '&': current_ = {Tok::Amp, "&", at}; return;
      case '|': current_ = {Tok::Bar, "|", at}; return;
      case '!': current_ = {Tok::Bang, "!", at}; return;
      case '+': current_ = {Tok::Plus, "+", at}; return;
      case '-': current_ = {Tok::Minus, "-", at}; return;
      case '*': current_ = {Tok::Star, "*", at}; return;
      case '/': current_ = {Tok::Slash, "/", at}; return;
      case '^': current_ = {Tok::Caret, "^", at}; return;
      case '?': current_ = {Tok::Question, "?", at}; return;
      case '<': current_ = {Tok::Lt, "<", at}; return;
      case '>': current_ = {Tok::Gt, ">", at}; return;
      case '=': current_ = {Tok::Eq, "=", at}; return;
      case '\'': current_ = {Tok::Prime, "'", at}; return;
    }
    fail(ErrorKind::Lexical, std::string("unexpected character '") + c + "'", at);
  }

  void skip_space() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++i_;
      } else if (c == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  size_t i_ = 0;
  Token current_{Tok::End, "", 0};
};

class Parser {
 public:
  Parser(const std::string& text, Signature& sig) : lex_(text), sig_(sig) {}

  TermPtr parse_term_all() {
    TermPtr t = parse_term();
    expect_end();
    return t;
  }
  FormulaPtr parse_formula_all() {
    FormulaPtr f = parse_formula();
    expect_end();
    return f;
  }
  ProgramPtr parse_program_all() {
    ProgramPtr p = parse_program();
    expect_end();
    return p;
  }

  // ----- terms -----

  TermPtr parse_term() {
    std::vector<TermPtr> addends;
    addends.push_back(parse_addend());
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      bool minus = lex_.next().kind == Tok::Minus;
      TermPtr u = parse_addend();
      addends.push_back(minus ? fold_neg(u) : u);
    }
    TermPtr t = addends.back();
    for (size_t i = addends.size() - 1; i-- > 0;) t = mk_plus(addends[i], t);
    return t;
  }

  TermPtr parse_addend() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.next();
      return fold_neg(parse_product());
    }
    return parse_product();
  }

  TermPtr parse_product() {
    std::vector<TermPtr> factors;
    parse_power_into(factors);
    while (lex_.peek().kind == Tok::Star) {
      lex_.next();
      parse_power_into(factors);
    }
    TermPtr t = factors.back();
    for (size_t i = factors.size() - 1; i-- > 0;) t = mk_times(factors[i], t);
    return t;
  }

  void parse_power_into(std::vector<TermPtr>& factors) {
    TermPtr base = parse_primary_term();
    if (lex_.peek().kind == Tok::Caret) {
      long at = lex_.pos();
      lex_.next();
      if (lex_.peek().kind != Tok::Number)
        fail(ErrorKind::Parse, "exponent must be a nonnegative integer literal", lex_.pos());
      long k = std::stol(lex_.next().text);
      if (k == 0) {
        factors.push_back(mk_const(1));
        return;
      }
      for (long i = 0; i < k; ++i) factors.push_back(base);
      (void)at;
      return;
    }
    factors.push_back(base);
  }

  TermPtr parse_primary_term() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Number: {
        Token num = lex_.next();
        if (lex_.peek().kind == Tok::Slash) {
          lex_.next();
          if (lex_.peek().kind != Tok::Number)
            fail(ErrorKind::Parse, "expected denominator after '/'", lex_.pos());
          Token den = lex_.next();
          return mk_const(rat_from_string(num.text + "/" + den.text, num.pos));
        }
        return mk_const(rat_from_string(num.text, num.pos));
      }
      case Tok::PrimedIdent:
        return mk_diffvar(lex_.next().text);
      case Tok::Ident: {
        Token id = lex_.next();
        if (lex_.peek().kind == Tok::LParen) {
          lex_.next();
          std::vector<TermPtr> args;
          if (lex_.peek().kind != Tok::RParen) {
            args.push_back(parse_term());
            while (lex_.peek().kind == Tok::Comma) {
              lex_.next();
              args.push_back(parse_term());
            }
          }
          expect(Tok::RParen, ")");
          sig_.declare_func(id.text, args.size(), id.pos);
          return mk_func(id.text, std::move(args));
        }
        return mk_var(id.text);
      }
      case Tok::LParen: {
        lex_.next();
        TermPtr inner = parse_term();
        expect(Tok::RParen, ")");
        if (lex_.peek().kind == Tok::Prime) {
          lex_.next();
          return mk_differential(inner);
        }
        return inner;
      }
      default:
        fail(ErrorKind::Parse, "expected a term, found '" + t.text + "'", t.pos);
    }
  }

  // ----- formulas -----

  FormulaPtr parse_formula() { return parse_equiv(); }

  FormulaPtr parse_equiv() {
    FormulaPtr f = parse_imply();
    if (lex_.peek().kind == Tok::Equiv) {
      lex_.next();
      return mk_equiv(f, parse_equiv());
    }
    return f;
  }

  FormulaPtr parse_imply() {
    FormulaPtr f = parse_or();
    if (lex_.peek().kind == Tok::Imply) {
      lex_.next();
      return mk_imply(f, parse_imply());
    }
    return f;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    if (lex_.peek().kind == Tok::Bar) {
      lex_.next();
      return mk_or(f, parse_or());
    }
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_unary_formula();
    if (lex_.peek().kind == Tok::Amp) {
      lex_.next();
      return mk_and(f, parse_and());
    }
    return f;
  }

  FormulaPtr parse_unary_formula() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Bang:
        lex_.next();
        return mk_not(parse_unary_formula());
      case Tok::Forall:
      case Tok::Exists: {
        bool forall = lex_.next().kind == Tok::Forall;
        Var v = parse_binder_var();
        FormulaPtr body = parse_unary_formula();
        return mk_quant(forall ? FormulaTag::Forall : FormulaTag::Exists, v, body);
      }
      case Tok::LBracket: {
        lex_.next();
        ProgramPtr prog = parse_program();
        expect(Tok::RBracket, "]");
        return mk_box(prog, parse_unary_formula());
      }
      case Tok::Lt: {
        lex_.next();
        ProgramPtr prog = parse_program();
        expect(Tok::Gt, ">");
        return mk_diamond(prog, parse_unary_formula());
      }
      default:
        return parse_atom();
    }
  }

  Var parse_binder_var() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident) return Var(lex_.next().text, false);
    if (t.kind == Tok::PrimedIdent) return Var(lex_.next().text, true);
    fail(ErrorKind::Parse, "expected a quantified variable, found '" + t.text + "'", t.pos);
  }

  FormulaPtr parse_atom() {
    // Tuple sugar: (x,y) = f(e1,...,ek) expands to x=f1(...) & y=f2(...).
    if (lex_.peek().kind == Tok::LParen) {
      auto snap = lex_.save();
      try {
        FormulaPtr sugar = try_tuple_equality();
        if (sugar) return sugar;
      } catch (const DalError&) {
      }
      lex_.restore(snap);
    }
    {
      auto snap = lex_.save();
      try {
        return parse_relational_atom();
      } catch (const DalError&) {
        lex_.restore(snap);
      }
    }
    expect(Tok::LParen, "(");
    FormulaPtr f = parse_formula();
    expect(Tok::RParen, ")");
    return f;
  }

  FormulaPtr try_tuple_equality() {
    auto snap = lex_.save();
    lex_.next();  // (
    std::vector<Var> lhs;
    if (lex_.peek().kind != Tok::Ident && lex_.peek().kind != Tok::PrimedIdent) {
      lex_.restore(snap);
      return nullptr;
    }
    lhs.push_back(parse_binder_var());
    if (lex_.peek().kind != Tok::Comma) {
      lex_.restore(snap);
      return nullptr;
    }
    while (lex_.peek().kind == Tok::Comma) {
      lex_.next();
      lhs.push_back(parse_binder_var());
    }
    if (lex_.peek().kind != Tok::RParen) {
      lex_.restore(snap);
      return nullptr;
    }
    lex_.next();
    if (lex_.peek().kind != Tok::Eq) {
      lex_.restore(snap);
      return nullptr;
    }
    lex_.next();
    Token fn = lex_.peek();
    if (fn.kind != Tok::Ident) fail(ErrorKind::Parse, "expected a function symbol", fn.pos);
    lex_.next();
    expect(Tok::LParen, "(");
    std::vector<TermPtr> args;
    if (lex_.peek().kind != Tok::RParen) {
      args.push_back(parse_term());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.next();
        args.push_back(parse_term());
      }
    }
    expect(Tok::RParen, ")");
    std::vector<FormulaPtr> parts;
    for (size_t i = 0; i < lhs.size(); ++i) {
      std::string comp = fn.text + std::to_string(i + 1);
      sig_.declare_func(comp, args.size(), fn.pos);
      parts.push_back(mk_cmp(CmpOp::Eq, mk_term_of_var(lhs[i]), mk_func(comp, args)));
    }
    return mk_and_chain(parts);
  }

  FormulaPtr parse_relational_atom() {
    TermPtr l = parse_term();
    CmpOp op;
    switch (lex_.peek().kind) {
      case Tok::Le: op = CmpOp::Le; break;
      case Tok::Lt: op = CmpOp::Lt; break;
      case Tok::Eq: op = CmpOp::Eq; break;
      case Tok::Ne: op = CmpOp::Ne; break;
      case Tok::Ge: op = CmpOp::Ge; break;
      case Tok::Gt: op = CmpOp::Gt; break;
      default: {
        // A bare identifier or application in formula position is a
        // predicate symbol.
        if (l->tag == TermTag::Var) {
          sig_.declare_pred(l->name, 0);
          return mk_pred(l->name, {});
        }
        if (l->tag == TermTag::Func) {
          sig_.declare_pred(l->name, l->kids.size());
          return mk_pred(l->name, l->kids);
        }
        fail(ErrorKind::Parse, "expected a comparison operator", lex_.pos());
      }
    }
    lex_.next();
    TermPtr r = parse_term();
    return mk_cmp(op, l, r);
  }

  // ----- programs -----

  ProgramPtr parse_program() {
    ProgramPtr p = parse_seq();
    if (lex_.peek().kind == Tok::ChoiceOp) {
      lex_.next();
      return mk_choice(p, parse_program());
    }
    return p;
  }

  ProgramPtr parse_seq() {
    ProgramPtr p = parse_postfix();
    if (lex_.peek().kind == Tok::Semicolon) {
      lex_.next();
      return mk_seq(p, parse_seq());
    }
    return p;
  }

  ProgramPtr parse_postfix() {
    ProgramPtr p = parse_primary_program();
    while (lex_.peek().kind == Tok::Star) {
      lex_.next();
      p = mk_star(p);
    }
    return p;
  }

  ProgramPtr parse_primary_program() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Question:
        lex_.next();
        return mk_test(parse_formula());
      case Tok::LBrace: {
        long at = t.pos;
        lex_.next();
        std::vector<std::string> vars;
        if (lex_.peek().kind != Tok::Ident)
          fail(ErrorKind::Parse, "expected an evolved variable", lex_.pos());
        vars.push_back(lex_.next().text);
        while (lex_.peek().kind == Tok::Comma) {
          lex_.next();
          if (lex_.peek().kind != Tok::Ident)
            fail(ErrorKind::Parse, "expected an evolved variable", lex_.pos());
          vars.push_back(lex_.next().text);
        }
        expect(Tok::Amp, "&");
        FormulaPtr constraint = parse_formula();
        expect(Tok::RBrace, "}");
        return mk_dap(std::move(vars), constraint, at);
      }
      case Tok::LParen: {
        lex_.next();
        ProgramPtr p = parse_program();
        expect(Tok::RParen, ")");
        return p;
      }
      case Tok::Ident:
      case Tok::PrimedIdent: {
        Var v = parse_binder_var();
        expect(Tok::Assign, ":=");
        return mk_assign(v, parse_term());
      }
      default:
        fail(ErrorKind::Parse, "expected a program, found '" + t.text + "'", t.pos);
    }
  }

 private:
  static TermPtr fold_neg(const TermPtr& t) { return mk_neg(t); }

  void expect(Tok kind, const char* what) {
    if (lex_.peek().kind != kind)
      fail(ErrorKind::Parse,
           std::string("expected '") + what + "', found '" + lex_.peek().text + "'", lex_.pos());
    lex_.next();
  }

  void expect_end() {
    if (lex_.peek().kind != Tok::End)
      fail(ErrorKind::Parse, "trailing input: '" + lex_.peek().text + "'", lex_.pos());
  }

  Lexer lex_;
  Signature& sig_;
};

}  // namespace detail

inline TermPtr parse_term(const std::string& text, Signature& sig) {
  return detail::Parser(text, sig).parse_term_all();
}
inline FormulaPtr parse_formula(const std::string& text, Signature& sig) {
  return detail::Parser(text, sig).parse_formula_all();
}
inline ProgramPtr parse_program(const std::string& text, Signature& sig) {
  return detail::Parser(text, sig).parse_program_all();
}

inline TermPtr parse_term(const std::string& text) {
  Signature sig;
  return parse_term(text, sig);
}
inline FormulaPtr parse_formula(const std::string& text) {
  Signature sig;
  return parse_formula(text, sig);
}
inline ProgramPtr parse_program(const std::string& text) {
  Signature sig;
  return parse_program(text, sig);
}

}  // namespace dal
