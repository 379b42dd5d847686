// fil :: recursive-descent parser for the formula syntax
#include <cctype>

#include "fil/formula.hpp"

namespace fil {
namespace {

struct Tok {
  enum Type { Ident, Arrow, RhdOp, OrOp, AndOp, NegOp, BoxOp, DiaOp,
              LParen, RParen, LBrack, RBrack, Comma, End } type;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Tok& peek() const { return tok_; }
  Tok take() {
    Tok t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.type = Tok::End;
      tok_.text = "<end>";
      return;
    }
    char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
              s_[pos_] == '\''))
        bump();
      tok_.type = Tok::Ident;
      tok_.text = s_.substr(start, pos_ - start);
      return;
    }
    switch (c) {
      case '-':
        expect2('>', Tok::Arrow, "->");
        return;
      case '|':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
          bump();
          bump();
          tok_.type = Tok::RhdOp;
          tok_.text = "|>";
        } else {
          bump();
          tok_.type = Tok::OrOp;
          tok_.text = "|";
        }
        return;
      case '\\':
        expect2('/', Tok::OrOp, "\\/");
        return;
      case '<':
        expect2('>', Tok::DiaOp, "<>");
        return;
      case '&': single(Tok::AndOp); return;
      case '~': single(Tok::NegOp); return;
      case '#': single(Tok::BoxOp); return;
      case '(': single(Tok::LParen); return;
      case ')': single(Tok::RParen); return;
      case '[': single(Tok::LBrack); return;
      case ']': single(Tok::RBrack); return;
      case ',': single(Tok::Comma); return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void single(Tok::Type t) {
    tok_.type = t;
    tok_.text = s_.substr(pos_, 1);
    bump();
  }

  void expect2(char second, Tok::Type t, const char* text) {
    if (pos_ + 1 >= s_.size() || s_[pos_ + 1] != second)
      throw ParseError(std::string("expected '") + text + "'", line_, col_);
    bump();
    bump();
    tok_.type = t;
    tok_.text = text;
  }

  void skip_ws() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '%') {
        while (pos_ < s_.size() && s_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Tok tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : lex_(s) {}

  FormulaPtr run() {
    FormulaPtr f = impl();
    const Tok& t = lex_.peek();
    if (t.type != Tok::End)
      throw ParseError("unexpected '" + t.text + "' after formula", t.line, t.col);
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    const Tok& t = lex_.peek();
    throw ParseError(msg + " (got '" + t.text + "')", t.line, t.col);
  }

  // impl := rhd ('->' impl)?   right-associative
  FormulaPtr impl() {
    FormulaPtr l = rhd();
    if (lex_.peek().type == Tok::Arrow) {
      lex_.take();
      return mk_impl(std::move(l), impl());
    }
    return l;
  }

  // rhd := disj ('|>' label? disj)?   non-associative
  FormulaPtr rhd() {
    FormulaPtr l = disj();
    if (lex_.peek().type == Tok::RhdOp) {
      lex_.take();
      Label la = opt_label();
      return mk_rhd(std::move(la), std::move(l), disj());
    }
    return l;
  }

  FormulaPtr disj() {
    FormulaPtr l = conj();
    while (lex_.peek().type == Tok::OrOp) {
      lex_.take();
      l = mk_or(std::move(l), conj());
    }
    return l;
  }

  FormulaPtr conj() {
    FormulaPtr l = unary();
    while (lex_.peek().type == Tok::AndOp) {
      lex_.take();
      l = mk_and(std::move(l), unary());
    }
    return l;
  }

  FormulaPtr unary() {
    switch (lex_.peek().type) {
      case Tok::NegOp:
        lex_.take();
        return mk_neg(unary());
      case Tok::BoxOp: {
        lex_.take();
        Label la = opt_label();
        return mk_box(std::move(la), unary());
      }
      case Tok::DiaOp: {
        lex_.take();
        Label la = opt_label();
        return mk_dia(la, unary());
      }
      default:
        return atom();
    }
  }

  FormulaPtr atom() {
    const Tok& t = lex_.peek();
    if (t.type == Tok::Ident) {
      Tok id = lex_.take();
      if (id.text == "true") return mk_top();
      if (id.text == "false") return mk_bot();
      return mk_var(id.text);
    }
    if (t.type == Tok::LParen) {
      lex_.take();
      FormulaPtr f = impl();
      if (lex_.peek().type != Tok::RParen) fail("expected ')'");
      lex_.take();
      return f;
    }
    fail("expected formula");
  }

  // label := '[' (IDENT (',' IDENT)*)? ']'
  // `id` alone denotes the identity (empty) label; mixed with variables or
  // duplicated it is an error, as are duplicate variables.
  Label opt_label() {
    if (lex_.peek().type != Tok::LBrack) return {};
    Tok open = lex_.take();
    Label la;
    int saw_id = 0;
    if (lex_.peek().type != Tok::RBrack) {
      for (;;) {
        if (lex_.peek().type != Tok::Ident) fail("expected interpretation variable");
        Tok id = lex_.take();
        if (id.text == "id")
          ++saw_id;
        else
          la.push_back(id.text);
        if (lex_.peek().type == Tok::Comma) {
          lex_.take();
          continue;
        }
        break;
      }
    }
    if (lex_.peek().type != Tok::RBrack) fail("expected ']'");
    lex_.take();
    if (saw_id && !la.empty())
      throw ParseError("'id' cannot appear inside a nonempty label", open.line, open.col);
    if (saw_id > 1)
      throw ParseError("duplicate 'id' in label", open.line, open.col);
    if (!label_ok(la))
      throw ParseError("label variables must be distinct: " + label_str(la), open.line,
                       open.col);
    return la;
  }

  Lexer lex_;
};

}  // namespace

FormulaPtr parse(const std::string& text) { return Parser(text).run(); }

}  // namespace fil
