#include "jsv/exact/parse.hpp"

#include <cctype>
#include <memory>

namespace jsv {
namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

struct Expr {
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind;
  Rational value;
  std::string name;
  int exponent = 0;
  std::size_t position = 0;
  std::vector<Expr> args;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize_poly(text)) {}

  Expr parse() {
    Expr e = expression();
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at_symbol(char c) const {
    return peek().kind == Token::Kind::Symbol && peek().text.size() == 1 && peek().text[0] == c;
  }
  [[noreturn]] void fail(const std::string& what) const { throw PolyParseError(what, peek().position); }

  Expr expression() {
    Expr lhs;
    std::size_t start = peek().position;
    if (at_symbol('-')) {
      ++pos_;
      lhs = Expr{Expr::Kind::Neg, {}, {}, 0, start, {term()}};
    } else {
      if (at_symbol('+')) ++pos_;
      lhs = term();
    }
    while (at_symbol('+') || at_symbol('-')) {
      auto kind = at_symbol('+') ? Expr::Kind::Add : Expr::Kind::Sub;
      std::size_t p = peek().position;
      ++pos_;
      lhs = Expr{kind, {}, {}, 0, p, {std::move(lhs), term()}};
    }
    return lhs;
  }

  bool starts_factor() const {
    auto k = peek().kind;
    return k == Token::Kind::Number || k == Token::Kind::Identifier ||
           k == Token::Kind::StructureConstant || at_symbol('(');
  }

  Expr term() {
    Expr lhs = factor();
    while (true) {
      std::size_t p = peek().position;
      if (at_symbol('*')) {
        ++pos_;
        lhs = Expr{Expr::Kind::Mul, {}, {}, 0, p, {std::move(lhs), factor()}};
      } else if (at_symbol('/')) {
        ++pos_;
        lhs = Expr{Expr::Kind::Div, {}, {}, 0, p, {std::move(lhs), factor()}};
      } else if (starts_factor()) {
        lhs = Expr{Expr::Kind::Mul, {}, {}, 0, p, {std::move(lhs), factor()}};
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    Expr base = atom();
    while (at_symbol('^')) {
      std::size_t p = peek().position;
      ++pos_;
      bool negative = false;
      if (at_symbol('-')) {
        negative = true;
        ++pos_;
      }
      if (peek().kind != Token::Kind::Number) fail("expected integer exponent");
      if (peek().text.size() > 6) fail("exponent too large");
      int e = std::stoi(peek().text);
      ++pos_;
      base = Expr{Expr::Kind::Pow, {}, {}, negative ? -e : e, p, {std::move(base)}};
    }
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Number: {
        ++pos_;
        return Expr{Expr::Kind::Number, Rational::parse(t.text), {}, 0, t.position, {}};
      }
      case Token::Kind::Identifier:
        ++pos_;
        return Expr{Expr::Kind::Variable, {}, t.text, 0, t.position, {}};
      case Token::Kind::StructureConstant: {
        ++pos_;
        std::string name = structure_constant_name(t.text[1] - '0', t.text[2] - '0', t.text[4] - '0');
        return Expr{Expr::Kind::Variable, {}, name, 0, t.position, {}};
      }
      case Token::Kind::Symbol:
        if (at_symbol('(')) {
          ++pos_;
          Expr inner = expression();
          if (!at_symbol(')')) fail("expected ')'");
          ++pos_;
          return inner;
        }
        fail("unexpected '" + t.text + "'");
      case Token::Kind::End:
        fail("unexpected end of input");
    }
    fail("unreachable");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

MPoly eval_poly(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return MPoly(e.value);
    case Expr::Kind::Variable: return MPoly::variable(e.name);
    case Expr::Kind::Add: return eval_poly(e.args[0]) + eval_poly(e.args[1]);
    case Expr::Kind::Sub: return eval_poly(e.args[0]) - eval_poly(e.args[1]);
    case Expr::Kind::Mul: return eval_poly(e.args[0]) * eval_poly(e.args[1]);
    case Expr::Kind::Neg: return -eval_poly(e.args[0]);
    case Expr::Kind::Div: {
      auto d = eval_poly(e.args[1]).as_constant();
      if (!d) throw PolyParseError("division by a non-constant", e.position);
      if (d->is_zero()) throw PolyParseError("division by zero", e.position);
      return eval_poly(e.args[0]).scaled(Rational(1) / *d);
    }
    case Expr::Kind::Pow:
      if (e.exponent < 0) throw PolyParseError("negative exponent", e.position);
      return eval_poly(e.args[0]).pow(static_cast<unsigned>(e.exponent));
  }
  throw PolyParseError("bad expression", e.position);
}

LaurentPoly eval_laurent(const Expr& e, const std::string& param) {
  switch (e.kind) {
    case Expr::Kind::Number: return LaurentPoly(MPoly(e.value));
    case Expr::Kind::Variable:
      return e.name == param ? LaurentPoly::t() : LaurentPoly(MPoly::variable(e.name));
    case Expr::Kind::Add: return eval_laurent(e.args[0], param) + eval_laurent(e.args[1], param);
    case Expr::Kind::Sub: return eval_laurent(e.args[0], param) - eval_laurent(e.args[1], param);
    case Expr::Kind::Mul: return eval_laurent(e.args[0], param) * eval_laurent(e.args[1], param);
    case Expr::Kind::Neg: return -eval_laurent(e.args[0], param);
    case Expr::Kind::Div: {
      auto inv = eval_laurent(e.args[1], param).inverse();
      if (!inv) throw PolyParseError("division by a non-monomial", e.position);
      return eval_laurent(e.args[0], param) * *inv;
    }
    case Expr::Kind::Pow: {
      auto base = eval_laurent(e.args[0], param);
      if (e.exponent < 0 && !base.inverse())
        throw PolyParseError("negative power of a non-monomial", e.position);
      return base.pow(e.exponent);
    }
  }
  throw PolyParseError("bad expression", e.position);
}

}  // namespace

std::vector<Token> tokenize_poly(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (is_digit(c)) {
      std::size_t s = i;
      while (i < text.size() && is_digit(text[i])) ++i;
      out.push_back({Token::Kind::Number, std::string(text.substr(s, i - s)), s});
    } else if (c == 'c' && i + 4 < text.size() && is_digit(text[i + 1]) && is_digit(text[i + 2]) &&
               text[i + 3] == '^' && is_digit(text[i + 4]) &&
               (i + 5 == text.size() || !is_digit(text[i + 5]))) {
      out.push_back({Token::Kind::StructureConstant, std::string(text.substr(i, 5)), i});
      i += 5;
    } else if (is_ident_start(c)) {
      std::size_t s = i;
      while (i < text.size() && is_ident_char(text[i])) ++i;
      out.push_back({Token::Kind::Identifier, std::string(text.substr(s, i - s)), s});
    } else if (std::string_view("+-*/^()=,").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Symbol, std::string(1, c), i});
      ++i;
    } else {
      throw PolyParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Token::Kind::End, "", text.size()});
  return out;
}

MPoly parse_poly(std::string_view text) { return eval_poly(Parser(text).parse()); }

LaurentPoly parse_laurent(std::string_view text, const std::string& param) {
  return eval_laurent(Parser(text).parse(), param);
}

}  // namespace jsv
