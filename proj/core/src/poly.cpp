#include "orthotau/poly.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace orthotau {

PolyScalar poly_mul(const PolyScalar& a, const PolyScalar& b) {
  check_same_vars(a, b);
  PolyScalar r{a.vars, {}};
  const std::size_t nv = a.vars->size();
  Expo e(nv, 0);
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      for (std::size_t i = 0; i < nv; ++i) e[i] = ea[i] + eb[i];
      auto it = r.terms.find(e);
      if (it == r.terms.end()) {
        Rational c = ca * cb;
        if (c != 0) r.terms.emplace(e, std::move(c));
      } else {
        it->second += ca * cb;
        if (it->second == 0) r.terms.erase(it);
      }
    }
  }
  return r;
}

PolyScalar poly_pow(const PolyScalar& a, unsigned e) {
  check_vars(a);
  PolyScalar r = poly_one(a.vars);
  PolyScalar base = a;
  while (e > 0) {
    if (e & 1u) r = poly_mul(r, base);
    e >>= 1u;
    if (e > 0) base = poly_mul(base, base);
  }
  return r;
}

PolyScalar poly_divide_exact(const PolyScalar& a, const PolyScalar& b) {
  check_same_vars(a, b);
  if (b.terms.empty()) throw internal_error("poly_divide_exact: division by zero polynomial");
  const std::size_t nv = a.vars->size();
  const auto& lb = *b.terms.rbegin();  // leading term of the divisor
  PolyScalar q = poly_zero(a.vars);
  PolyScalar rem = a;
  while (!rem.terms.empty()) {
    const auto& lr = *rem.terms.rbegin();
    Expo qe(nv, 0);
    for (std::size_t i = 0; i < nv; ++i) {
      qe[i] = lr.first[i] - lb.first[i];
      if (qe[i] < 0) throw internal_error("poly_divide_exact: not exactly divisible");
    }
    Rational qc = lr.second / lb.second;
    PolyScalar qterm{a.vars, {}};
    qterm.terms.emplace(std::move(qe), std::move(qc));
    q = poly_add(q, qterm);
    rem = poly_sub(rem, poly_mul(qterm, b));
  }
  return q;
}

std::string poly_to_text(const PolyScalar& a) {
  check_vars(a);
  if (a.terms.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : a.terms) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += a.vars->name(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    std::string term;
    if (mono.empty()) {
      term = rational_to_string(mag);
    } else if (mag == 1) {
      term = mono;
    } else {
      term = rational_to_string(mag) + "*" + mono;
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out;
}

namespace {

struct Token {
  enum Kind { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Kind kind = End;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' ||
                                s_[pos_] == '\r'))
      ++pos_;
    if (pos_ >= s_.size()) {
      tok_ = Token{Token::End, ""};
      return;
    }
    char c = s_[pos_];
    auto digit = [](char x) { return x >= '0' && x <= '9'; };
    auto alpha = [](char x) {
      return (x >= 'a' && x <= 'z') || (x >= 'A' && x <= 'Z') || x == '_';
    };
    if (digit(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
      tok_ = Token{Token::Int, s_.substr(start, pos_ - start)};
      return;
    }
    if (alpha(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (alpha(s_[pos_]) || digit(s_[pos_]))) ++pos_;
      tok_ = Token{Token::Ident, s_.substr(start, pos_ - start)};
      return;
    }
    ++pos_;
    switch (c) {
      case '+': tok_ = Token{Token::Plus, "+"}; return;
      case '-': tok_ = Token{Token::Minus, "-"}; return;
      case '*': tok_ = Token{Token::Star, "*"}; return;
      case '/': tok_ = Token{Token::Slash, "/"}; return;
      case '^': tok_ = Token{Token::Caret, "^"}; return;
      case '(': tok_ = Token{Token::LParen, "("}; return;
      case ')': tok_ = Token{Token::RParen, ")"}; return;
      default:
        throw config_error(std::string("unexpected character in polynomial: '") + c + "'");
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(VarSetPtr vars, const std::string& text) : vars_(std::move(vars)), lex_(text) {}

  PolyScalar parse() {
    PolyScalar p = parse_expr();
    if (lex_.peek().kind != Token::End)
      throw config_error("trailing input in polynomial: '" + lex_.peek().text + "'");
    return p;
  }

 private:
  PolyScalar parse_expr() {
    bool neg = false;
    if (lex_.peek().kind == Token::Plus) {
      lex_.take();
    } else if (lex_.peek().kind == Token::Minus) {
      lex_.take();
      neg = true;
    }
    PolyScalar acc = parse_term();
    if (neg) acc = poly_neg(acc);
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      bool minus = lex_.take().kind == Token::Minus;
      PolyScalar t = parse_term();
      acc = minus ? poly_sub(acc, t) : poly_add(acc, t);
    }
    return acc;
  }

  PolyScalar parse_term() {
    PolyScalar acc = parse_factor();
    while (lex_.peek().kind == Token::Star || lex_.peek().kind == Token::Slash) {
      bool div = lex_.take().kind == Token::Slash;
      PolyScalar f = parse_factor();
      if (div) {
        if (!poly_is_constant(f) || poly_is_zero(f))
          throw config_error("polynomial division requires a nonzero constant divisor");
        acc = poly_scale(acc, Rational(1) / poly_constant_value(f));
      } else {
        acc = poly_mul(acc, f);
      }
    }
    return acc;
  }

  unsigned parse_exponent() {
    if (lex_.peek().kind != Token::Int)
      throw config_error("expected integer exponent after '^'");
    std::string t = lex_.take().text;
    if (t.size() > 4) throw config_error("exponent too large: '" + t + "'");
    return static_cast<unsigned>(std::stoul(t));
  }

  PolyScalar parse_factor() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Int:
        return poly_const(vars_, rational_from_string(t.text));
      case Token::Ident: {
        auto idx = vars_->find(t.text);
        if (!idx) throw config_error("unknown variable in polynomial: '" + t.text + "'");
        PolyScalar v = poly_var(vars_, *idx);
        if (lex_.peek().kind == Token::Caret) {
          lex_.take();
          return poly_pow(v, parse_exponent());
        }
        return v;
      }
      case Token::LParen: {
        PolyScalar inner = parse_expr();
        if (lex_.peek().kind != Token::RParen) throw config_error("missing ')' in polynomial");
        lex_.take();
        if (lex_.peek().kind == Token::Caret) {
          lex_.take();
          return poly_pow(inner, parse_exponent());
        }
        return inner;
      }
      default:
        throw config_error("unexpected token in polynomial: '" + t.text + "'");
    }
  }

  VarSetPtr vars_;
  Lexer lex_;
};

}  // namespace

PolyScalar poly_parse(VarSetPtr vars, const std::string& text) {
  if (!vars) throw internal_error("poly_parse: null variable set");
  return Parser(std::move(vars), text).parse();
}

}  // namespace orthotau
