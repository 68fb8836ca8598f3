// Recursive-descent parser for the recurrence DSL:
//
//   recurrence := IDENT "(" "n" ")" "=" expr
//   expr       := term (("+" | "-") term)*
//   term       := "-"? (INT | INT "*" call | call | poly-term)
//   poly-term  := INT? "*"? "n" ("^" INT)?
//   call       := IDENT "(" expr ")"
#include <hofsearch/recurrence.hpp>

#include <cctype>

namespace hofsearch {
namespace {

enum class Tok { Ident, Int, LParen, RParen, Plus, Minus, Star, Caret, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && (s[i] == '.' || s[i] == '/' || s[i] == 'e' || s[i] == 'E')) {
        throw ParseError("non-integer coefficient", start);
      }
      out.push_back({Tok::Int, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '^': k = Tok::Caret; break;
      case '=': k = Tok::Equals; break;
      case '.': throw ParseError("non-integer coefficient", start);
      default: throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({k, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Recurrence parse_recurrence() {
    Recurrence rec;
    const Token& name = expect(Tok::Ident, "sequence name");
    if (name.text == "n") throw ParseError("sequence name cannot be 'n'", name.pos);
    rec.name = name.text;
    name_ = rec.name;
    expect(Tok::LParen, "'('");
    const Token& var = expect(Tok::Ident, "'n'");
    if (var.text != "n") throw ParseError("left-hand side must be " + rec.name + "(n)", var.pos);
    expect(Tok::RParen, "')'");
    expect(Tok::Equals, "'='");
    std::size_t rhs_pos = peek().pos;
    rec.rhs = parse_expr();
    if (peek().kind != Tok::End) throw ParseError("unexpected trailing input", peek().pos);
    if (!rec.rhs.has_calls()) throw ParseError("right-hand side has no recursive call", rhs_pos);
    return rec;
  }

 private:
  const Token& peek() const { return toks_[idx_]; }
  const Token& advance() { return toks_[idx_++]; }

  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
    return advance();
  }

  NestedExpr parse_expr() {
    NestedExpr e;
    std::vector<BigInt> poly;
    bool first = true;
    while (true) {
      BigInt sign = 1;
      if (!first) {
        if (peek().kind == Tok::Plus) {
          advance();
        } else if (peek().kind == Tok::Minus) {
          advance();
          sign = -1;
        } else {
          break;
        }
      }
      while (peek().kind == Tok::Minus) {
        advance();
        sign = -sign;
      }
      parse_term(sign, e, poly);
      first = false;
    }
    e.poly = IntPolynomial(std::move(poly), PolyVar::N);
    e.canonicalize();
    return e;
  }

  void add_poly(std::vector<BigInt>& poly, std::size_t power, const BigInt& c) {
    if (poly.size() <= power) poly.resize(power + 1);
    poly[power] += c;
  }

  void parse_term(const BigInt& sign, NestedExpr& e, std::vector<BigInt>& poly) {
    BigInt coeff = sign;
    bool have_int = false;
    if (peek().kind == Tok::Int) {
      coeff *= BigInt(advance().text);
      have_int = true;
      if (peek().kind != Tok::Star && !(peek().kind == Tok::Ident && peek().text == "n")) {
        add_poly(poly, 0, coeff);
        return;
      }
      if (peek().kind == Tok::Star) advance();
    }
    const Token& t = peek();
    if (t.kind != Tok::Ident) {
      throw ParseError(have_int ? "expected call or 'n' after '*'" : "expected term", t.pos);
    }
    advance();
    if (t.text == "n") {
      std::size_t power = 1;
      if (peek().kind == Tok::Caret) {
        advance();
        const Token& p = expect(Tok::Int, "exponent");
        power = std::stoul(p.text);
      }
      add_poly(poly, power, coeff);
      return;
    }
    if (t.text != name_) {
      throw ParseError("call to '" + t.text + "' does not match sequence name '" + name_ + "'", t.pos);
    }
    expect(Tok::LParen, "'('");
    auto arg = std::make_shared<NestedExpr>(parse_expr());
    expect(Tok::RParen, "')'");
    e.calls.push_back({coeff, std::move(arg)});
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
  std::string name_;
};

}  // namespace

Recurrence parse(std::string_view text) { return Parser(text).parse_recurrence(); }

}  // namespace hofsearch
