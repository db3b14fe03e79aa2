#include <cctype>
#include <cstdlib>
#include <map>

#include "newtonscope/polynomial.hpp"

namespace newtonscope {
namespace {

// Recursive descent over:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := ident | number | '(' expr ')' | 'i'
// Numbers are decimal literals with optional exponent part and optional
// imaginary suffix 'i'. Implicit multiplication is rejected.
class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& names)
      : text_(text), n_(static_cast<int>(names.size())) {
    for (int i = 0; i < n_; ++i) {
      if (names[i] == "i")
        throw ParseError(ParseErrorKind::Syntax, 0, "'i' is reserved for the imaginary unit");
      index_[names[i]] = i;
    }
  }

  Polynomial run() {
    Polynomial p = parseExpr();
    skipSpace();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  Polynomial parseExpr() {
    skipSpace();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      if (take() == '-') sign = -1;
    }
    Polynomial acc = parseTerm();
    if (sign < 0) acc = acc.scaled(Complex(-1, 0));
    for (;;) {
      skipSpace();
      char c = peek();
      if (c != '+' && c != '-') break;
      take();
      Polynomial rhs = parseTerm();
      acc = (c == '+') ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  Polynomial parseTerm() {
    Polynomial acc = parseFactor();
    for (;;) {
      skipSpace();
      if (peek() != '*') break;
      take();
      acc = acc * parseFactor();
    }
    return acc;
  }

  Polynomial parseFactor() {
    Polynomial base = parseBase();
    skipSpace();
    if (peek() != '^') return base;
    take();
    skipSpace();
    size_t expPos = pos_;
    if (peek() == '-')
      throw ParseError(ParseErrorKind::NegativeExponent, expPos, "negative exponent at position " + std::to_string(expPos));
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a nonnegative integer exponent");
    long long e = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + (take() - '0');
      if (e > 1000) fail("exponent too large");
    }
    return base.pow(static_cast<int>(e));
  }

  Polynomial parseBase() {
    skipSpace();
    size_t start = pos_;
    char c = peek();
    if (c == '(') {
      take();
      Polynomial inner = parseExpr();
      skipSpace();
      if (peek() != ')') fail("expected ')'");
      take();
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parseNumber();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') name += take();
      if (name == "i") return Polynomial::constant(n_, Complex(0, 1));
      auto it = index_.find(name);
      if (it == index_.end())
        throw ParseError(ParseErrorKind::UnknownVariable, start,
                         "unknown variable '" + name + "' at position " + std::to_string(start));
      return Polynomial::variable(n_, it->second);
    }
    fail("expected a variable, number or '('");
    return Polynomial(n_);  // unreachable
  }

  Polynomial parseNumber() {
    size_t start = pos_;
    bool sawDigit = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      take();
      sawDigit = true;
    }
    if (peek() == '.') {
      take();
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        take();
        sawDigit = true;
      }
    }
    if (!sawDigit) fail("malformed number");
    if (peek() == 'e' || peek() == 'E') {
      size_t mark = pos_;
      take();
      if (peek() == '+' || peek() == '-') take();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = mark;  // 'e' belongs to an identifier-ish token; reject below
      } else {
        while (std::isdigit(static_cast<unsigned char>(peek()))) take();
      }
    }
    double value = std::strtod(text_.substr(start, pos_ - start).c_str(), nullptr);
    bool imaginary = false;
    if (peek() == 'i') {
      // Only the bare unit suffix: "2ix" style tokens are syntax errors.
      take();
      imaginary = true;
      if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
        fail("unexpected characters after imaginary suffix");
    } else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
      fail("implicit multiplication is not supported");
    }
    return Polynomial::constant(n_, imaginary ? Complex(0, value) : Complex(value, 0));
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char take() { return text_[pos_++]; }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(ParseErrorKind::Syntax, pos_, message + " at position " + std::to_string(pos_));
  }

  const std::string& text_;
  int n_;
  std::map<std::string, int> index_;
  size_t pos_ = 0;
};

}  // namespace

Polynomial parsePolynomial(const std::string& text, const std::vector<std::string>& variableNames,
                           int* droppedTerms) {
  Parser parser(text, variableNames);
  Polynomial p = parser.run();
  int dropped = p.prune(1e-14);
  if (droppedTerms) *droppedTerms = dropped;
  return p;
}

}  // namespace newtonscope
