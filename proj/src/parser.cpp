#include "pythlab/parser.hpp"

#include <cctype>
#include <sstream>

namespace pythlab {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {
    if (vars.empty() || vars.size() > static_cast<std::size_t>(kMaxVars))
      throw std::invalid_argument("between one and three variables are supported");
    for (const auto& v : vars)
      if (v.size() != 1 || !std::isalpha(static_cast<unsigned char>(v[0])))
        throw std::invalid_argument("variable names must be single letters");
    nvars_ = std::max<int>(2, static_cast<int>(vars.size()));
  }

  Poly parse() {
    skip_space();
    if (at_end()) throw ParseError("empty expression", pos_);
    Poly p = expression();
    skip_space();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Poly expression() {
    Poly acc = term();
    while (true) {
      skip_space();
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        Poly rhs = term();
        if (c == '+') acc += rhs;
        else acc -= rhs;
      } else {
        return acc;
      }
    }
  }

  // A primary may start here (implicit multiplication).
  bool starts_primary() const {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  Poly term() {
    skip_space();
    if (peek() == '-') {
      ++pos_;
      return -term();
    }
    if (peek() == '+') {
      ++pos_;
      return term();
    }
    Poly acc = power();
    while (true) {
      skip_space();
      char c = peek();
      if (c == '*') {
        ++pos_;
        skip_space();
        if (peek() == '-') {
          ++pos_;
          acc *= -power();
        } else {
          acc *= power();
        }
      } else if (c == '/') {
        std::size_t at = pos_++;
        skip_space();
        Poly d = power();
        if (!d.is_constant()) throw ParseError("division by a non-constant", at);
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d.constant_term();
      } else if (starts_primary()) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly base = primary();
    skip_space();
    if (peek() != '^') return base;
    ++pos_;
    skip_space();
    std::size_t at = pos_;
    if (peek() == '-') throw ParseError("negative exponent", at);
    if (peek() == '+') ++pos_;
    if (peek() == '(') {
      // Parenthesised exponent must still be a nonnegative integer literal.
      ++pos_;
      skip_space();
      if (peek() == '-') throw ParseError("negative exponent", pos_);
      unsigned long e = integer_literal();
      skip_space();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return base.pow(static_cast<unsigned>(e));
    }
    return base.pow(static_cast<unsigned>(integer_literal()));
  }

  unsigned long integer_literal() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", start);
    auto digits = text_.substr(start, pos_ - start);
    if (digits.size() > 6) throw ParseError("exponent too large", start);
    return std::stoul(std::string(digits));
  }

  Poly primary() {
    skip_space();
    std::size_t at = pos_;
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly inner = expression();
      skip_space();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      Int n(std::string(text_.substr(at, pos_ - at)), 10);
      return Poly(Rat(n), nvars_);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i][0] == c) return Poly::var(static_cast<int>(i), nvars_);
      throw ParseError(std::string("unknown variable '") + c + "'", at);
    }
    if (at_end()) throw ParseError("unexpected end of input", at);
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  int nvars_ = 2;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  return Parser(text, vars).parse();
}

std::string to_string(const Poly& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rat mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = m == Mono{};
    bool wrote = false;
    if (constant || mag != 1) {
      os << to_string(mag);
      wrote = true;
    }
    for (int i = 0; i < kMaxVars; ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << '*';
      os << vars.at(i);
      if (m[i] > 1) os << '^' << m[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace pythlab
