#include "mubasis/io.hpp"

#include <cctype>

#include "mubasis/errors.hpp"

namespace mubasis::io {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

  Poly expression() {
    skip_ws();
    Poly result(nvars_);
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
        skip_ws();
      } else if (!first) {
        break;
      }
      Poly t = term();
      result += sign > 0 ? t : -t;
      first = false;
      skip_ws();
      if (peek() != '+' && peek() != '-') break;
    }
    return result;
  }

  PolyVector tuple() {
    skip_ws();
    expect('(');
    PolyVector out;
    while (true) {
      out.push_back(expression());
      skip_ws();
      if (peek() == ',') {
        get();
        continue;
      }
      expect(')');
      break;
    }
    return out;
  }

  std::vector<PolyVector> tuple_list() {
    skip_ws();
    expect('(');
    std::vector<PolyVector> out;
    while (true) {
      out.push_back(tuple());
      skip_ws();
      if (peek() == ',') {
        get();
        continue;
      }
      expect(')');
      break;
    }
    return out;
  }

  void finish() {
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

 private:
  Poly term() {
    Poly acc = factor();
    while (true) {
      skip_ws();
      char c = peek();
      if (c == '*') {
        get();
        if (peek() == '*') fail("'**' is not supported; use '^'");
        skip_ws();
        acc = acc * factor();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c))) {
        acc = acc * factor();  // implicit multiplication
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    skip_ws();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt num(integer());
      BigInt den = 1;
      skip_ws();
      if (peek() == '/') {
        get();
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer denominator");
        den = BigInt(integer());
        if (den == 0) fail("zero denominator");
      }
      Scalar q(num, den);
      q.canonicalize();
      return Poly::constant(nvars_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      get();
      int var = -1;
      for (int v = 0; v < nvars_; ++v)
        if (c == variable_name(v)) var = v;
      if (var < 0) {
        pos_ = start;
        fail(std::string("unknown variable '") + c + "'");
      }
      int e = 1;
      skip_ws();
      if (peek() == '^') {
        get();
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("non-integer exponent");
        std::string digits = integer();
        if (peek() == '.' || peek() == '/') fail("non-integer exponent");
        if (digits.size() > 6) fail("exponent too large");
        e = std::stoi(digits);
      }
      Monomial m;
      m.exp[var] = e;
      return Poly::monomial(nvars_, m, 1);
    }
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) get();
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("syntax error at position " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  int nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, int nvars) {
  Parser p(text, nvars);
  Poly out = p.expression();
  p.finish();
  return out;
}

PolyVector parse_tuple(std::string_view text, int nvars) {
  Parser p(text, nvars);
  PolyVector out = p.tuple();
  p.finish();
  return out;
}

std::vector<PolyVector> parse_tuple_list(std::string_view text, int nvars) {
  Parser p(text, nvars);
  auto out = p.tuple_list();
  p.finish();
  return out;
}

std::string format_tuple(const PolyVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].to_string();
  }
  return out + ")";
}

}  // namespace mubasis::io
