#include <cctype>
#include <sstream>
#include <stdexcept>

#include "fuzzsuper/superpoly.hpp"

namespace fuzzsuper {

namespace {

std::string rational_text(const Rational& r) {
  const BigInt n = boost::multiprecision::numerator(r);
  const BigInt d = boost::multiprecision::denominator(r);
  return d == 1 ? n.str() : n.str() + "/" + d.str();
}

std::string monomial_text(const Monomial& m) {
  std::string out;
  auto put = [&](const std::string& s) {
    if (!out.empty()) out += ' ';
    out += s;
  };
  const int exps[3] = {m.a, m.b, m.c};
  for (int k = 0; k < 3; ++k) {
    if (exps[k] == 0) continue;
    std::string f = "x" + std::to_string(k + 1);
    if (exps[k] > 1) f += "^" + std::to_string(exps[k]);
    put(f);
  }
  if (m.mask & kMaskT4) put("t4");
  if (m.mask & kMaskT5) put("t5");
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  SuperPoly parse() {
    SuperPoly out;
    skip();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (!first) {
        if (peek() == '+') {
          ++pos_;
        } else if (peek() == '-') {
          ++pos_;
          sign = -1;
        } else {
          fail("expected '+' or '-' between terms");
        }
        skip();
      }
      out += term() * GaussRational(sign);
      first = false;
      skip();
    }
    return out;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("superpoly parse error at position " + std::to_string(pos_) + ": " + what);
  }

  BigInt digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return BigInt(s_.substr(start, pos_ - start));
  }

  Rational number() {
    Rational r(digits());
    if (peek() == '/') {
      ++pos_;
      const BigInt d = digits();
      if (d == 0) fail("zero denominator");
      r /= Rational(d);
    }
    return r;
  }

  // [sign] number [i] | [sign] i
  GaussRational real_or_imag() {
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    Rational v = 1;
    bool have_number = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = number();
      have_number = true;
    }
    if (peek() == 'i') {
      ++pos_;
      return {0, Rational(sign) * v};
    }
    if (!have_number) fail("expected a number");
    return {Rational(sign) * v, 0};
  }

  GaussRational coefficient() {
    if (peek() == '(') {
      ++pos_;
      skip();
      GaussRational c = real_or_imag();
      skip();
      while (peek() == '+' || peek() == '-') {
        c += real_or_imag();
        skip();
      }
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return c;
    }
    return real_or_imag();
  }

  bool factor_start() const {
    const char c = peek();
    return (c == 'x' || c == 't') && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]));
  }

  SuperPoly factor() {
    const char kind = s_[pos_++];
    const char idx = s_[pos_++];
    if (kind == 'x') {
      if (idx < '1' || idx > '3') fail("coordinate must be x1, x2 or x3");
      int e = 1;
      if (peek() == '^') {
        ++pos_;
        e = digits().convert_to<int>();
      }
      return pow(SuperPoly::x(idx - '1'), e);
    }
    if (idx != '4' && idx != '5') fail("Grassmann generator must be t4 or t5");
    return SuperPoly::theta(idx - '4');
  }

  SuperPoly term() {
    GaussRational c = 1;
    int sign = 1;
    while (peek() == '-' || peek() == '+') {
      if (peek() == '-') sign = -sign;
      ++pos_;
      skip();
    }
    bool have_coeff = false;
    if (!factor_start()) {
      c = coefficient();
      have_coeff = true;
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
        if (!factor_start()) fail("expected a factor after '*'");
      }
    }
    SuperPoly m = SuperPoly::one();
    bool have_factor = false;
    while (factor_start()) {
      m = m * factor();
      have_factor = true;
      skip();
    }
    if (!have_coeff && !have_factor) fail("empty term");
    return m * (c * GaussRational(sign));
  }
};

}  // namespace

std::string to_text(const GaussRational& c) {
  if (c.im == 0) return rational_text(c.re);
  if (c.re == 0) return rational_text(c.im) + "i";
  const std::string im = rational_text(c.im);
  return "(" + rational_text(c.re) + (c.im > 0 ? "+" : "") + im + "i)";
}

std::string to_text(const SuperPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    const std::string mono = monomial_text(m);
    os << to_text(c);
    if (!mono.empty()) os << " * " << mono;
  }
  return os.str();
}

SuperPoly parse_superpoly(const std::string& text) {
  Parser p(text);
  return p.parse();
}

}  // namespace fuzzsuper
