// Copyright 2026 The freeconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "freeconv/measure_parser.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace freeconv::measures {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MeasureSpec parse() {
    MeasureSpec spec = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return spec;
  }

  Rational lone_number() {
    Rational r = number();
    skip();
    if (pos_ != s_.size()) fail("trailing characters after number");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_), pos_);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-' || s_[pos_] == '_'))
      ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  mpz_class digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Rational number() {
    skip();
    bool negative = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      negative = s_[pos_] == '-';
      ++pos_;
    }
    Rational value(digits());
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      const std::size_t start = pos_;
      mpz_class frac = digits();
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, pos_ - start);
      value += Rational(frac, scale);
    }
    skip();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      skip();
      const std::size_t at = pos_;
      Rational den(digits());
      if (den == 0) {
        pos_ = at;
        fail("division by zero");
      }
      value /= den;
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
  }

  Polynomial integer_list() {
    std::vector<Rational> c;
    do {
      const std::size_t at = (skip(), pos_);
      Rational v = number();
      if (v.get_den() != 1) {
        pos_ = at;
        fail("rat() coefficients must be integers");
      }
      c.push_back(v);
    } while (accept(','));
    return Polynomial(std::move(c));
  }

  MeasureSpec expr() {
    MeasureSpec spec = term();
    while (accept('*')) spec = boxtimes(spec, term());
    return spec;
  }

  MeasureSpec term() {
    MeasureSpec base = atom();
    if (!accept('^')) return base;
    skip();
    const std::size_t at = pos_;
    Rational e;
    if (accept('(')) {
      e = number();
      expect(')');
    } else {
      e = number();
      if (e.get_den() != 1) fail("non-integer exponent needs parentheses");
    }
    if (e <= 0) {
      pos_ = at;
      fail("exponent must be positive");
    }
    return free_power(base, e);
  }

  MeasureSpec atom() {
    skip();
    const std::size_t at = pos_;
    if (accept('(')) {
      MeasureSpec inner = expr();
      expect(')');
      return inner;
    }
    const std::string name = identifier();
    if (name.empty()) fail("expected a measure");
    try {
      if (name == "mp") {
        expect('(');
        skip();
        const std::size_t arg = pos_;
        Rational c = number();
        if (c <= 0) {
          pos_ = arg;
          fail("mp(c) requires c > 0");
        }
        expect(')');
        return MeasureSpec::of(mp(c));
      }
      if (name == "as") return MeasureSpec::of(arcsine());
      if (name == "id") return MeasureSpec();
      if (name == "rat") {
        expect('(');
        Polynomial n = integer_list();
        expect(';');
        Polynomial d = integer_list();
        expect(')');
        return MeasureSpec::of(rational_factor(std::move(n), std::move(d)));
      }
    } catch (const DomainError& e) {
      throw ParseError(e.what(), at);
    }
    if (auto spec = alias_spec(name)) return *spec;
    pos_ = at;
    fail("unknown measure '" + name + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MeasureSpec parse_measure(std::string_view text) { return Parser(text).parse(); }

Rational parse_rational(std::string_view text) { return Parser(text).lone_number(); }

std::optional<MeasureSpec> alias_spec(std::string_view name) {
  const MeasureSpec mp1 = MeasureSpec::of(mp(1));
  const MeasureSpec as = MeasureSpec::of(arcsine());
  if (name == "fc2") return free_power(mp1, 2);
  if (name == "fc3") return free_power(mp1, 3);
  if (name == "bures") return boxtimes(as, mp1);
  if (name == "bures2") return boxtimes(as, free_power(mp1, 2));
  if (name == "mp-sqrt") return free_power(mp1, Rational(1, 2));
  if (name == "mp-cbrt") return free_power(mp1, Rational(1, 3));
  return std::nullopt;
}

std::string format_parse_error(std::string_view text, const ParseError& err) {
  std::string out(text);
  out += '\n';
  out += std::string(std::min(err.position(), text.size()), ' ');
  out += "^ ";
  out += err.what();
  return out;
}

}  // namespace freeconv::measures
