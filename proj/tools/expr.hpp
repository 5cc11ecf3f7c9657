#pragma once

#include <cctype>
#include <string>
#include <type_traits>

#include "berk/berkpoint.hpp"
#include "berk/fields.hpp"
#include "problem.hpp"

namespace berkcli {

/// Recursive-descent reader for field elements:
///   expr := term (('+' | '-') term)*
///   term := unary (('*' | '/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' ['-'] digits)?
///   atom := digits | 'u' | '(' expr ')'
/// 'u' is the uniformizer of F_p((u)) and is rejected in mixed mode.
template <berk::ValuedField F>
class ElemParser {
 public:
  using Elem = typename F::Elem;

  ElemParser(const F& field, const Located& src) : field_(field), src_(src) {}

  Elem parse_all() {
    Elem e = expr();
    skip();
    if (pos_ != src_.text.size()) fail("unexpected '" + std::string(1, src_.text[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, src_.line, src_.col + static_cast<int>(pos_));
  }
  void skip() {
    while (pos_ < src_.text.size() && std::isspace(static_cast<unsigned char>(src_.text[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < src_.text.size() && src_.text[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Elem expr() {
    Elem acc = term();
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }

  Elem term() {
    Elem acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        const std::size_t at = pos_;
        Elem d = unary();
        if (berk::is_zero(d)) {
          pos_ = at;
          fail("division by zero");
        }
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  Elem unary() {
    if (eat('-')) return field_.zero() - unary();
    return power();
  }

  Elem power() {
    Elem base = atom();
    if (!eat('^')) return base;
    const bool neg = eat('-');
    skip();
    const mpz_class n = digits("exponent");
    if (n > 4096) fail("exponent too large");
    Elem r = field_.one();
    for (long i = 0; i < n.get_si(); ++i) r = r * base;
    if (neg) {
      if (berk::is_zero(r)) fail("negative power of zero");
      r = field_.one() / r;
    }
    return r;
  }

  Elem atom() {
    skip();
    if (pos_ >= src_.text.size()) fail("expected a number, 'u' or '('");
    const char c = src_.text[pos_];
    if (c == '(') {
      ++pos_;
      Elem e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == 'u') {
      if constexpr (std::is_same_v<F, berk::EqualCharField>) {
        ++pos_;
        return *field_.element_of_valuation(berk::ValQ(1));
      } else {
        fail("'u' is only available in equal characteristic");
      }
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return from_integer(digits("number"));
    fail("unexpected '" + std::string(1, c) + "'");
  }

  mpz_class digits(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < src_.text.size() && std::isdigit(static_cast<unsigned char>(src_.text[pos_]))) ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    return mpz_class(src_.text.substr(start, pos_ - start));
  }

  Elem from_integer(const mpz_class& n) const {
    if constexpr (std::is_same_v<Elem, mpq_class>) {
      return mpq_class(n);
    } else {
      const mpz_class r = n % field_.prime();
      return field_.from_int(r.get_si());
    }
  }

  const F& field_;
  const Located& src_;
  std::size_t pos_ = 0;
};

template <berk::ValuedField F>
typename F::Elem parse_elem(const F& field, const Located& src) {
  return ElemParser<F>(field, src).parse_all();
}

inline berk::ValQ parse_valq(const Located& src) {
  try {
    return berk::ValQ::parse(src.text);
  } catch (const berk::DomainError&) {
    throw ParseError("expected a rational valuation, got '" + src.text + "'", src.line, src.col);
  }
}

/// point := 'inf' | 'disk(' elem ';' valuation ')' | elem
template <berk::ValuedField F>
berk::BerkPoint<F> parse_point(const F& field, const Located& src) {
  using P = berk::BerkPoint<F>;
  const std::string& s = src.text;
  if (s == "inf") return P::infinity();
  if (s.rfind("disk(", 0) == 0) {
    if (s.back() != ')') throw ParseError("expected ')' closing disk(...)", src.line, src.col + static_cast<int>(s.size()));
    const auto semi = s.rfind(';');
    if (semi == std::string::npos) throw ParseError("expected 'disk(center; valuation)'", src.line, src.col);
    Located c{s.substr(5, semi - 5), src.line, src.col + 5};
    while (!c.text.empty() && std::isspace(static_cast<unsigned char>(c.text.back()))) c.text.pop_back();
    std::size_t lead = 0;
    while (lead < c.text.size() && std::isspace(static_cast<unsigned char>(c.text[lead]))) ++lead;
    c.text.erase(0, lead);
    c.col += static_cast<int>(lead);
    std::size_t vs = semi + 1;
    while (vs < s.size() && std::isspace(static_cast<unsigned char>(s[vs]))) ++vs;
    std::size_t ve = s.size() - 1;
    while (ve > vs && std::isspace(static_cast<unsigned char>(s[ve - 1]))) --ve;
    const Located v{s.substr(vs, ve - vs), src.line, src.col + static_cast<int>(vs)};
    return P::type_ii(parse_elem(field, c), parse_valq(v));
  }
  return P::type_i(parse_elem(field, src));
}

}  // namespace berkcli
