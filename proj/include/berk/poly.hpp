#pragma once

#include <algorithm>
#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "berk/elem_traits.hpp"
#include "berk/errors.hpp"

namespace berk {

/// Dense univariate polynomial over an exact field, lowest degree first.
/// Carries a zero element so that constants can be produced without a field
/// object; trailing zero coefficients are never stored.
template <class E>
class Poly {
 public:
  using Elem = E;

  explicit Poly(E zero) : zero_(std::move(zero)) {}
  Poly(E zero, std::vector<E> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const E& a) { return Poly(zero_like(a), {a}); }
  static Poly monomial(const E& a, std::size_t deg) {
    std::vector<E> c(deg + 1, zero_like(a));
    c[deg] = a;
    return Poly(zero_like(a), std::move(c));
  }
  /// z - a
  static Poly linear_root(const E& a) { return Poly(zero_like(a), {-a, one_like(a)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const E& zero() const { return zero_; }
  const std::vector<E>& coeffs() const { return c_; }
  const E& operator[](std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
  const E& lc() const {
    if (c_.empty()) throw ZeroPolynomial("leading coefficient of 0");
    return c_.back();
  }

  /// Order of vanishing at 0. Precondition: nonzero.
  std::size_t low_order() const {
    if (c_.empty()) throw ZeroPolynomial("vanishing order of 0");
    std::size_t i = 0;
    while (berk::is_zero(c_[i])) ++i;
    return i;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.zero_);
    std::vector<E> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (berk::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(a.zero_, std::move(r));
  }
  friend Poly operator*(const Poly& a, const E& s) {
    Poly r(a);
    for (auto& x : r.c_) x = x * s;
    r.trim();
    return r;
  }
  friend Poly operator*(const E& s, const Poly& a) { return a * s; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division over a field.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
    Poly r(*this);
    if (degree() < d.degree()) return {Poly(zero_), r};
    std::vector<E> q(c_.size() - d.c_.size() + 1, zero_);
    const E inv = one_like(zero_) / d.lc();
    for (int k = r.degree() - d.degree(); k >= 0 && !r.is_zero(); k = r.degree() - d.degree()) {
      E f = r.lc() * inv;
      q[static_cast<std::size_t>(k)] = f;
      for (std::size_t i = 0; i < d.c_.size(); ++i) {
        auto& x = r.c_[i + static_cast<std::size_t>(k)];
        x = x - f * d.c_[i];
      }
      r.c_.pop_back();  // leading term cancels exactly
      r.trim();
    }
    return {Poly(zero_, std::move(q)), r};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * (one_like(zero_) / lc());
  }

  E eval(const E& x) const {
    E acc = zero_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(zero_);
    std::vector<E> r;
    r.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * from_int_like(zero_, static_cast<long>(i)));
    return Poly(zero_, std::move(r));
  }

  /// Hasse derivative D^(k): coefficient of y^k in P(z + y).
  Poly hasse(std::size_t k) const {
    if (c_.size() <= k) return Poly(zero_);
    std::vector<E> r;
    r.reserve(c_.size() - k);
    mpz_class binom = 1;  // C(j, k) for j = k
    for (std::size_t j = k; j < c_.size(); ++j) {
      if (j > k) binom = binom * static_cast<unsigned long>(j) / static_cast<unsigned long>(j - k);
      r.push_back(c_[j] * from_int_big(binom));
    }
    return Poly(zero_, std::move(r));
  }

  /// Coefficients of P(c + y) as a polynomial in y (exact Taylor shift).
  Poly shift(const E& c) const {
    std::vector<E> a = c_;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) a[j - 1] = a[j - 1] + c * a[j];
    return Poly(zero_, std::move(a));
  }

  /// P(z^m)
  Poly inflate(std::size_t m) const {
    if (is_zero()) return *this;
    std::vector<E> r((c_.size() - 1) * m + 1, zero_);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * m] = c_[i];
    return Poly(zero_, std::move(r));
  }

  /// Q with P(z) = Q(z^m), if every exponent is divisible by m.
  bool deflatable(std::size_t m) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (i % m != 0 && !berk::is_zero(c_[i])) return false;
    return true;
  }
  Poly deflate(std::size_t m) const {
    assert(deflatable(m));
    std::vector<E> r;
    for (std::size_t i = 0; i < c_.size(); i += m) r.push_back(c_[i]);
    return Poly(zero_, std::move(r));
  }

  template <class F>
  auto map(F&& f) const -> Poly<decltype(f(std::declval<const E&>()))> {
    using R = decltype(f(std::declval<const E&>()));
    std::vector<R> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(f(x));
    return Poly<R>(f(zero_), std::move(r));
  }

  std::string str(const std::string& var = "z") const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (berk::is_zero(c_[i])) continue;
      if (!out.empty()) out += " + ";
      const bool one = c_[i] == one_like(zero_);
      std::string coeff = ElemTraits<E>::str(c_[i]);
      if (ElemTraits<E>::is_compound(c_[i])) coeff = "(" + coeff + ")";
      if (i == 0) {
        out += coeff;
      } else {
        if (!one) out += coeff + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  E from_int_big(const mpz_class& n) const {
    if (n.fits_slong_p()) return from_int_like(zero_, n.get_si());
    // Binomials beyond a machine word do not occur at the supported degrees.
    throw DomainError("binomial coefficient overflow");
  }

  void trim() {
    while (!c_.empty() && berk::is_zero(c_.back())) c_.pop_back();
  }

  E zero_;
  std::vector<E> c_;
};

template <class E>
Poly<E> gcd(Poly<E> a, Poly<E> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class E>
Poly<E> pow(const Poly<E>& a, unsigned k) {
  Poly<E> r = Poly<E>::constant(one_like(a.zero()));
  Poly<E> base = a;
  while (k) {
    if (k & 1U) r = r * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return r;
}

/// Resultant over a field by the Euclidean remainder sequence:
/// Res(f, g) = lc(f)^deg g * prod_{f(a)=0} g(a).
template <class E>
E resultant(const Poly<E>& f0, const Poly<E>& g0) {
  if (f0.is_zero() || g0.is_zero()) return f0.zero();
  Poly<E> f = f0, g = g0;
  E acc = one_like(f.zero());
  for (;;) {
    const int m = f.degree(), n = g.degree();
    if (n == 0) {
      E gm = one_like(acc);
      for (int i = 0; i < m; ++i) gm = gm * g.lc();
      return acc * gm;
    }
    if (m == 0) {
      E fn = one_like(acc);
      for (int i = 0; i < n; ++i) fn = fn * f.lc();
      return acc * fn;
    }
    if (m < n) {
      // Res(f, g) = (-1)^{mn} Res(g, f)
      if ((m * n) % 2 != 0) acc = -acc;
      std::swap(f, g);
      continue;
    }
    // m >= n: Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r)
    Poly<E> r = f % g;
    if (r.is_zero()) return zero_like(acc);
    const int k = r.degree();
    if ((m * n) % 2 != 0) acc = -acc;
    for (int i = 0; i < m - k; ++i) acc = acc * g.lc();
    f = std::move(g);
    g = std::move(r);
  }
}

}  // namespace berk
