#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "berk/fields.hpp"
#include "berk/poly.hpp"

namespace berk {

/// p-th root of an element, when it exists in the field (characteristic p only).
inline std::optional<mpq_class> pth_root(const MixedCharField&, const mpq_class&) { return std::nullopt; }
inline std::optional<FpRat> pth_root(const EqualCharField&, const FpRat& a) {
  if (!a.is_pth_power()) return std::nullopt;
  return a.pth_root();
}
template <class Base>
std::optional<typename GaussField<Base>::Elem> pth_root(const GaussField<Base>& f,
                                                        const typename GaussField<Base>::Elem& a) {
  const std::size_t p = f.prime();
  auto root_poly = [&](const auto& poly) -> std::optional<Poly<typename Base::Elem>> {
    if (!poly.deflatable(p)) return std::nullopt;
    std::vector<typename Base::Elem> c;
    const auto deflated = poly.deflate(p);
    for (const auto& x : deflated.coeffs()) {
      auto r = pth_root(f.base(), x);
      if (!r) return std::nullopt;
      c.push_back(*r);
    }
    return Poly<typename Base::Elem>(poly.zero(), std::move(c));
  };
  auto n = root_poly(a.num());
  auto d = root_poly(a.den());
  if (!n || !d) return std::nullopt;
  return typename GaussField<Base>::Elem(*n, *d);
}

/// Squarefree decomposition f = c * prod g_i^{m_i} with the g_i monic,
/// squarefree, separable and pairwise coprime. Throws InseparableResidual when
/// f has an inseparable factor that is not a p-th power over the field
/// (e.g. z^p - u), whose roots cannot be separated by derivatives.
template <ValuedField F>
std::vector<std::pair<Poly<typename F::Elem>, long>> squarefree_decomposition(const F& field,
                                                                             const Poly<typename F::Elem>& f) {
  using P = Poly<typename F::Elem>;
  if (f.is_zero()) throw ZeroPolynomial("squarefree decomposition of 0");
  std::vector<std::pair<P, long>> out;
  if (f.degree() == 0) return out;
  P c = gcd(f, f.derivative());
  P w = f.monic() / c;
  long i = 1;
  while (w.degree() > 0) {
    P y = gcd(w, c);
    P z = w / y;
    if (z.degree() > 0) out.emplace_back(z.monic(), i);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) {
    // c = h(z^p) in characteristic p
    const std::uint32_t p = field.characteristic();
    if (p == 0 || !c.deflatable(p)) throw InseparableResidual("unexpected residual " + c.str());
    std::vector<typename F::Elem> roots;
    const P deflated = c.deflate(p);
    for (const auto& x : deflated.coeffs()) {
      auto r = pth_root(field, x);
      if (!r) throw InseparableResidual("inseparable factor " + c.str() + " is not a p-th power");
      roots.push_back(*r);
    }
    P h(c.zero(), std::move(roots));
    for (auto& [g, m] : squarefree_decomposition(field, h)) {
      bool merged = false;
      for (auto& [g2, m2] : out) {
        if (m2 == m * static_cast<long>(p)) {
          g2 = g2 * g;
          merged = true;
        }
      }
      if (!merged) out.emplace_back(g, m * static_cast<long>(p));
    }
  }
  return out;
}

/// Product of the squarefree parts: the separable radical.
template <ValuedField F>
Poly<typename F::Elem> separable_radical(const F& field, const Poly<typename F::Elem>& f) {
  Poly<typename F::Elem> r = Poly<typename F::Elem>::constant(field.one());
  for (const auto& [g, m] : squarefree_decomposition(field, f)) r = r * g;
  return r;
}

/// Number of distinct roots in an algebraic closure, for any nonzero f.
/// Frobenius is a bijection on the closure, so a derivative-free factor
/// D = E(z^p) has as many distinct roots as E.
template <ValuedField F>
long distinct_roots_closure(const F& field, const Poly<typename F::Elem>& g) {
  if (g.is_zero()) throw ZeroPolynomial("distinct roots of 0");
  if (g.degree() <= 0) return 0;
  auto dg = g.derivative();
  if (dg.is_zero()) return distinct_roots_closure(field, g.deflate(field.characteristic()));
  auto d = gcd(g, dg);
  auto a = g / d;  // squarefree, separable
  return a.degree() + distinct_roots_closure(field, d) - gcd(a, d).degree();
}

/// Number of distinct roots in an algebraic closure. The caller must have
/// extracted the inseparable exponent: f' = 0 is a contract violation.
template <ValuedField F>
long distinct_root_count(const F& field, const Poly<typename F::Elem>& f) {
  if (f.is_zero()) throw ZeroPolynomial("distinct roots of 0");
  if (f.degree() == 0) return 0;
  if (f.derivative().is_zero())
    throw InseparableResidual("derivative of " + f.str() + " vanishes; divide exponents by p first");
  return distinct_roots_closure(field, f);
}

/// Determinant by Gaussian elimination over a field.
template <class E>
E determinant(std::vector<std::vector<E>> m, const E& zero) {
  const std::size_t n = m.size();
  E det = one_like(zero);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && is_zero(m[piv][c])) ++piv;
    if (piv == n) return zero;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det = det * m[c][c];
    const E inv = one_like(zero) / m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m[r][c])) continue;
      const E f = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] = m[r][k] - f * m[c][k];
    }
  }
  return det;
}

/// Sylvester resultant of f and g taken with formal degrees m and n
/// (leading coefficients may vanish).
template <class E>
E sylvester_resultant(const Poly<E>& f, int m, const Poly<E>& g, int n, const E& zero) {
  const int size = m + n;
  if (size == 0) return one_like(zero);
  std::vector<std::vector<E>> s(static_cast<std::size_t>(size), std::vector<E>(static_cast<std::size_t>(size), zero));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[r][r + i] = f[static_cast<std::size_t>(m - i)];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = g[static_cast<std::size_t>(n - i)];
  return determinant(std::move(s), zero);
}

/// Polynomial through (xs[i], ys[i]) by Newton divided differences.
template <class E>
Poly<E> interpolate(const std::vector<E>& xs, const std::vector<E>& ys) {
  const std::size_t n = xs.size();
  std::vector<E> dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  const E zero = zero_like(xs.front());
  Poly<E> acc(zero);
  for (std::size_t k = n; k-- > 0;) acc = acc * Poly<E>::linear_root(xs[k]) + Poly<E>::constant(dd[k]);
  return acc;
}

}  // namespace berk
