#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "berk/fp.hpp"

namespace berk {

/// Residue field F_p of the discretely valued base domains.
class PrimeField {
 public:
  using Elem = Fp;
  explicit PrimeField(std::uint32_t p) : p_(p) {}
  std::uint32_t p() const { return p_; }
  Fp zero() const { return Fp(0, p_); }
  Fp one() const { return Fp(1, p_); }
  Fp from_int(long k) const { return Fp(k, p_); }

  /// Roots in F_p with multiplicities, by exhaustive search.
  std::vector<std::pair<Fp, int>> roots(const FpPoly& f) const;
  /// Exact irreducibility test (Ben-Or).
  std::optional<bool> is_irreducible(const FpPoly& f) const;
  std::string str(const Fp& a) const { return std::to_string(a.v); }

 private:
  std::uint32_t p_;
};

/// Residue field F_p(T) of a Gauss extension; T is the reduction of the
/// normalized parameter.
class FpRatField {
 public:
  using Elem = FpRat;
  explicit FpRatField(std::uint32_t p) : p_(p) {}
  std::uint32_t p() const { return p_; }
  FpRat zero() const { return FpRat(p_, 0, 'T'); }
  FpRat one() const { return FpRat(p_, 1, 'T'); }
  FpRat from_int(long k) const { return FpRat(p_, k, 'T'); }

  /// Roots lying in F_p(T) with multiplicities. Returns nullopt when the
  /// divisor enumeration of the rational-root search is too large.
  std::optional<std::vector<std::pair<FpRat, int>>> roots(const Poly<FpRat>& f) const;
  /// nullopt when irreducibility cannot be decided by the supported tests
  /// (degree 1, purely inseparable binomials, degree <= 3 root search).
  std::optional<bool> is_irreducible(const Poly<FpRat>& f) const;
  std::string str(const FpRat& a) const { return a.str(); }

 private:
  std::uint32_t p_;
};

/// Monic irreducible factorization over F_p by trial division; nullopt when
/// the search space exceeds a fixed cap.
std::optional<std::vector<std::pair<FpPoly, int>>> factor_fp_poly(const FpPoly& f);

/// Multiplicity of r as a root of f (f nonzero).
template <class E>
int root_multiplicity(Poly<E> f, const E& r) {
  int m = 0;
  const Poly<E> lin = Poly<E>::linear_root(r);
  for (;;) {
    auto [q, rem] = f.divmod(lin);
    if (!rem.is_zero()) return m;
    ++m;
    f = std::move(q);
  }
}

/// Number of roots of f (in an algebraic closure) of multiplicity exactly one.
template <class E>
int simple_root_count(const Poly<E>& f) {
  if (f.degree() <= 0) return 0;
  Poly<E> g = gcd(f, f.derivative());
  Poly<E> a = f / g;
  return a.degree() - gcd(a, g).degree();
}

}  // namespace berk
