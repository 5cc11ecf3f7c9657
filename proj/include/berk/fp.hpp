#pragma once

#include <cstdint>
#include <string>

#include "berk/elem_traits.hpp"
#include "berk/poly.hpp"

namespace berk {

/// Element of the prime field F_p. The prime travels with the value.
struct Fp {
  std::uint32_t v = 0;
  std::uint32_t p = 2;

  Fp() = default;
  Fp(long value, std::uint32_t prime) : p(prime) {
    long r = value % static_cast<long>(prime);
    v = static_cast<std::uint32_t>(r < 0 ? r + static_cast<long>(prime) : r);
  }

  friend Fp operator+(Fp a, Fp b) { return {static_cast<long>((a.v + b.v) % a.p), a.p}; }
  friend Fp operator-(Fp a, Fp b) { return {static_cast<long>((a.v + a.p - b.v) % a.p), a.p}; }
  friend Fp operator*(Fp a, Fp b) {
    return {static_cast<long>(static_cast<std::uint64_t>(a.v) * b.v % a.p), a.p};
  }
  Fp operator-() const { return {static_cast<long>((p - v) % p), p}; }
  Fp inverse() const;
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
};

Fp pow(Fp a, std::uint64_t k);

template <>
struct ElemTraits<Fp> {
  static Fp zero_like(const Fp& a) { return {0, a.p}; }
  static Fp one_like(const Fp& a) { return {1, a.p}; }
  static Fp from_int_like(const Fp& a, long k) { return {k, a.p}; }
  static bool is_zero(const Fp& a) { return a.v == 0; }
  static std::string str(const Fp& a) { return std::to_string(a.v); }
  static bool is_compound(const Fp&) { return false; }
};

using FpPoly = Poly<Fp>;

/// Element of F_p(s): reduced fraction of F_p polynomials, denominator monic.
/// `var` is the printed name of the indeterminate ('u' for the equal
/// characteristic base, 'T' for the residue field of a Gauss extension).
class FpRat {
 public:
  FpRat() : FpRat(2) {}
  explicit FpRat(std::uint32_t p, long c = 0, char var = 'u');
  FpRat(FpPoly num, FpPoly den, char var = 'u');
  static FpRat from_poly(FpPoly num, char var = 'u');
  /// The indeterminate itself.
  static FpRat variable(std::uint32_t p, char var = 'u');

  std::uint32_t p() const { return p_; }
  char var() const { return var_; }
  const FpPoly& num() const { return num_; }
  const FpPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  friend FpRat operator+(const FpRat& a, const FpRat& b);
  friend FpRat operator-(const FpRat& a, const FpRat& b);
  friend FpRat operator*(const FpRat& a, const FpRat& b);
  friend FpRat operator/(const FpRat& a, const FpRat& b);
  FpRat operator-() const;
  friend bool operator==(const FpRat& a, const FpRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Order of vanishing at s = 0 (INF for zero is handled by callers).
  long ord0() const;
  /// Value at s = 0. Precondition: ord0() >= 0.
  Fp at_zero() const;
  /// True when the element lies in F_p(s^p).
  bool is_pth_power() const;
  /// Precondition: is_pth_power().
  FpRat pth_root() const;

  std::string str() const;

 private:
  void canonicalize();
  std::uint32_t p_;
  char var_;
  FpPoly num_;
  FpPoly den_;
};

template <>
struct ElemTraits<FpRat> {
  static FpRat zero_like(const FpRat& a) { return FpRat(a.p(), 0, a.var()); }
  static FpRat one_like(const FpRat& a) { return FpRat(a.p(), 1, a.var()); }
  static FpRat from_int_like(const FpRat& a, long k) { return FpRat(a.p(), k, a.var()); }
  static bool is_zero(const FpRat& a) { return a.is_zero(); }
  static std::string str(const FpRat& a) { return a.str(); }
  static bool is_compound(const FpRat& a) { return !a.is_constant(); }
};

/// Canonical p-th root of a polynomial whose exponents are all multiples of p
/// (coefficients are fixed by Frobenius on F_p).
FpPoly fp_poly_pth_root(const FpPoly& f);

}  // namespace berk
