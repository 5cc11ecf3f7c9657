#pragma once

#include <gmpxx.h>

#include <string>

namespace berk {

/// Context-carrying construction for element types. Elements of F_p and of
/// the rational-function fields remember their prime, so constants are built
/// "like" an existing element.
template <class E>
struct ElemTraits;

template <>
struct ElemTraits<mpq_class> {
  static mpq_class zero_like(const mpq_class&) { return 0; }
  static mpq_class one_like(const mpq_class&) { return 1; }
  static mpq_class from_int_like(const mpq_class&, long k) { return k; }
  static bool is_zero(const mpq_class& a) { return sgn(a) == 0; }
  static std::string str(const mpq_class& a) { return a.get_str(); }
  /// Whether str() needs parentheses inside a product.
  static bool is_compound(const mpq_class& a) { return sgn(a) < 0 || a.get_den() != 1; }
};

template <class E>
E zero_like(const E& e) { return ElemTraits<E>::zero_like(e); }
template <class E>
E one_like(const E& e) { return ElemTraits<E>::one_like(e); }
template <class E>
E from_int_like(const E& e, long k) { return ElemTraits<E>::from_int_like(e, k); }
template <class E>
bool is_zero(const E& e) { return ElemTraits<E>::is_zero(e); }
template <class E>
std::string to_str(const E& e) { return ElemTraits<E>::str(e); }

}  // namespace berk
