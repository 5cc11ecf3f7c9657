#pragma once

#include <random>
#include <vector>

#include "berk/fields.hpp"
#include "berk/poly.hpp"

namespace testgen {

using namespace berk;

inline long small(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline mpq_class random_elem(std::mt19937_64& rng, const MixedCharField& f) {
  mpq_class a(small(rng, -40, 40), small(rng, 1, 30));
  a.canonicalize();
  const long k = small(rng, -2, 3);
  mpq_class pk = 1;
  for (long i = 0; i < std::abs(k); ++i) pk *= f.prime();
  return k >= 0 ? mpq_class(a * pk) : mpq_class(a / pk);
}

inline FpPoly random_fp_poly(std::mt19937_64& rng, std::uint32_t p, int maxdeg, bool nonzero) {
  for (;;) {
    std::vector<Fp> c;
    const long d = small(rng, 0, maxdeg);
    for (long i = 0; i <= d; ++i) c.emplace_back(small(rng, 0, p - 1), p);
    FpPoly r(Fp(0, p), std::move(c));
    if (!nonzero || !r.is_zero()) return r;
  }
}

inline FpRat random_elem(std::mt19937_64& rng, const EqualCharField& f) {
  const std::uint32_t p = f.prime();
  return FpRat(random_fp_poly(rng, p, 3, false), random_fp_poly(rng, p, 2, true), 'u');
}

template <class Base>
GaussElem<typename Base::Elem> random_elem(std::mt19937_64& rng, const GaussField<Base>& f) {
  std::vector<typename Base::Elem> c;
  const long d = small(rng, 0, 2);
  for (long i = 0; i <= d; ++i) c.push_back(random_elem(rng, f.base()));
  return GaussElem<typename Base::Elem>::from_poly(Poly<typename Base::Elem>(f.base().zero(), std::move(c)));
}

/// Random element of nonnegative valuation.
template <class F>
typename F::Elem random_integral(std::mt19937_64& rng, const F& f) {
  for (;;) {
    auto a = random_elem(rng, f);
    if (f.val(a) >= ValQ(0)) return a;
  }
}

}  // namespace testgen
