#pragma once

#include <string>
#include <utility>
#include <vector>

#include "berk/fields.hpp"
#include "berk/poly.hpp"
#include "berk/valq.hpp"

namespace berk {

/// Lower convex hull of {(i, val c_i) : c_i != 0}.
///
/// Sign convention: a hull segment of slope s and horizontal length m
/// certifies exactly m roots (with multiplicity, in an algebraic closure)
/// of valuation -s. Roots at 0 are not on the hull; they are counted by
/// `low_order`.
struct NewtonPolygon {
  struct Vertex {
    long exponent;
    ValQ valuation;
  };
  struct Slope {
    ValQ slope;
    long multiplicity;
  };

  std::vector<Vertex> vertices;
  std::vector<Slope> slopes;
  long low_order = 0;
  long degree = 0;

  /// (root valuation, multiplicity), increasing in valuation; the roots at
  /// 0 appear last with valuation INF.
  std::vector<std::pair<ValQ, long>> root_valuations() const;
  /// Flat multiset of root valuations.
  std::vector<ValQ> root_valuation_multiset() const;
  /// Index range [i0, i1] of the segment whose roots have valuation v.
  std::pair<long, long> segment_for(const ValQ& root_val) const;
  std::string str() const;
};

/// Hull of a valuation vector (INF marks a zero coefficient).
NewtonPolygon newton_polygon(const std::vector<ValQ>& vals);

template <ValuedField F>
std::vector<ValQ> coefficient_valuations(const F& field, const Poly<typename F::Elem>& f) {
  std::vector<ValQ> v;
  v.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) v.push_back(field.val(c));
  return v;
}

template <ValuedField F>
NewtonPolygon newton_polygon(const F& field, const Poly<typename F::Elem>& f) {
  if (f.is_zero()) throw ZeroPolynomial("Newton polygon of 0");
  return newton_polygon(coefficient_valuations(field, f));
}

/// val |f(zeta_{center, rho})|: min_i val(c_i(center)) + i*rho over the
/// Taylor coefficients at center.
template <ValuedField F>
ValQ gauss_eval(const F& field, const Poly<typename F::Elem>& f, const typename F::Elem& center,
                const ValQ& rho) {
  if (f.is_zero()) throw ZeroPolynomial("Gauss norm of 0");
  if (!rho.is_finite()) throw DomainError("gauss_eval needs a finite radius valuation");
  const auto g = f.shift(center);
  ValQ best = ValQ::inf();
  for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
    if (is_zero(g.coeffs()[i])) continue;
    best = min(best, field.val(g.coeffs()[i]) + rho * static_cast<long>(i));
  }
  return best;
}

enum class Boundary { Open, Closed };

/// Roots z (with multiplicity) with val(z - center) >= rho (closed) or
/// > rho (open). rho may be INF.
template <ValuedField F>
long count_roots_in_disk(const F& field, const Poly<typename F::Elem>& f, const typename F::Elem& center,
                         const ValQ& rho, Boundary boundary) {
  if (f.is_zero()) throw ZeroPolynomial("root count of 0");
  const auto poly = newton_polygon(field, f.shift(center));
  long n = 0;
  for (const auto& [v, m] : poly.root_valuations()) {
    const bool inside = boundary == Boundary::Closed ? v >= rho : v > rho;
    if (inside) n += m;
  }
  return n;
}

/// Residual polynomial of the hull segment carrying the roots of valuation
/// `root_val`. With e the denominator of root_val in the value group and
/// pi_w an element of valuation w = e*root_val, the residual polynomial is
/// R(X) = sum_k res(g_{i0+ek} pi_w^k / g_{i0}) X^k in X = y^e / pi_w.
/// Its nonzero roots label the residue classes of those roots.
template <ValuedField F>
struct SegmentResidue {
  ValQ root_val;
  long e = 1;
  long length = 0;
  Poly<typename F::ResidueField::Elem> residual;
};

template <ValuedField F>
long ramification_of(const F& field, const ValQ& v) {
  const mpq_class scaled = v.q() * field.value_group_denominator();
  return mpz_class(scaled.get_den()).get_si();
}

template <ValuedField F>
SegmentResidue<F> segment_residue(const F& field, const Poly<typename F::Elem>& g, const NewtonPolygon& poly,
                                  const ValQ& root_val) {
  const auto [i0, i1] = poly.segment_for(root_val);
  SegmentResidue<F> out{root_val, ramification_of(field, root_val), i1 - i0,
                        Poly<typename F::ResidueField::Elem>(field.residue_field().zero())};
  const long e = out.e;
  const auto pi_w = field.element_of_valuation(root_val * e);
  const auto& lead = g[static_cast<std::size_t>(i0)];
  const ValQ base = field.val(lead);
  std::vector<typename F::ResidueField::Elem> coeffs;
  typename F::Elem scale = field.one();
  for (long i = i0; i <= i1; i += e) {
    const auto& c = g[static_cast<std::size_t>(i)];
    if (!is_zero(c) && field.val(c) + root_val * (i - i0) == base) {
      coeffs.push_back(field.residue(c * scale / lead));
    } else {
      coeffs.push_back(field.residue_field().zero());
    }
    scale = scale * *pi_w;
  }
  out.residual = Poly<typename F::ResidueField::Elem>(field.residue_field().zero(), std::move(coeffs));
  return out;
}

}  // namespace berk
