#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "berk/berkpoint.hpp"
#include "berk/fields.hpp"
#include "berk/valq.hpp"

namespace berk {

/// Poly-radius tuple of an open ball in the two standard charts of P^1,
/// stored as valuations (entry v means multiplicative radius p^(-v)).
/// Row t belongs to chart T_t; the affine coordinate is z = T1 / T2.
struct PolyRadiusTuple {
  std::vector<std::vector<ValQ>> entries;

  PolyRadiusTuple() : entries(2, std::vector<ValQ>(2, ValQ(0))) {}
  PolyRadiusTuple(ValQ r11, ValQ r12, ValQ r21, ValQ r22)
      : entries{{std::move(r11), std::move(r12)}, {std::move(r21), std::move(r22)}} {}

  const ValQ& at(std::size_t i, std::size_t j) const { return entries.at(i).at(j); }
  std::size_t size() const { return entries.size(); }
  friend bool operator==(const PolyRadiusTuple&, const PolyRadiusTuple&) = default;

  /// "((v11,v12),(v21,v22))"
  std::string str() const;
  static PolyRadiusTuple parse(const std::string& s);
};

/// Which chart indices have a coordinate of maximal absolute value at [a : 1].
std::array<bool, 2> maximal_charts(const ValQ& val_a);

/// Tuple of the open ball of radius valuation v around [a : 1].
PolyRadiusTuple tuple_of_ball(const ValQ& val_a, const ValQ& v);

struct ChartRadius {
  std::optional<ValQ> radius;  // empty: the set is a neighbourhood of infinity
  bool infinity_neighborhood() const { return !radius.has_value(); }
};

/// Inverse of tuple_of_ball.
ChartRadius radius_of_tuple(const ValQ& val_a, const PolyRadiusTuple& t);

/// Product ordering functional: valuation of the product of all entries.
ValQ g_eval(const PolyRadiusTuple& t);

/// Affine-chart value M from the chart value M'' at a point with coordinate
/// valuations t1 = val T1(p), t2 = val T2(p). All values are valuations.
ValQ M_from_chart(const ValQ& mpp, const ValQ& t1, const ValQ& t2);

template <ValuedField F>
PolyRadiusTuple tuple_of_ball(const F& field, const typename F::Elem& a, const ValQ& v) {
  return tuple_of_ball(field.val(a), v);
}

template <ValuedField F>
ChartRadius radius_of_tuple(const F& field, const typename F::Elem& a, const PolyRadiusTuple& t) {
  return radius_of_tuple(field.val(a), t);
}

/// Image of a point of the closed unit disk in the reduction A^1 over the
/// residue field: a closed point, or the generic point for the Gauss point.
template <ValuedField F>
struct ReducedPoint {
  bool generic = false;
  std::optional<typename F::ResidueField::Elem> value;
  friend bool operator==(const ReducedPoint& a, const ReducedPoint& b) {
    return a.generic == b.generic && a.value == b.value;
  }
};

template <ValuedField F>
ReducedPoint<F> reduce_disk_point(const F& field, const BerkPoint<F>& x) {
  if (x.is_infinity()) throw OutsideUnitDisk("infinity");
  if (field.val(x.center()) < ValQ(0) || x.rho() < ValQ(0)) throw OutsideUnitDisk(x.str(field));
  if (x.rho() == ValQ(0)) return {true, std::nullopt};
  return {false, field.residue(x.center())};
}

/// Whether the probe lies in the open unit ball around x, i.e. in the
/// reduction fiber of x.
template <ValuedField F>
bool reduction_fiber_contains(const F& field, const typename F::Elem& x, const BerkPoint<F>& probe) {
  if (field.val(x) < ValQ(0)) throw OutsideUnitDisk(field.str(x));
  if (probe.is_infinity()) throw OutsideUnitDisk("infinity");
  if (field.val(probe.center()) < ValQ(0) || probe.rho() < ValQ(0)) throw OutsideUnitDisk(probe.str(field));
  return probe.rho() > ValQ(0) && field.val(probe.center() - x) > ValQ(0);
}

}  // namespace berk
