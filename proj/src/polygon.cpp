#include "berk/polygon.hpp"

#include <sstream>

namespace berk {

NewtonPolygon newton_polygon(const std::vector<ValQ>& vals) {
  NewtonPolygon out;
  std::vector<NewtonPolygon::Vertex> pts;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i].is_finite()) pts.push_back({static_cast<long>(i), vals[i]});
  if (pts.empty()) throw ZeroPolynomial("Newton polygon of 0");
  out.low_order = pts.front().exponent;
  out.degree = pts.back().exponent;

  // Monotone chain; points are already sorted by exponent.
  std::vector<NewtonPolygon::Vertex> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // Drop b unless the turn a -> b -> pt is strictly convex (counterclockwise).
      const mpq_class cross = (b.valuation.q() - a.valuation.q()) * (pt.exponent - a.exponent) -
                              (pt.valuation.q() - a.valuation.q()) * (b.exponent - a.exponent);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  out.vertices = hull;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const long len = hull[k].exponent - hull[k - 1].exponent;
    const mpq_class s = (hull[k].valuation.q() - hull[k - 1].valuation.q()) / len;
    out.slopes.push_back({ValQ(s), len});
  }
  return out;
}

std::vector<std::pair<ValQ, long>> NewtonPolygon::root_valuations() const {
  std::vector<std::pair<ValQ, long>> out;
  // Slopes increase left to right, so root valuations -s decrease; report
  // them in increasing order.
  for (auto it = slopes.rbegin(); it != slopes.rend(); ++it) out.emplace_back(-it->slope, it->multiplicity);
  if (low_order > 0) out.emplace_back(ValQ::inf(), low_order);
  return out;
}

std::vector<ValQ> NewtonPolygon::root_valuation_multiset() const {
  std::vector<ValQ> out;
  for (const auto& [v, m] : root_valuations())
    for (long i = 0; i < m; ++i) out.push_back(v);
  return out;
}

std::pair<long, long> NewtonPolygon::segment_for(const ValQ& root_val) const {
  for (std::size_t k = 0; k < slopes.size(); ++k)
    if (-slopes[k].slope == root_val) return {vertices[k].exponent, vertices[k + 1].exponent};
  throw DomainError("no hull segment for root valuation " + root_val.str());
}

std::string NewtonPolygon::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) os << ",";
    os << "(" << vertices[i].exponent << "," << vertices[i].valuation.str() << ")";
  }
  os << "]";
  return os.str();
}

}  // namespace berk
