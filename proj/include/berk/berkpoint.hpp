#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "berk/errors.hpp"
#include "berk/fields.hpp"
#include "berk/valq.hpp"

namespace berk {

/// Point of the Berkovich projective line of type I or II, or the point at
/// infinity. TypeII(a, rho) is the closed disk {z : val(z - a) >= rho};
/// TypeI(a) is the degenerate disk of radius INF.
template <ValuedField F>
class BerkPoint {
 public:
  using Elem = typename F::Elem;
  enum class Kind { TypeI, TypeII, Infinity };

  static BerkPoint type_i(Elem a) { return BerkPoint(Kind::TypeI, std::move(a), ValQ::inf()); }
  static BerkPoint type_ii(Elem a, ValQ rho) {
    if (rho.is_inf()) return type_i(std::move(a));
    return BerkPoint(Kind::TypeII, std::move(a), std::move(rho));
  }
  static BerkPoint infinity() { return BerkPoint(Kind::Infinity, std::nullopt, ValQ::inf()); }

  Kind kind() const { return kind_; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  bool is_type_i() const { return kind_ == Kind::TypeI; }
  bool is_type_ii() const { return kind_ == Kind::TypeII; }
  const Elem& center() const {
    if (!center_) throw DomainError("the point at infinity has no center");
    return *center_;
  }
  /// Radius valuation; INF for type I. Undefined for infinity.
  const ValQ& rho() const { return rho_; }

  std::string str(const F& field) const {
    switch (kind_) {
      case Kind::Infinity: return "inf";
      case Kind::TypeI: return field.str(*center_);
      default: return "disk(" + field.str(*center_) + "; " + rho_.str() + ")";
    }
  }

 private:
  BerkPoint(Kind k, std::optional<Elem> c, ValQ r) : kind_(k), center_(std::move(c)), rho_(std::move(r)) {}
  Kind kind_;
  std::optional<Elem> center_;
  ValQ rho_;
};

/// x <= y: the disk of x is contained in the disk of y.
template <ValuedField F>
bool leq(const F& field, const BerkPoint<F>& x, const BerkPoint<F>& y) {
  if (y.is_infinity()) return true;
  if (x.is_infinity()) return false;
  if (x.rho() < y.rho()) return false;
  return field.val(x.center() - y.center()) >= y.rho();
}

template <ValuedField F>
bool same_point(const F& field, const BerkPoint<F>& x, const BerkPoint<F>& y) {
  if (x.kind() != y.kind()) return false;
  if (x.is_infinity()) return true;
  return x.rho() == y.rho() && field.val(x.center() - y.center()) >= x.rho();
}

template <ValuedField F>
bool lt(const F& field, const BerkPoint<F>& x, const BerkPoint<F>& y) {
  return leq(field, x, y) && !same_point(field, x, y);
}

/// Smallest point above both.
template <ValuedField F>
BerkPoint<F> join(const F& field, const BerkPoint<F>& x, const BerkPoint<F>& y) {
  if (x.is_infinity() && y.is_infinity()) throw BothInfinite("join of infinity with itself");
  if (x.is_infinity() || y.is_infinity()) return BerkPoint<F>::infinity();
  const ValQ r = min(min(x.rho(), y.rho()), field.val(x.center() - y.center()));
  return BerkPoint<F>::type_ii(x.center(), r);
}

/// Finite subtree given by its vertices; every non-top vertex has an edge to
/// the smallest vertex strictly above it.
template <ValuedField F>
struct FiniteTree {
  struct Edge {
    std::size_t lower;
    std::size_t upper;
  };
  std::vector<BerkPoint<F>> vertices;
  std::vector<Edge> edges;
  std::size_t top = 0;

  bool contains_infinity() const {
    return std::any_of(vertices.begin(), vertices.end(), [](const auto& v) { return v.is_infinity(); });
  }
  /// Point of an edge at radius valuation rho, strictly between its endpoints.
  BerkPoint<F> point_on_edge(const Edge& e, const ValQ& rho) const {
    return BerkPoint<F>::type_ii(vertices[e.lower].center(), rho);
  }
  /// Endpoint radius valuations (lower, upper); the upper one is empty for
  /// an edge to infinity.
  std::pair<ValQ, std::optional<ValQ>> edge_range(const Edge& e) const {
    const auto& hi = vertices[e.upper];
    return {vertices[e.lower].rho(), hi.is_infinity() ? std::nullopt : std::optional<ValQ>(hi.rho())};
  }
};

namespace detail {

template <ValuedField F>
void link_tree(const F& field, FiniteTree<F>& t) {
  t.edges.clear();
  const std::size_t n = t.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !lt(field, t.vertices[i], t.vertices[j])) continue;
      if (best == n || leq(field, t.vertices[j], t.vertices[best])) best = j;
    }
    if (best == n) t.top = i;
    else t.edges.push_back({i, best});
  }
}

// Canonical order: infinity first, then decreasing disks (increasing rho),
// ties by printed center.
template <ValuedField F>
bool canonical_less(const F& field, const BerkPoint<F>& a, const BerkPoint<F>& b) {
  if (a.is_infinity() != b.is_infinity()) return a.is_infinity();
  if (a.is_infinity()) return false;
  if (a.rho() != b.rho()) return a.rho() < b.rho();
  return field.str(a.center()) < field.str(b.center());
}

}  // namespace detail

/// Smallest subtree containing the points: inputs together with their
/// pairwise joins, split at every vertex.
template <ValuedField F>
FiniteTree<F> convex_hull(const F& field, std::vector<BerkPoint<F>> pts) {
  if (pts.empty()) throw EmptyTree("convex hull of no points");
  std::sort(pts.begin(), pts.end(),
            [&](const auto& a, const auto& b) { return detail::canonical_less(field, a, b); });
  std::vector<BerkPoint<F>> cand = pts;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (!(pts[i].is_infinity() && pts[j].is_infinity())) cand.push_back(join(field, pts[i], pts[j]));
  FiniteTree<F> t;
  for (auto& c : cand) {
    bool dup = false;
    for (const auto& v : t.vertices) dup = dup || same_point(field, v, c);
    if (!dup) t.vertices.push_back(std::move(c));
  }
  std::stable_sort(t.vertices.begin(), t.vertices.end(),
                   [&](const auto& a, const auto& b) { return detail::canonical_less(field, a, b); });
  detail::link_tree(field, t);
  return t;
}

/// Tree with exactly the given vertices (must be closed under joins).
template <ValuedField F>
FiniteTree<F> tree_from_vertices(const F& field, std::vector<BerkPoint<F>> vs) {
  if (vs.empty()) throw EmptyTree("tree without vertices");
  return convex_hull(field, std::move(vs));
}

template <ValuedField F>
bool tree_contains(const F& field, const FiniteTree<F>& t, const BerkPoint<F>& x) {
  for (const auto& v : t.vertices)
    if (same_point(field, v, x)) return true;
  for (const auto& e : t.edges)
    if (leq(field, t.vertices[e.lower], x) && leq(field, x, t.vertices[e.upper])) return true;
  return false;
}

/// First point of the tree on the path from x toward it.
template <ValuedField F>
BerkPoint<F> retract(const F& field, const BerkPoint<F>& x, const FiniteTree<F>& t) {
  if (t.vertices.empty()) throw EmptyTree("retraction onto an empty tree");
  std::optional<BerkPoint<F>> m;
  for (const auto& v : t.vertices) {
    if (x.is_infinity() && v.is_infinity()) return x;
    auto j = join(field, x, v);
    if (!m || leq(field, j, *m)) m = std::move(j);
  }
  const auto& top = t.vertices[t.top];
  if (leq(field, *m, top)) return *m;
  return top;
}

/// Tree vertices on the path from x to y (both in the tree), in path order.
template <ValuedField F>
std::vector<BerkPoint<F>> path_vertices(const F& field, const BerkPoint<F>& x, const BerkPoint<F>& y,
                                        const FiniteTree<F>& t) {
  if (t.vertices.empty()) throw EmptyTree("path in an empty tree");
  const bool both_inf = x.is_infinity() && y.is_infinity();
  const auto top = both_inf ? x : join(field, x, y);
  std::vector<BerkPoint<F>> up, down;
  for (const auto& v : t.vertices) {
    if (!leq(field, v, top)) continue;
    if (leq(field, x, v)) up.push_back(v);
    else if (leq(field, y, v)) down.push_back(v);
  }
  auto by_size = [&](const auto& a, const auto& b) { return lt(field, a, b); };
  std::sort(up.begin(), up.end(), by_size);
  std::sort(down.begin(), down.end(), [&](const auto& a, const auto& b) { return lt(field, b, a); });
  up.insert(up.end(), down.begin(), down.end());
  return up;
}

}  // namespace berk
