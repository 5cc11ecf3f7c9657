#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "berk/algebra.hpp"
#include "berk/berkpoint.hpp"
#include "berk/fields.hpp"
#include "berk/polygon.hpp"
#include "berk/roots.hpp"

namespace berk {

/// phi = P/Q in lowest terms with Q monic, and its Frobenius factorization
/// phi(z) = phi_sep(z^(p^k)), phi_sep = P_sep / Q_sep.
template <ValuedField F>
struct RationalMapNF {
  using Elem = typename F::Elem;
  using P = Poly<Elem>;

  P num, den;
  int insep_exp = 0;
  P P_sep, Q_sep;
  long d_sep = 1;

  RationalMapNF(P n, P d) : num(n), den(d), P_sep(std::move(n)), Q_sep(std::move(d)) {}

  std::string str() const { return "(" + P_sep.str() + ")/(" + Q_sep.str() + ")"; }
};

template <ValuedField F>
RationalMapNF<F> normalize(const F& field, const Poly<typename F::Elem>& num, const Poly<typename F::Elem>& den) {
  if (den.is_zero()) throw ZeroMap("denominator is zero");
  if (num.is_zero()) throw ZeroMap("numerator is zero");
  const auto g = gcd(num, den);
  RationalMapNF<F> m(num / g, den / g);
  const typename F::Elem scale = field.one() / m.den.lc();
  m.num = m.num * scale;
  m.den = m.den * scale;
  if (std::max(m.num.degree(), m.den.degree()) < 1) throw ZeroMap("constant map");
  m.P_sep = m.num;
  m.Q_sep = m.den;
  const std::uint32_t p = field.characteristic();
  while (p != 0 && m.P_sep.deflatable(p) && m.Q_sep.deflatable(p)) {
    m.P_sep = m.P_sep.deflate(p);
    m.Q_sep = m.Q_sep.deflate(p);
    ++m.insep_exp;
  }
  m.d_sep = std::max(m.P_sep.degree(), m.Q_sep.degree());
  return m;
}

/// 1/phi: the map read in the chart at infinity of the target.
template <ValuedField F>
RationalMapNF<F> swap_target(const F& field, const RationalMapNF<F>& m) {
  return normalize(field, m.den, m.num);
}

template <class G, ValuedField F>
RationalMapNF<G> base_change(const G& g, const RationalMapNF<F>& m) {
  auto lift = [&](const Poly<typename F::Elem>& f) { return f.map([&](const auto& c) { return g.embed(c); }); };
  RationalMapNF<G> out(lift(m.num), lift(m.den));
  out.insep_exp = m.insep_exp;
  out.P_sep = lift(m.P_sep);
  out.Q_sep = lift(m.Q_sep);
  out.d_sep = m.d_sep;
  return out;
}

/// Fiber polynomial of phi_sep over x (empty x: infinity) and the
/// multiplicity of infinity as a preimage.
template <ValuedField F>
struct Fiber {
  Poly<typename F::Elem> poly;
  long inf_mult = 0;
};

template <ValuedField F>
Fiber<F> fiber_poly(const F& field, const RationalMapNF<F>& m, const std::optional<typename F::Elem>& x) {
  (void)field;
  Fiber<F> out{x ? m.P_sep - m.Q_sep * *x : m.Q_sep, 0};
  if (out.poly.is_zero()) throw ZeroMap("constant map");
  out.inf_mult = m.d_sep - out.poly.degree();
  return out;
}

/// Number of distinct preimages of x under phi_sep (infinity included).
template <ValuedField F>
long distinct_fiber_count(const F& field, const Fiber<F>& fib) {
  return distinct_roots_closure(field, fib.poly) + (fib.inf_mult > 0 ? 1 : 0);
}

enum class Witness { Cap, Merge, Branch };

inline const char* witness_name(Witness w) {
  switch (w) {
    case Witness::Cap: return "cap";
    case Witness::Merge: return "merge";
    default: return "branch";
  }
}

/// f(x) as a radius valuation: val 0 is f = 1, INF is f = 0.
struct SplitRadius {
  ValQ val;
  Witness witness = Witness::Cap;
  std::string detail;  // the merging pair, or the degenerate fiber size
};

struct SplittingReport {
  ValQ radius;  // queried radius valuation
  long d = 0;
  long distinct = 0;
  long components = 0;
  bool splits = false;
  std::vector<ValQ> merge_levels;  // over unordered pairs of preimages
};

/// Preimages of an affine x with their pairwise merge levels: the minimum
/// of val(phi - x) over the cluster-tree vertices on the path between them.
template <ValuedField F>
struct FiberClusters {
  Fiber<F> fiber;
  long distinct = 0;
  ClusterTree<F> tree;            // label 0: fiber roots, label 1: poles
  std::vector<std::size_t> roots;  // fiber leaves
  bool has_inf = false;
  std::vector<std::vector<ValQ>> merge;  // preimage order: roots, then infinity

  explicit FiberClusters(Fiber<F> f) : fiber(std::move(f)) {}

  std::size_t size() const { return roots.size() + (has_inf ? 1 : 0); }
};

template <ValuedField F>
FiberClusters<F> fiber_clusters(const F& field, const RationalMapNF<F>& m, const typename F::Elem& x,
                                const std::vector<typename F::Elem>* hints = nullptr) {
  using E = typename F::Elem;
  FiberClusters<F> fc(fiber_poly(field, m, std::optional<E>(x)));
  fc.distinct = distinct_fiber_count(field, fc.fiber);
  fc.has_inf = fc.fiber.inf_mult > 0;
  if (hints) {
    auto pts = roots_from_hints(field, fc.fiber.poly, *hints, 0);
    auto poles = isolate(field, m.Q_sep);
    for (std::size_t l : poles.leaves()) {
      const auto& node = poles.nodes[l];
      if (!node.exact) throw UnresolvedCluster("root hints need exact poles", "", m.Q_sep.str());
      pts.push_back({*node.center, 1, node.mult_total()});
    }
    fc.tree = tree_from_points(field, pts, 2);
  } else {
    fc.tree = isolate(field, std::vector<Poly<E>>{fc.fiber.poly, m.Q_sep});
  }
  fc.roots = fc.tree.leaves_of_label(0);
  const std::size_t n = fc.size();
  fc.merge.assign(n, std::vector<ValQ>(n, ValQ::inf()));

  std::vector<std::optional<ValQ>> cache(fc.tree.nodes.size());
  auto value = [&](std::size_t node) {
    if (!cache[node])
      cache[node] = node_value(field, fc.tree, node, fc.fiber.poly) - node_value(field, fc.tree, node, m.Q_sep);
    return *cache[node];
  };
  for (std::size_t i = 0; i < fc.roots.size(); ++i)
    for (std::size_t j = i + 1; j < fc.roots.size(); ++j) {
      ValQ lvl = ValQ::inf();
      for (std::size_t v : fc.tree.path_nodes(fc.roots[i], fc.roots[j])) lvl = min(lvl, value(v));
      fc.merge[i][j] = fc.merge[j][i] = lvl;
    }
  if (fc.has_inf) {
    const std::size_t k = fc.roots.size();
    for (std::size_t i = 0; i < fc.roots.size(); ++i) {
      const auto up = fc.tree.ancestors(fc.roots[i]);
      if (up.empty()) throw DomainError("preimage at infinity without a separating vertex");
      ValQ lvl = ValQ::inf();
      for (std::size_t v : up) lvl = min(lvl, value(v));
      fc.merge[i][k] = fc.merge[k][i] = lvl;
    }
  }
  return fc;
}

namespace detail {

inline long count_classes(const std::vector<std::vector<ValQ>>& merge, const ValQ& v) {
  const std::size_t n = merge.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (merge[i][j] > v) parent[find(i)] = find(j);
  long c = 0;
  for (std::size_t i = 0; i < n; ++i) c += find(i) == i;
  return c;
}

}  // namespace detail

/// Components of the preimage of the open ball {val(w - x) > v} and the
/// splitting criterion at that radius. Empty x is infinity, read in the
/// chart 1/w.
template <ValuedField F>
SplittingReport splits_at(const F& field, const RationalMapNF<F>& m, const std::optional<typename F::Elem>& x,
                          const ValQ& v, const std::vector<typename F::Elem>* hints = nullptr) {
  if (!v.is_finite() || v < ValQ(0)) throw RadiusOutOfRange("radius valuation " + v.str() + " outside (0, 1]");
  if (!x) return splits_at(field, swap_target(field, m), std::optional<typename F::Elem>(field.zero()), v, hints);
  const auto fc = fiber_clusters(field, m, *x, hints);
  SplittingReport r;
  r.radius = v;
  r.d = m.d_sep;
  r.distinct = fc.distinct;
  r.components = detail::count_classes(fc.merge, v);
  r.splits = r.distinct == r.d && r.components == r.d;
  for (std::size_t i = 0; i < fc.merge.size(); ++i)
    for (std::size_t j = i + 1; j < fc.merge.size(); ++j) r.merge_levels.push_back(fc.merge[i][j]);
  return r;
}

template <ValuedField F>
long components_at(const F& field, const RationalMapNF<F>& m, const std::optional<typename F::Elem>& x, const ValQ& v) {
  return splits_at(field, m, x, v).components;
}

/// f(x) at a type-I point (empty x: infinity).
template <ValuedField F>
SplitRadius split_radius(const F& field, const RationalMapNF<F>& m, const std::optional<typename F::Elem>& x,
                         const std::vector<typename F::Elem>* hints = nullptr) {
  if (!x) return split_radius(field, swap_target(field, m), std::optional<typename F::Elem>(field.zero()), hints);
  const auto fib = fiber_poly(field, m, x);
  const long distinct = distinct_fiber_count(field, fib);
  if (distinct < m.d_sep)
    return {ValQ::inf(), Witness::Branch, std::to_string(distinct) + "<" + std::to_string(m.d_sep)};
  if (m.d_sep == 1) return {ValQ(0), Witness::Cap, ""};
  const auto fc = fiber_clusters(field, m, *x, hints);
  ValQ best(0);
  std::pair<std::size_t, std::size_t> pair{0, 0};
  bool merged = false;
  for (std::size_t i = 0; i < fc.merge.size(); ++i)
    for (std::size_t j = i + 1; j < fc.merge.size(); ++j)
      if (fc.merge[i][j] > best) {
        best = fc.merge[i][j];
        pair = {i, j};
        merged = true;
      }
  if (!merged) return {ValQ(0), Witness::Cap, ""};
  auto name = [&](std::size_t i) {
    if (i == fc.roots.size()) return std::string("inf");
    const auto& node = fc.tree.nodes[fc.roots[i]];
    if (node.center && node.exact) return field.str(*node.center);
    return "root#" + std::to_string(i);
  };
  return {best, Witness::Merge, name(pair.first) + "|" + name(pair.second)};
}

/// f at any point of type I or II: a type-II point zeta(a, rho) is evaluated
/// as the type-I point a + t over the Gauss extension with val(t) = rho.
template <ValuedField F>
SplitRadius split_radius_at(const F& field, const RationalMapNF<F>& m, const BerkPoint<F>& x) {
  using E = typename F::Elem;
  if (x.is_infinity()) return split_radius(field, m, std::optional<E>());
  if (x.is_type_i()) return split_radius(field, m, std::optional<E>(x.center()));
  GaussField<F> g(field, x.rho());
  const auto gm = base_change(g, m);
  return split_radius(g, gm, std::optional<typename GaussField<F>::Elem>(g.embed(x.center()) + g.t()));
}

template <ValuedField F>
SplitRadius split_radius_typeII(const F& field, const RationalMapNF<F>& m, const typename F::Elem& a,
                                const ValQ& rho) {
  return split_radius_at(field, m, BerkPoint<F>::type_ii(a, rho));
}

// ---------------------------------------------------------------------------
// Branch values and skeleta

template <ValuedField F>
struct BranchValues {
  Poly<typename F::Elem> discriminant;  // degree-drop factor removed
  ClusterTree<F> tree;                  // clusters of its roots
  std::vector<BerkPoint<F>> points;     // one representable point per finite branch value
  std::vector<bool> exact;
  bool infinity = false;

  explicit BranchValues(Poly<typename F::Elem> d) : discriminant(std::move(d)) {}
};

/// Discriminant in z of P_sep(z) - w Q_sep(z) with formal degree d, as a
/// polynomial in w, by interpolation.
template <ValuedField F>
Poly<typename F::Elem> formal_discriminant(const F& field, const RationalMapNF<F>& m) {
  using E = typename F::Elem;
  const int d = static_cast<int>(m.d_sep);
  std::vector<E> ws, ds;
  for (std::size_t k = 0; k < static_cast<std::size_t>(2 * d + 1); ++k) {
    const E w = field.distinct_element(k);
    const auto G = m.P_sep - m.Q_sep * w;
    ws.push_back(w);
    ds.push_back(sylvester_resultant(G, d, G.derivative(), d - 1, field.zero()));
  }
  return interpolate(ws, ds);
}

template <ValuedField F>
BranchValues<F> branch_values(const F& field, const RationalMapNF<F>& m, const ValQ& precision = ValQ(24)) {
  using E = typename F::Elem;
  auto D = formal_discriminant(field, m);
  if (D.is_zero()) throw DomainError("map is not separable");
  // phi(infinity) when finite: the formal discriminant vanishes there by degree drop
  std::optional<E> phi_inf;
  if (m.P_sep.degree() < m.Q_sep.degree()) phi_inf = field.zero();
  else if (m.P_sep.degree() == m.Q_sep.degree()) phi_inf = m.P_sep.lc() / m.Q_sep.lc();
  if (phi_inf) {
    const auto lin = Poly<E>::linear_root(*phi_inf);
    while (D.degree() > 0 && is_zero(D.eval(*phi_inf))) D = D / lin;
    if (distinct_fiber_count(field, fiber_poly(field, m, phi_inf)) < m.d_sep) D = D * lin;
  }
  BranchValues<F> out(D);
  out.infinity = distinct_fiber_count(field, fiber_poly(field, m, std::optional<E>())) < m.d_sep;
  if (D.degree() <= 0) return out;
  const auto rad = separable_radical(field, D);
  out.tree = isolate(field, rad);
  for (std::size_t l : out.tree.leaves()) {
    const auto& node = out.tree.nodes[l];
    if (node.center && node.exact) {
      out.points.push_back(BerkPoint<F>::type_i(*node.center));
      out.exact.push_back(true);
      continue;
    }
    if (node.center) {
      ValQ lam;
      if (node.parent != npos) {
        lam = out.tree.nodes[node.parent].sep_val;
      } else {
        lam = newton_polygon(field, rad.shift(*node.center)).root_valuations().front().first - ValQ(1);
      }
      const auto r = refine_root(field, rad, *node.center, lam, precision);
      out.points.push_back(BerkPoint<F>::type_i(r.center));
      out.exact.push_back(r.exact);
      continue;
    }
    // ramified root: nearest representable point on its path
    std::size_t up = node.parent;
    while (up != npos && !out.tree.nodes[up].center && !out.tree.nodes[up].enclosing) up = out.tree.nodes[up].parent;
    if (up == npos) throw UnresolvedCluster("branch value without a representable neighbourhood", "", D.str());
    const auto& u = out.tree.nodes[up];
    if (u.center) out.points.push_back(BerkPoint<F>::type_ii(*u.center, u.sep_val));
    else out.points.push_back(BerkPoint<F>::type_ii(u.enclosing->first, u.enclosing->second));
    out.exact.push_back(false);
  }
  return out;
}

/// Candidate skeleton: hull of 0, infinity and the branch values.
template <ValuedField F>
FiniteTree<F> skeleton_for(const F& field, const RationalMapNF<F>& m, const std::vector<BerkPoint<F>>& extra = {}) {
  const auto bv = branch_values(field, m);
  std::vector<BerkPoint<F>> pts{BerkPoint<F>::type_i(field.zero()), BerkPoint<F>::infinity()};
  pts.insert(pts.end(), bv.points.begin(), bv.points.end());
  pts.insert(pts.end(), extra.begin(), extra.end());
  return convex_hull(field, pts);
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyBudget {
  long evaluations_per_edge = 200;  // adaptive refinement cap
  int offskeleton = 30;
  ValQ margin = ValQ(3);
  ValQ step = ValQ(1, 2);
  std::uint64_t seed = 1;
};

struct EdgeSample {
  ValQ rho;
  ValQ val_f;
};

/// val f = slope * rho + intercept on [from, to].
struct LinearPiece {
  ValQ from, to;
  mpq_class slope, intercept;
};

struct EdgeReport {
  std::size_t lower = 0, upper = 0;
  std::vector<EdgeSample> samples;
  std::vector<LinearPiece> pieces;
  std::vector<ValQ> breakpoints;
  bool ok = true;
  std::string failure;
};

template <ValuedField F>
struct ConstancySample {
  BerkPoint<F> point;
  BerkPoint<F> image;
  ValQ f_point, f_image;
  bool ok = false;
};

template <ValuedField F>
struct SkeletonReport {
  FiniteTree<F> tree;
  std::vector<EdgeReport> edges;
  std::vector<ConstancySample<F>> constancy;
  bool extended = false;
  bool pl_ok = true;
  bool constancy_ok = true;
  bool passes() const { return pl_ok && constancy_ok; }
};

namespace detail {

inline bool collinear(const EdgeSample& a, const EdgeSample& b, const EdgeSample& c) {
  return (b.val_f.q() - a.val_f.q()) * (c.rho.q() - b.rho.q()) == (c.val_f.q() - b.val_f.q()) * (b.rho.q() - a.rho.q());
}

inline std::pair<mpq_class, mpq_class> line_through(const EdgeSample& a, const EdgeSample& b) {
  mpq_class s = (b.val_f.q() - a.val_f.q()) / (b.rho.q() - a.rho.q());
  mpq_class c = a.val_f.q() - s * a.rho.q();
  return {s, c};
}

// Maximal runs of collinear consecutive samples; consecutive runs share an
// endpoint sample. Returned as index pairs [i, j].
inline std::vector<std::pair<std::size_t, std::size_t>> collinear_runs(const std::vector<EdgeSample>& s) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t i = 0;
  while (i + 1 < s.size()) {
    std::size_t j = i + 1;
    while (j + 1 < s.size() && collinear(s[i], s[j], s[j + 1])) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  return runs;
}

template <ValuedField F>
typename F::Elem sample_element(std::mt19937_64& rng, const F& field) {
  auto digit = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  typename F::Elem a = field.zero();
  const long lo = digit(-2, 3);
  const long len = digit(1, 3);
  const long p = static_cast<long>(field.prime());
  for (long k = lo; k < lo + len; ++k)
    a = a + *field.element_of_valuation(ValQ(k)) * field.from_int(digit(0, p - 1));
  return a;
}

}  // namespace detail

template <ValuedField F>
EdgeReport verify_edge(const F& field, const RationalMapNF<F>& m, const FiniteTree<F>& tree, std::size_t e,
                       const ValQ& lo_window, const ValQ& hi_window, const VerifyBudget& budget) {
  EdgeReport rep;
  const auto& edge = tree.edges[e];
  rep.lower = edge.lower;
  rep.upper = edge.upper;
  const auto [rho_lo, rho_hi] = tree.edge_range(edge);
  // parameter interval [a, b] in rho, a toward the upper end
  ValQ a = rho_hi ? max(*rho_hi, lo_window) : lo_window;
  ValQ b = rho_lo.is_finite() ? min(rho_lo, hi_window) : hi_window;
  if (rho_hi && *rho_hi > hi_window) a = *rho_hi;
  if (rho_lo.is_finite() && rho_lo < lo_window) b = rho_lo;
  if (!(a < b)) return rep;

  long evals = 0;
  auto eval = [&](const ValQ& rho) {
    if (++evals > budget.evaluations_per_edge)
      throw BudgetExceeded("refinement did not stabilize within " + std::to_string(budget.evaluations_per_edge) +
                               " evaluations",
                           "edge " + tree.vertices[edge.lower].str(field) + " -- " + tree.vertices[edge.upper].str(field));
    return EdgeSample{rho, split_radius_at(field, m, tree.point_on_edge(edge, rho)).val};
  };
  std::vector<EdgeSample> s;
  s.push_back(eval(a));
  {
    const mpq_class st = budget.step.q();
    mpq_class k = a.q() / st;
    mpz_class next = k.get_num() / k.get_den() + 1;  // first grid index above a
    for (mpq_class r = mpq_class(next) * st; r < b.q(); r += st) s.push_back(eval(ValQ(r)));
  }
  s.push_back(eval(b));
  for (const auto& x : s)
    if (!x.val_f.is_finite()) {
      rep.ok = false;
      rep.failure = "f vanishes at rho = " + x.rho.str();
      rep.samples = s;
      return rep;
    }

  auto insert = [&](EdgeSample x) {
    auto it = std::lower_bound(s.begin(), s.end(), x.rho, [](const EdgeSample& u, const ValQ& r) { return u.rho < r; });
    if (it != s.end() && it->rho == x.rho) return;
    s.insert(it, std::move(x));
  };
  for (;;) {
    const auto runs = detail::collinear_runs(s);
    bool changed = false;
    for (std::size_t r = 0; r < runs.size() && !changed; ++r) {
      const auto [i, j] = runs[r];
      if (j - i >= 2) continue;
      // a two-sample run is unconfirmed: intersect the neighbouring lines or bisect
      std::optional<ValQ> cand;
      if (r > 0 && r + 1 < runs.size()) {
        const auto [pi, pj] = runs[r - 1];
        const auto [ni, nj] = runs[r + 1];
        const auto l1 = detail::line_through(s[pi], s[pj]);
        const auto l2 = detail::line_through(s[ni], s[nj]);
        if (l1.first != l2.first) {
          const ValQ x(mpq_class((l2.second - l1.second) / (l1.first - l2.first)));
          if (s[i].rho < x && x < s[j].rho) cand = x;
        }
      }
      const ValQ mid = cand ? *cand : (s[i].rho + s[j].rho) / 2;
      auto x = eval(mid);
      if (!x.val_f.is_finite()) {
        rep.ok = false;
        rep.failure = "f vanishes at rho = " + mid.str();
        rep.samples = s;
        return rep;
      }
      insert(std::move(x));
      changed = true;
    }
    if (!changed) break;
  }
  rep.samples = s;
  const auto runs = detail::collinear_runs(s);
  for (const auto& [i, j] : runs) {
    const auto [slope, icpt] = detail::line_through(s[i], s[j]);
    if (!rep.pieces.empty() && rep.pieces.back().slope == slope && rep.pieces.back().intercept == icpt) {
      rep.pieces.back().to = s[j].rho;
      continue;
    }
    if (!rep.pieces.empty()) rep.breakpoints.push_back(s[i].rho);
    rep.pieces.push_back({s[i].rho, s[j].rho, slope, icpt});
  }
  return rep;
}

template <ValuedField F>
SkeletonReport<F> verify_theorem(const F& field, const RationalMapNF<F>& m, FiniteTree<F> tree,
                                 const VerifyBudget& budget = {}) {
  SkeletonReport<F> rep;
  for (int pass = 0; pass < 2; ++pass) {
    rep = SkeletonReport<F>{};
    rep.tree = tree;
    rep.extended = pass > 0;
    // sampling window around the finite vertices (and the Gauss point)
    ValQ lo(0), hi(0);
    for (const auto& v : tree.vertices)
      if (!v.is_infinity() && v.rho().is_finite()) {
        lo = min(lo, v.rho());
        hi = max(hi, v.rho());
      }
    lo = lo - budget.margin;
    hi = hi + budget.margin;
    for (std::size_t e = 0; e < tree.edges.size(); ++e) {
      rep.edges.push_back(verify_edge(field, m, tree, e, lo, hi, budget));
      rep.pl_ok = rep.pl_ok && rep.edges.back().ok;
    }
    std::mt19937_64 rng(budget.seed);
    std::vector<BerkPoint<F>> failures;
    for (int k = 0; k < budget.offskeleton; ++k) {
      BerkPoint<F> x = BerkPoint<F>::infinity();
      for (int attempt = 0; attempt < 1000; ++attempt) {
        const auto a = detail::sample_element(rng, field);
        if (k % 2 == 0) {
          x = BerkPoint<F>::type_i(a);
        } else {
          const long num = std::uniform_int_distribution<long>(lo.q().get_num().get_si() * 2,
                                                               hi.q().get_num().get_si() * 2 + 2)(rng);
          x = BerkPoint<F>::type_ii(a, ValQ(num, 2));
        }
        if (!tree_contains(field, tree, x)) break;
      }
      const auto img = retract(field, x, tree);
      ConstancySample<F> cs{x, img, split_radius_at(field, m, x).val, split_radius_at(field, m, img).val, false};
      cs.ok = cs.f_point == cs.f_image;
      if (!cs.ok) failures.push_back(x);
      rep.constancy_ok = rep.constancy_ok && cs.ok;
      rep.constancy.push_back(std::move(cs));
    }
    if (rep.constancy_ok || pass == 1) break;
    auto vs = tree.vertices;
    vs.insert(vs.end(), failures.begin(), failures.end());
    tree = convex_hull(field, vs);
  }
  return rep;
}

}  // namespace berk
