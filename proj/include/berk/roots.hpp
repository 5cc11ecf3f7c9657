#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "berk/algebra.hpp"
#include "berk/fields.hpp"
#include "berk/polygon.hpp"
#include "berk/valq.hpp"

namespace berk {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Node of a root-cluster tree. An internal node is the closed disk of
/// valuation-radius sep_val around its roots; a leaf is a single distinct root.
///
/// A node carries either a center (an element of the disk) or an anchor: the
/// index of an irreducible polynomial all of whose roots are the roots of the
/// node's symmetric subtree, so that valuations at the node can be computed
/// from conjugate-invariant data alone.
template <ValuedField F>
struct ClusterNode {
  using Elem = typename F::Elem;

  std::optional<Elem> center;
  bool exact = false;  // leaf center is the root itself
  int anchor = -1;
  std::optional<std::pair<Elem, ValQ>> enclosing;  // symmetric top: roots lie in D(c, v)
  ValQ sep_val = ValQ::inf();
  std::vector<long> distinct;  // per label
  std::vector<long> mult;      // per label
  std::size_t parent = npos;
  std::vector<std::size_t> children;

  bool is_leaf() const { return children.empty(); }
  long distinct_count() const {
    long s = 0;
    for (long x : distinct) s += x;
    return s;
  }
  long mult_total() const {
    long s = 0;
    for (long x : mult) s += x;
    return s;
  }
  /// Label of a leaf.
  std::size_t label() const {
    for (std::size_t i = 0; i < distinct.size(); ++i)
      if (distinct[i] > 0) return i;
    return npos;
  }
};

template <ValuedField F>
struct ClusterTree {
  using Elem = typename F::Elem;
  using Node = ClusterNode<F>;

  std::vector<Node> nodes;  // nodes[0] is the root when nonempty
  std::vector<Poly<Elem>> anchors;
  std::size_t labels = 1;

  bool empty() const { return nodes.empty(); }

  std::vector<std::size_t> leaves() const {
    std::vector<std::size_t> out;
    if (empty()) return out;
    // depth-first, children in construction order
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
      const std::size_t n = stack.back();
      stack.pop_back();
      if (nodes[n].is_leaf()) {
        out.push_back(n);
        continue;
      }
      for (auto it = nodes[n].children.rbegin(); it != nodes[n].children.rend(); ++it) stack.push_back(*it);
    }
    return out;
  }

  std::vector<std::size_t> leaves_of_label(std::size_t label) const {
    std::vector<std::size_t> out;
    for (std::size_t l : leaves())
      if (nodes[l].label() == label) out.push_back(l);
    return out;
  }

  /// Strict ancestors from the parent up to the root.
  std::vector<std::size_t> ancestors(std::size_t n) const {
    std::vector<std::size_t> out;
    for (std::size_t a = nodes[n].parent; a != npos; a = nodes[a].parent) out.push_back(a);
    return out;
  }

  std::size_t lca(std::size_t a, std::size_t b) const {
    if (a == b) return a;
    auto up = ancestors(a);
    up.insert(up.begin(), a);
    for (std::size_t x = b; x != npos; x = nodes[x].parent)
      if (std::find(up.begin(), up.end(), x) != up.end()) return x;
    return npos;
  }

  /// Valuation of the difference of two leaf roots.
  ValQ distance(std::size_t a, std::size_t b) const {
    if (a == b) return ValQ::inf();
    return nodes[lca(a, b)].sep_val;
  }

  /// Internal nodes strictly above the two leaves up to and including their
  /// common ancestor.
  std::vector<std::size_t> path_nodes(std::size_t a, std::size_t b) const {
    const std::size_t top = lca(a, b);
    std::vector<std::size_t> out;
    for (std::size_t s : {a, b})
      for (std::size_t x = nodes[s].parent; x != npos; x = nodes[x].parent) {
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        if (x == top) break;
      }
    return out;
  }

  /// Multiset of distances over ordered pairs of distinct leaves.
  std::vector<ValQ> distance_multiset(std::size_t label = npos) const {
    const auto ls = label == npos ? leaves() : leaves_of_label(label);
    std::vector<ValQ> out;
    for (std::size_t i : ls)
      for (std::size_t j : ls)
        if (i != j) out.push_back(distance(i, j));
    std::sort(out.begin(), out.end());
    return out;
  }

  template <class Printer>
  std::string str(Printer&& print_elem) const {
    std::ostringstream os;
    auto rec = [&](auto&& self, std::size_t n, int depth) -> void {
      const Node& x = nodes[n];
      os << std::string(static_cast<std::size_t>(2 * depth), ' ');
      os << (x.is_leaf() ? "leaf" : "node") << " sep=" << x.sep_val.str() << " mult=" << x.mult_total()
         << " distinct=" << x.distinct_count();
      if (x.center) os << " center=" << print_elem(*x.center) << (x.exact ? " exact" : "");
      if (x.anchor >= 0) os << " anchor=" << x.anchor;
      os << '\n';
      for (std::size_t c : x.children) self(self, c, depth + 1);
    };
    if (!empty()) rec(rec, 0, 0);
    return os.str();
  }
};

/// val H(alpha) for any root alpha of L, where all roots of L are conjugate
/// over the completion: (val Res(L, H) - deg H * val lc(L)) / deg L.
template <ValuedField F>
ValQ conjugate_val(const F& field, const Poly<typename F::Elem>& L, const Poly<typename F::Elem>& H) {
  if (H.is_zero()) return ValQ::inf();
  if (H.degree() == 0) return field.val(H[0]);
  const auto r = resultant(L, H);
  if (is_zero(r)) return ValQ::inf();
  return (field.val(r) - field.val(L.lc()) * static_cast<long>(H.degree())) / static_cast<long>(L.degree());
}

/// val |H| at the point of an internal node (its disk), or at the root of a leaf.
template <ValuedField F>
ValQ node_value(const F& field, const ClusterTree<F>& tree, std::size_t n, const Poly<typename F::Elem>& H) {
  if (H.is_zero()) return ValQ::inf();
  const auto& node = tree.nodes[n];
  if (node.is_leaf()) {
    if (node.center && node.exact) return field.val(H.eval(*node.center));
    if (node.anchor >= 0) return conjugate_val(field, tree.anchors[static_cast<std::size_t>(node.anchor)], H);
    throw DomainError("value at a leaf without an exact root");
  }
  if (node.center) return gauss_eval(field, H, *node.center, node.sep_val);
  const auto& L = tree.anchors[static_cast<std::size_t>(node.anchor)];
  ValQ best = ValQ::inf();
  for (int i = 0; i <= H.degree(); ++i) {
    const ValQ v = conjugate_val(field, L, H.hasse(static_cast<std::size_t>(i)));
    if (v.is_finite()) best = min(best, v + node.sep_val * static_cast<long>(i));
  }
  return best;
}

namespace detail {

template <class E>
Poly<E> simple_part(const Poly<E>& f) {
  if (f.degree() <= 0) return Poly<E>::constant(one_like(f.zero()));
  Poly<E> g = gcd(f, f.derivative());
  Poly<E> a = f / g;
  return (a / gcd(a, g)).monic();
}

template <class R>
std::optional<std::vector<std::pair<typename R::Elem, int>>> residue_roots(const R& rf,
                                                                          const Poly<typename R::Elem>& f) {
  return rf.roots(f);
}

template <ValuedField F>
class Isolator {
 public:
  using Elem = typename F::Elem;
  using P = Poly<Elem>;
  using RElem = typename F::ResidueField::Elem;
  using RP = Poly<RElem>;

  struct Piece {
    std::size_t label;
    long weight;
    P poly;  // squarefree, separable
  };

  Isolator(const F& field, const std::vector<P>& polys) : field_(field) {
    tree_.labels = polys.size();
    for (std::size_t l = 0; l < polys.size(); ++l) {
      if (polys[l].is_zero()) throw ZeroPolynomial("isolate of 0");
      std::vector<std::pair<P, long>> parts;
      try {
        parts = squarefree_decomposition(field_, polys[l]);
      } catch (const InseparableResidual& e) {
        throw UnresolvedCluster("roots of " + polys[l].str() + " lie in a purely inseparable extension", "",
                                polys[l].str());
      }
      for (auto& [g, m] : parts) pieces_.push_back({l, m, g});
    }
  }

  ClusterTree<F> run() {
    const std::size_t root = build(field_.zero(), std::nullopt, npos);
    (void)root;
    return std::move(tree_);
  }

 private:
  struct Local {
    P shifted;
    NewtonPolygon polygon;
  };

  bool in_range(const ValQ& v, const std::optional<ValQ>& lam) const { return !lam || v > *lam; }

  std::size_t new_node(std::size_t parent) {
    tree_.nodes.emplace_back();
    auto& n = tree_.nodes.back();
    n.distinct.assign(tree_.labels, 0);
    n.mult.assign(tree_.labels, 0);
    n.parent = parent;
    const std::size_t id = tree_.nodes.size() - 1;
    if (parent != npos) tree_.nodes[parent].children.push_back(id);
    return id;
  }

  void add_counts(std::size_t node, const std::vector<long>& per_piece) {
    auto& n = tree_.nodes[node];
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      n.distinct[pieces_[i].label] += per_piece[i];
      n.mult[pieces_[i].label] += per_piece[i] * pieces_[i].weight;
    }
  }

  std::size_t leaf(std::size_t parent, std::size_t piece, std::optional<Elem> center, bool exact) {
    const std::size_t id = new_node(parent);
    auto& n = tree_.nodes[id];
    n.center = std::move(center);
    n.exact = exact;
    n.distinct[pieces_[piece].label] = 1;
    n.mult[pieces_[piece].label] = pieces_[piece].weight;
    return id;
  }

  [[noreturn]] void unresolved(const std::string& why, const std::string& factor) const {
    throw UnresolvedCluster(why, tree_.str([&](const Elem& a) { return field_.str(a); }), factor);
  }

  /// Isolate the roots z with val(z - c) > lam (all roots when lam is empty),
  /// attaching the resulting subtree under `parent`.
  std::size_t build(Elem c, std::optional<ValQ> lam, std::size_t parent) {
    for (;;) {
      std::vector<Local> local;
      std::vector<long> count(pieces_.size(), 0);
      long n = 0;
      std::optional<ValQ> v;
      for (std::size_t i = 0; i < pieces_.size(); ++i) {
        P g = pieces_[i].poly.shift(c);
        NewtonPolygon poly = newton_polygon(field_, g);
        for (const auto& [rv, m] : poly.root_valuations())
          if (in_range(rv, lam)) {
            count[i] += m;
            v = v ? min(*v, rv) : rv;
          }
        n += count[i];
        local.push_back({std::move(g), std::move(poly)});
      }
      if (n == 0) return npos;
      if (n == 1) {
        std::size_t i = 0;
        while (count[i] == 0) ++i;
        return leaf(parent, i, c, !v->is_finite());
      }

      // n >= 2 and all in-range roots coincide with c: impossible for
      // squarefree pairwise coprime pieces.
      const ValQ level = *v;
      bool above = false;
      std::vector<long> at_level(pieces_.size(), 0);
      for (std::size_t i = 0; i < pieces_.size(); ++i)
        for (const auto& [rv, m] : local[i].polygon.root_valuations()) {
          if (rv == level) at_level[i] += m;
          else if (in_range(rv, lam)) above = true;
        }

      // residual polynomials of the pieces at this level
      const auto& rf = field_.residue_field();
      long e = 1;
      std::vector<RP> res(pieces_.size(), RP(rf.zero()));
      RP total = RP::constant(rf.one());
      for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (at_level[i] == 0) continue;
        auto seg = segment_residue(field_, local[i].shifted, local[i].polygon, level);
        e = seg.e;
        res[i] = seg.residual.monic();
        total = total * res[i];
      }
      const RP simple = simple_part(total);
      const long p = static_cast<long>(field_.prime());

      // Classes: simple residual roots (one or e leaves each), repeated
      // residual roots (centered subclusters), and the cluster above c.
      struct Centered {
        Elem center;
        std::vector<long> count;
      };
      std::vector<Centered> centered;
      std::vector<std::pair<std::size_t, std::optional<Elem>>> leaves;  // (piece, center)
      bool stuck = false;
      std::string stuck_factor;
      const auto pi_v = e == 1 ? field_.element_of_valuation(level) : std::nullopt;

      if (simple.degree() > 0 && e % p == 0) {
        stuck = true;
        stuck_factor = simple.str("X");
      }
      std::optional<std::vector<std::pair<RElem, int>>> total_roots;
      if (e == 1) total_roots = residue_roots(rf, total);
      for (std::size_t i = 0; i < pieces_.size() && !stuck; ++i) {
        if (at_level[i] == 0) continue;
        const RP s = gcd(res[i], simple);
        long found = 0;
        if (e == 1 && total_roots) {
          for (const auto& [r, m] : *total_roots) {
            if (m != 1 || !is_zero(res[i].eval(r))) continue;
            leaves.emplace_back(i, c + *pi_v * field_.lift(r));
            ++found;
          }
        }
        for (long k = found * e; k < s.degree() * e; ++k) leaves.emplace_back(i, std::nullopt);
      }
      const RP repeated = total / gcd(total, simple);
      if (!stuck && repeated.degree() > 0) {
        if (e != 1 || !total_roots) {
          stuck = true;
          stuck_factor = repeated.str("X");
        } else {
          long covered = 0;
          for (const auto& [r, m] : *total_roots) {
            if (m < 2) continue;
            Centered cl{c + *pi_v * field_.lift(r), std::vector<long>(pieces_.size(), 0)};
            for (std::size_t i = 0; i < pieces_.size(); ++i)
              if (at_level[i] > 0) cl.count[i] = root_multiplicity(res[i], r);
            covered += m;
            centered.push_back(std::move(cl));
          }
          if (covered != total.degree() - simple.degree()) {
            stuck = true;
            stuck_factor = repeated.str("X");
          }
        }
      }

      if (stuck) return symmetric(c, lam, parent, count, local, res, stuck_factor);

      const long classes = static_cast<long>(leaves.size() + centered.size()) + (above ? 1 : 0);
      if (classes == 1 && !centered.empty()) {
        c = centered.front().center;
        lam = level;
        continue;
      }
      const std::size_t id = new_node(parent);
      tree_.nodes[id].center = c;
      tree_.nodes[id].sep_val = level;
      add_counts(id, count);
      if (above) build(c, level, id);
      for (auto& [i, center] : leaves) {
        const bool exact = center && is_zero(pieces_[i].poly.eval(*center));
        leaf(id, i, center, exact);
      }
      for (auto& cl : centered) build(cl.center, level, id);
      return id;
    }
  }

  /// Fallback for a cluster whose roots cannot be separated by centers in
  /// the field: accepted when the in-range roots are exactly the roots of one
  /// piece L, L has a single polygon segment at c and an irreducible residual
  /// polynomial, so all roots of L are conjugate over the completion.
  std::size_t symmetric(const Elem& c, const std::optional<ValQ>& lam, std::size_t parent,
                        const std::vector<long>& count, const std::vector<Local>& local, const std::vector<RP>& res,
                        const std::string& factor) {
    std::size_t L = npos;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (count[i] == 0) continue;
      if (L != npos) unresolved("cluster mixes roots of several factors", factor);
      L = i;
    }
    const auto& piece = pieces_[L];
    if (count[L] != piece.poly.degree() || local[L].polygon.slopes.size() != 1 || local[L].polygon.low_order != 0)
      unresolved("cluster is a proper part of a factor", factor);
    const auto irreducible = field_.residue_field().is_irreducible(res[L]);
    if (!irreducible || !*irreducible) unresolved("residual polynomial not certified irreducible", res[L].str("X"));

    // distances from one root to the others, via Hasse derivatives at the root
    const P& g = piece.poly;
    const long deg = g.degree();
    std::vector<ValQ> profile{ValQ::inf()};
    for (long i = 1; i <= deg; ++i) profile.push_back(conjugate_val(field_, g, g.hasse(static_cast<std::size_t>(i))));
    const auto poly = newton_polygon(profile);
    std::vector<std::pair<ValQ, long>> levels;
    for (const auto& [rv, m] : poly.root_valuations())
      if (rv.is_finite()) levels.emplace_back(rv, m);
    if (lam)
      for (const auto& [rv, m] : levels)
        if (!(rv > *lam)) unresolved("conjugate profile inconsistent with the cluster", factor);
    std::vector<long> block(levels.size() + 1, 1);
    for (std::size_t j = levels.size(); j-- > 0;) block[j] = block[j + 1] + levels[j].second;
    for (std::size_t j = 0; j < levels.size(); ++j)
      if (block[j] % block[j + 1] != 0) unresolved("irregular conjugate profile", factor);

    tree_.anchors.push_back(g);
    const int anchor = static_cast<int>(tree_.anchors.size() - 1);
    auto rec = [&](auto&& self, std::size_t j, std::size_t par) -> std::size_t {
      const std::size_t id = new_node(par);
      auto& n = tree_.nodes[id];
      n.anchor = anchor;
      n.distinct[piece.label] = block[j];
      n.mult[piece.label] = block[j] * piece.weight;
      if (j == levels.size()) return id;
      n.sep_val = levels[j].first;
      for (long k = 0; k < block[j] / block[j + 1]; ++k) self(self, j + 1, id);
      return id;
    };
    const std::size_t top = rec(rec, 0, parent);
    tree_.nodes[top].enclosing.emplace(c, local[L].polygon.root_valuations().front().first);
    return top;
  }

  const F& field_;
  std::vector<Piece> pieces_;
  ClusterTree<F> tree_;
};

}  // namespace detail

/// Joint cluster tree of the roots of several pairwise coprime polynomials;
/// leaf labels index the input list.
template <ValuedField F>
ClusterTree<F> isolate(const F& field, const std::vector<Poly<typename F::Elem>>& polys) {
  return detail::Isolator<F>(field, polys).run();
}

template <ValuedField F>
ClusterTree<F> isolate(const F& field, const Poly<typename F::Elem>& poly) {
  return isolate(field, std::vector<Poly<typename F::Elem>>{poly});
}

/// A point of a labelled root configuration given explicitly.
template <ValuedField F>
struct LabelledRoot {
  typename F::Elem root;
  std::size_t label = 0;
  long mult = 1;
};

/// Cluster tree of explicitly known distinct points.
template <ValuedField F>
ClusterTree<F> tree_from_points(const F& field, const std::vector<LabelledRoot<F>>& pts, std::size_t labels) {
  ClusterTree<F> tree;
  tree.labels = labels;
  auto add = [&](std::size_t parent) {
    tree.nodes.emplace_back();
    auto& n = tree.nodes.back();
    n.distinct.assign(labels, 0);
    n.mult.assign(labels, 0);
    n.parent = parent;
    const std::size_t id = tree.nodes.size() - 1;
    if (parent != npos) tree.nodes[parent].children.push_back(id);
    return id;
  };
  auto rec = [&](auto&& self, const std::vector<std::size_t>& idx, std::size_t parent) -> void {
    const std::size_t id = add(parent);
    for (std::size_t i : idx) {
      tree.nodes[id].distinct[pts[i].label] += 1;
      tree.nodes[id].mult[pts[i].label] += pts[i].mult;
    }
    tree.nodes[id].center = pts[idx.front()].root;
    if (idx.size() == 1) {
      tree.nodes[id].exact = true;
      return;
    }
    ValQ sep = ValQ::inf();
    for (std::size_t i : idx)
      for (std::size_t j : idx)
        if (i < j) sep = min(sep, field.val(pts[i].root - pts[j].root));
    if (!sep.is_finite()) throw DomainError("repeated point in root list");
    tree.nodes[id].sep_val = sep;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i : idx) {
      bool placed = false;
      for (auto& g : groups)
        if (field.val(pts[i].root - pts[g.front()].root) > sep) {
          g.push_back(i);
          placed = true;
          break;
        }
      if (!placed) groups.push_back({i});
    }
    for (const auto& g : groups) self(self, g, id);
  };
  if (pts.empty()) return tree;
  std::vector<std::size_t> all(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) all[i] = i;
  rec(rec, all, npos);
  return tree;
}

/// Tree of the roots of `poly` from a complete list of exact roots; every
/// hint is checked to be a root and multiplicities must exhaust the degree.
template <ValuedField F>
std::vector<LabelledRoot<F>> roots_from_hints(const F& field, const Poly<typename F::Elem>& poly,
                                              const std::vector<typename F::Elem>& hints, std::size_t label) {
  std::vector<LabelledRoot<F>> out;
  long total = 0;
  for (const auto& h : hints) {
    if (!is_zero(poly.eval(h))) throw DomainError("hint " + field.str(h) + " is not a root of " + poly.str());
    bool dup = false;
    for (const auto& r : out) dup = dup || r.root == h;
    if (dup) continue;
    const long m = root_multiplicity(poly, h);
    total += m;
    out.push_back({h, label, m});
  }
  if (total != poly.degree()) throw DomainError("hints do not account for every root of " + poly.str());
  return out;
}

/// Approximation of the unique root of a squarefree g in the open disk
/// {val(z - c) > lam}: either the root itself or a center with
/// val(root - center) >= precision.
template <ValuedField F>
struct RefinedRoot {
  typename F::Elem center;
  ValQ precision;
  bool exact = false;
};

namespace detail {

inline std::optional<mpq_class> rational_reconstruction(const mpq_class& c, std::uint32_t p, long digits) {
  // c has nonnegative valuation; find r/s close to c modulo p^digits with
  // small numerator and denominator.
  if (digits <= 0) return std::nullopt;
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), p, static_cast<unsigned long>(digits));
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), c.get_den().get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  mpz_class u = c.get_num() * inv % m;
  if (u < 0) u += m;
  mpz_class bound = sqrt(mpz_class(m / 2));
  mpz_class r0 = m, r1 = u, s0 = 0, s1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  mpq_class out(r1, s1);
  out.canonicalize();
  return out;
}

}  // namespace detail

template <ValuedField F>
RefinedRoot<F> refine_root(const F& field, const Poly<typename F::Elem>& g, typename F::Elem c, ValQ lam,
                           const ValQ& target) {
  for (int step = 0; step < 4096; ++step) {
    const auto G = g.shift(c);
    if (is_zero(G[0])) return {c, ValQ::inf(), true};
    const auto poly = newton_polygon(field, G);
    std::optional<ValQ> v;
    for (const auto& [rv, m] : poly.root_valuations())
      if (rv > lam) {
        if (v || m != 1) throw DomainError("refine_root: the disk does not isolate a simple root");
        v = rv;
      }
    if (!v) throw DomainError("refine_root: no root in the disk");
    if (*v >= target || ramification_of(field, *v) != 1) {
      if constexpr (std::is_same_v<F, MixedCharField>) {
        // try to recognize a rational root
        const ValQ vc = field.val(c);
        const long shift = vc.is_finite() && vc < ValQ(0) ? -mpz_class(vc.q().get_num() / vc.q().get_den()).get_si() + 1 : 0;
        mpq_class scale = 1;
        for (long i = 0; i < shift; ++i) scale *= field.prime();
        const mpq_class cs = c * scale;
        const mpq_class prec = v->q() + shift;
        const long digits = mpz_class(prec.get_num() / prec.get_den()).get_si();
        if (auto r = detail::rational_reconstruction(cs, field.prime(), digits)) {
          const mpq_class cand = *r / scale;
          if (is_zero(g.eval(cand))) return {cand, ValQ::inf(), true};
        }
      }
      return {c, *v, false};
    }
    const auto seg = segment_residue(field, G, poly, *v);
    const auto& R = seg.residual;
    if (R.degree() != 1) throw DomainError("refine_root: residual of a simple root is not linear");
    const auto r = -R[0] / R[1];
    c = c + *field.element_of_valuation(*v) * field.lift(r);
    lam = *v;
  }
  throw DomainError("refine_root: no convergence");
}

/// {val(a - b) : a != b roots} over ordered pairs, from the Newton polygon of
/// R(h) = Res_z(f(z), f(z + h)) / h^n. R is recovered by interpolation at
/// n^2 + 1 distinct points of the field.
template <ValuedField F>
std::vector<ValQ> pairwise_distance_multiset(const F& field, const Poly<typename F::Elem>& f) {
  using E = typename F::Elem;
  if (f.is_zero()) throw ZeroPolynomial("distance multiset of 0");
  const long n = f.degree();
  if (n <= 1) return {};
  std::vector<E> xs, ys;
  const std::size_t pts = static_cast<std::size_t>(n * n + 1);
  for (std::size_t k = 0; k < pts; ++k) {
    const E h = field.distinct_element(k);
    xs.push_back(h);
    ys.push_back(resultant(f, f.shift(h)));
  }
  const Poly<E> R = interpolate(xs, ys);
  if (R.is_zero()) throw DomainError("repeated roots in distance oracle input");
  const std::size_t lo = R.low_order();
  if (lo != static_cast<std::size_t>(n)) throw DomainError("distance oracle input is not squarefree");
  std::vector<E> c(R.coeffs().begin() + static_cast<long>(lo), R.coeffs().end());
  const Poly<E> S(R.zero(), std::move(c));
  auto out = newton_polygon(field, S).root_valuation_multiset();
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace berk
