#include "doctest.h"

#include <algorithm>
#include <random>

#include "berk/roots.hpp"
#include "gen.hpp"

using namespace berk;

namespace {

Poly<mpq_class> qpoly(std::vector<long> c) {
  std::vector<mpq_class> v(c.begin(), c.end());
  return Poly<mpq_class>(0, std::move(v));
}

template <class F>
Poly<typename F::Elem> from_roots(const F& f, const std::vector<typename F::Elem>& roots) {
  auto acc = Poly<typename F::Elem>::constant(f.one());
  for (const auto& r : roots) acc = acc * Poly<typename F::Elem>::linear_root(r);
  return acc;
}

std::vector<ValQ> vals(std::initializer_list<ValQ> xs) {
  std::vector<ValQ> out(xs);
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
void check_tree_invariants(const ClusterTree<F>& t) {
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    REQUIRE(n.distinct_count() <= n.mult_total());
    if (n.is_leaf()) {
      REQUIRE(n.distinct_count() == 1);
      REQUIRE(n.sep_val.is_inf());
      continue;
    }
    long m = 0, d = 0;
    for (std::size_t c : n.children) {
      REQUIRE(t.nodes[c].sep_val > n.sep_val);
      m += t.nodes[c].mult_total();
      d += t.nodes[c].distinct_count();
    }
    REQUIRE(m == n.mult_total());
    REQUIRE(d == n.distinct_count());
    REQUIRE(n.children.size() >= 2);
  }
  const auto ls = t.leaves();
  for (std::size_t a : ls)
    for (std::size_t b : ls)
      for (std::size_t c : ls)
        REQUIRE(t.distance(a, c) >= min(t.distance(a, b), t.distance(b, c)));
}

}  // namespace

TEST_CASE("tree of (z-1)(z-4)(z-2) over Q_3") {
  MixedCharField f(3);
  auto t = isolate(f, from_roots(f, {1, 4, 2}));
  check_tree_invariants(t);
  REQUIRE(t.nodes[0].sep_val == ValQ(0));
  REQUIRE(t.nodes[0].children.size() == 2);
  const auto ls = t.leaves();
  REQUIRE(ls.size() == 3);
  std::vector<mpq_class> centers;
  for (auto l : ls) {
    REQUIRE(t.nodes[l].exact);
    centers.push_back(*t.nodes[l].center);
  }
  auto at = [&](long x) { return ls[std::find(centers.begin(), centers.end(), mpq_class(x)) - centers.begin()]; };
  CHECK(t.distance(at(1), at(4)) == ValQ(1));
  CHECK(t.distance(at(1), at(2)) == ValQ(0));
  CHECK(t.distance(at(4), at(2)) == ValQ(0));
  CHECK(t.nodes[t.lca(at(1), at(4))].sep_val == ValQ(1));
}

TEST_CASE("z^2 - z over F_2(u)") {
  EqualCharField f(2);
  auto t = isolate(f, Poly<FpRat>(f.zero(), {f.zero(), f.from_int(-1), f.one()}));
  check_tree_invariants(t);
  const auto ls = t.leaves();
  REQUIRE(ls.size() == 2);
  CHECK(t.nodes[0].sep_val == ValQ(0));
  std::vector<FpRat> cs{*t.nodes[ls[0]].center, *t.nodes[ls[1]].center};
  CHECK(std::find(cs.begin(), cs.end(), f.zero()) != cs.end());
  CHECK(std::find(cs.begin(), cs.end(), f.one()) != cs.end());
}

TEST_CASE("purely inseparable roots are unresolved") {
  EqualCharField f(2);
  auto g = Poly<FpRat>(f.zero(), {-f.uniformizer(), f.zero(), f.one()});
  CHECK_THROWS_AS(isolate(f, g), UnresolvedCluster);
  CHECK_THROWS_AS(distinct_root_count(f, g), InseparableResidual);
}

TEST_CASE("unresolved clusters carry the blocking factor") {
  // (z^2 - 2)(z^2 - 6) over Q_2: the ramified classes cannot be separated
  MixedCharField f(2);
  auto g = qpoly({-2, 0, 1}) * qpoly({-6, 0, 1});
  try {
    isolate(f, g);
    FAIL("expected UnresolvedCluster");
  } catch (const UnresolvedCluster& e) {
    CHECK_FALSE(e.residue_factor().empty());
  }
}

TEST_CASE("conjugate clusters without centers") {
  SUBCASE("Artin-Schreier z^2 - z - 1/u") {
    EqualCharField f(2);
    auto g = Poly<FpRat>(f.zero(), {-(f.one() / f.uniformizer()), f.from_int(-1), f.one()});
    auto t = isolate(f, g);
    check_tree_invariants(t);
    CHECK(t.leaves().size() == 2);
    CHECK(t.nodes[0].sep_val == ValQ(0));
    CHECK(t.nodes[0].anchor == 0);
    CHECK(t.distance_multiset() == pairwise_distance_multiset(f, g));
  }
  SUBCASE("z^2 - 2 over Q_2") {
    MixedCharField f(2);
    auto t = isolate(f, qpoly({-2, 0, 1}));
    check_tree_invariants(t);
    CHECK(t.nodes[0].sep_val == ValQ(3, 2));
    CHECK(t.distance_multiset() == vals({ValQ(3, 2), ValQ(3, 2)}));
  }
  SUBCASE("z^4 - 2 over Q_2 has a two-level profile") {
    MixedCharField f(2);
    auto g = qpoly({-2, 0, 0, 0, 1});
    auto t = isolate(f, g);
    check_tree_invariants(t);
    CHECK(t.leaves().size() == 4);
    CHECK(t.distance_multiset() == pairwise_distance_multiset(f, g));
  }
}

TEST_CASE("multiplicities are carried to the leaves") {
  MixedCharField f(3);
  auto t = isolate(f, from_roots(f, {1, 1, 2, 10, 10, 10}));
  check_tree_invariants(t);
  CHECK(t.nodes[0].mult_total() == 6);
  CHECK(t.nodes[0].distinct_count() == 3);
  for (auto l : t.leaves()) {
    const mpq_class c = *t.nodes[l].center;
    CHECK(t.nodes[l].mult_total() == (c == 1 ? 2 : c == 2 ? 1 : 3));
  }
}

TEST_CASE("pairwise distance oracle") {
  CHECK(pairwise_distance_multiset(MixedCharField(3), qpoly({-9, 0, 1})) == vals({ValQ(1), ValQ(1)}));
  EqualCharField e(2);
  CHECK(pairwise_distance_multiset(e, Poly<FpRat>(e.zero(), {e.zero(), e.from_int(-1), e.one()})) ==
        vals({ValQ(0), ValQ(0)}));
  MixedCharField f(3);
  CHECK(pairwise_distance_multiset(f, from_roots(f, {1, 4, 2})) ==
        vals({ValQ(1), ValQ(1), ValQ(0), ValQ(0), ValQ(0), ValQ(0)}));
  CHECK_THROWS_AS(pairwise_distance_multiset(f, Poly<mpq_class>(0)), ZeroPolynomial);
}

TEST_CASE("distinct root counts") {
  CHECK(distinct_root_count(MixedCharField(3), qpoly({-9, 0, 1})) == 2);
  CHECK(distinct_root_count(MixedCharField(2), qpoly({1, -2, 1})) == 1);
  CHECK(distinct_root_count(MixedCharField(3), qpoly({0, -1, 0, 1})) == 3);
  EqualCharField e(2);
  // z (z^2 - u)^2: derivative nonzero, the square factor is inseparable
  auto g = Poly<FpRat>(e.zero(), {e.zero(), e.one()}) *
           pow(Poly<FpRat>(e.zero(), {-e.uniformizer(), e.zero(), e.one()}), 2);
  CHECK(distinct_root_count(e, g) == 2);
}

TEST_CASE("hints build the tree directly") {
  MixedCharField f(3);
  auto g = from_roots(f, {3, -3, 1});
  auto pts = roots_from_hints(f, g, {3, -3, 1}, 0);
  auto t = tree_from_points(f, pts, 1);
  check_tree_invariants(t);
  CHECK(t.distance_multiset() == pairwise_distance_multiset(f, g));
  CHECK_THROWS_AS(roots_from_hints(f, g, {mpq_class(2)}, 0), DomainError);
  CHECK_THROWS_AS(roots_from_hints(f, g, {mpq_class(3)}, 0), DomainError);
}

namespace {

template <class F>
void explicit_corpus(const F& f, std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const long n = testgen::small(rng, 1, 5);
    std::vector<typename F::Elem> roots;
    while (static_cast<long>(roots.size()) < n) {
      auto r = testgen::random_elem(rng, f);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    auto tree = isolate(f, from_roots(f, roots));
    check_tree_invariants(tree);
    const auto ls = tree.leaves();
    REQUIRE(ls.size() == roots.size());
    // match each leaf to the explicit root inside its disk
    std::vector<std::size_t> match;
    for (auto l : ls) {
      const auto& node = tree.nodes[l];
      REQUIRE(node.center);
      if (node.parent == npos) {
        match.push_back(0);
        continue;
      }
      const ValQ bound = tree.nodes[node.parent == npos ? l : node.parent].sep_val;
      std::size_t hit = npos;
      for (std::size_t i = 0; i < roots.size(); ++i) {
        const ValQ d = f.val(*node.center - roots[i]);
        if (node.exact ? d.is_inf() : d > bound) {
          REQUIRE(hit == npos);
          hit = i;
        }
      }
      REQUIRE(hit != npos);
      match.push_back(hit);
    }
    for (std::size_t a = 0; a < ls.size(); ++a)
      for (std::size_t b = 0; b < ls.size(); ++b)
        if (a != b) REQUIRE(tree.distance(ls[a], ls[b]) == f.val(roots[match[a]] - roots[match[b]]));
  }
}

template <class F>
void oracle_corpus(const F& f, std::uint64_t seed, int trials, int& resolved) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<typename F::Elem> c;
    const long d = testgen::small(rng, 2, 4);
    for (long i = 0; i < d; ++i) c.push_back(testgen::random_elem(rng, f));
    c.push_back(f.one());
    Poly<typename F::Elem> g(f.zero(), std::move(c));
    try {
      g = separable_radical(f, g);
    } catch (const InseparableResidual&) {
      continue;
    }
    try {
      auto tree = isolate(f, g);
      check_tree_invariants(tree);
      REQUIRE(tree.distance_multiset() == pairwise_distance_multiset(f, g));
      ++resolved;
    } catch (const UnresolvedCluster&) {
    }
  }
}

}  // namespace

TEST_CASE("isolation recovers explicit roots") {
  explicit_corpus(MixedCharField(2), 301, 200);
  explicit_corpus(MixedCharField(3), 302, 200);
  explicit_corpus(EqualCharField(2), 303, 100);
  explicit_corpus(EqualCharField(3), 304, 100);
}

TEST_CASE("isolation agrees with the resultant oracle") {
  int resolved = 0;
  oracle_corpus(MixedCharField(2), 401, 100, resolved);
  oracle_corpus(MixedCharField(3), 402, 100, resolved);
  oracle_corpus(EqualCharField(2), 403, 60, resolved);
  oracle_corpus(EqualCharField(3), 404, 60, resolved);
  CHECK(resolved >= 100);
  MESSAGE("resolved instances: " << resolved);
}
