#include "doctest.h"

#include <algorithm>
#include <random>

#include "berk/polygon.hpp"
#include "gen.hpp"

using namespace berk;

namespace {

Poly<mpq_class> qpoly(std::vector<long> c) {
  std::vector<mpq_class> v(c.begin(), c.end());
  return Poly<mpq_class>(0, std::move(v));
}

std::vector<ValQ> vals(std::initializer_list<long> xs) {
  std::vector<ValQ> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("z^2 - 9 over Q_3") {
  MixedCharField f(3);
  auto poly = newton_polygon(f, qpoly({-9, 0, 1}));
  REQUIRE(poly.vertices.size() == 2);
  CHECK(poly.vertices[0].exponent == 0);
  CHECK(poly.vertices[0].valuation == ValQ(2));
  CHECK(poly.vertices[1].exponent == 2);
  CHECK(poly.vertices[1].valuation == ValQ(0));
  REQUIRE(poly.slopes.size() == 1);
  CHECK(poly.slopes[0].multiplicity == 2);
  CHECK(poly.root_valuation_multiset() == vals({1, 1}));
}

TEST_CASE("vanishing order is excluded from the hull") {
  MixedCharField f(3);
  auto poly = newton_polygon(f, qpoly({0, -1, 0, 1}));
  CHECK(poly.low_order == 1);
  CHECK(poly.slopes.size() == 1);
  CHECK(poly.slopes[0].multiplicity == 2);
  auto rv = poly.root_valuations();
  REQUIRE(rv.size() == 2);
  CHECK(rv[0] == std::make_pair(ValQ(0), 2L));
  CHECK(rv[1].first.is_inf());
}

TEST_CASE("z - p has one root of valuation one") {
  for (long p : {2L, 3L, 5L, 7L}) {
    MixedCharField f(static_cast<std::uint32_t>(p));
    CHECK(newton_polygon(f, qpoly({-p, 1})).root_valuation_multiset() == vals({1}));
  }
}

TEST_CASE("zero polynomial is rejected") {
  MixedCharField f(3);
  CHECK_THROWS_AS(newton_polygon(f, Poly<mpq_class>(0)), ZeroPolynomial);
  CHECK_THROWS_AS(gauss_eval(f, Poly<mpq_class>(0), mpq_class(0), ValQ(1)), ZeroPolynomial);
}

TEST_CASE("disk root counts") {
  MixedCharField f(3);
  auto g = qpoly({-9, 0, 1});
  CHECK(count_roots_in_disk(f, g, mpq_class(0), ValQ(1), Boundary::Closed) == 2);
  CHECK(count_roots_in_disk(f, g, mpq_class(0), ValQ(1), Boundary::Open) == 0);
  CHECK(count_roots_in_disk(f, g, mpq_class(3), ValQ::inf(), Boundary::Closed) >= 1);
  auto sq = qpoly({1, -2, 1});  // (z - 1)^2
  CHECK(count_roots_in_disk(f, sq, mpq_class(1), ValQ::inf(), Boundary::Closed) == 2);
}

TEST_CASE("Gauss norm evaluations") {
  MixedCharField f(3);
  CHECK(gauss_eval(f, qpoly({0, 1}), mpq_class(0), ValQ(3, 2)) == ValQ(3, 2));
  CHECK(gauss_eval(f, qpoly({-9, 0, 1}), mpq_class(0), ValQ(1)) == ValQ(2));
  for (long q = -3; q <= 3; ++q) CHECK(gauss_eval(f, qpoly({0, 0, 1}), mpq_class(0), ValQ(q, 2)) == ValQ(q));
  EqualCharField e(2);
  Poly<FpRat> z2(e.zero(), {e.zero(), e.zero(), e.one()});
  CHECK(gauss_eval(e, z2, e.zero(), ValQ(5, 7)) == ValQ(10, 7));
  CHECK_THROWS_AS(gauss_eval(f, qpoly({0, 1}), mpq_class(0), ValQ::inf()), DomainError);
}

namespace {

template <class F>
Poly<typename F::Elem> product_of_roots(const F& f, const std::vector<typename F::Elem>& roots) {
  Poly<typename F::Elem> acc = Poly<typename F::Elem>::constant(f.one());
  for (const auto& r : roots) acc = acc * Poly<typename F::Elem>::linear_root(r);
  return acc;
}

template <class F>
void split_corpus(const F& f, std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const long n = testgen::small(rng, 1, 5);
    std::vector<typename F::Elem> roots;
    std::vector<ValQ> expect;
    for (long i = 0; i < n; ++i) {
      auto r = testgen::random_elem(rng, f);
      roots.push_back(r);
      expect.push_back(f.val(r));
    }
    std::sort(expect.begin(), expect.end());
    auto got = newton_polygon(f, product_of_roots(f, roots)).root_valuation_multiset();
    std::sort(got.begin(), got.end());
    REQUIRE(got == expect);
    // count over the partition of valuations
    const auto poly = product_of_roots(f, roots);
    long sum = 0;
    std::vector<ValQ> distinct = expect;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const auto& v : distinct) {
      sum += count_roots_in_disk(f, poly, f.zero(), v, Boundary::Closed) -
             count_roots_in_disk(f, poly, f.zero(), v, Boundary::Open);
    }
    long low = 0;
    for (const auto& v : expect) low += v.is_inf();
    REQUIRE(sum == n);
    REQUIRE(static_cast<long>(poly.low_order()) == low);
  }
}

template <class F>
void gauss_laws(const F& f, std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    auto rp = [&] {
      std::vector<typename F::Elem> c;
      const long d = testgen::small(rng, 1, 3);
      for (long i = 0; i <= d; ++i) c.push_back(testgen::random_elem(rng, f));
      return Poly<typename F::Elem>(f.zero(), std::move(c));
    };
    auto a = rp(), b = rp();
    if (a.is_zero() || b.is_zero()) continue;
    const auto center = testgen::random_elem(rng, f);
    const ValQ rho(testgen::small(rng, -6, 6), testgen::small(rng, 1, 3));
    REQUIRE(gauss_eval(f, a * b, center, rho) == gauss_eval(f, a, center, rho) + gauss_eval(f, b, center, rho));

    // concave and piecewise linear: collinear between consecutive breakpoints
    const auto poly = newton_polygon(f, a.shift(center));
    std::vector<ValQ> breaks;
    for (const auto& [v, m] : poly.root_valuations())
      if (v.is_finite()) breaks.push_back(v);
    breaks.insert(breaks.begin(), breaks.empty() ? ValQ(-10) : breaks.front() - ValQ(3));
    breaks.push_back(breaks.back() + ValQ(3));
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const ValQ x0 = breaks[i], x2 = breaks[i + 1];
      if (!(x0 < x2)) continue;
      const ValQ x1 = (x0 + x2) / 2;
      const ValQ y0 = gauss_eval(f, a, center, x0), y1 = gauss_eval(f, a, center, x1),
                 y2 = gauss_eval(f, a, center, x2);
      REQUIRE((y1 - y0) * 2 == y2 - y0);
    }
  }
}

}  // namespace

TEST_CASE("polygon valuations match explicit roots") {
  split_corpus(MixedCharField(2), 101, 300);
  split_corpus(MixedCharField(3), 102, 300);
  split_corpus(EqualCharField(2), 103, 200);
  split_corpus(EqualCharField(3), 104, 200);
  split_corpus(GaussField<MixedCharField>(MixedCharField(3), ValQ(1, 2)), 105, 40);
}

TEST_CASE("Gauss norm is multiplicative and piecewise linear in rho") {
  gauss_laws(MixedCharField(3), 201, 300);
  gauss_laws(EqualCharField(2), 202, 200);
}
