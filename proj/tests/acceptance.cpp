// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "berk/charts.hpp"
#include "berk/splitting.hpp"
#include "commands.hpp"
#include "gen.hpp"
#include "problem.hpp"
#include "properties.hpp"

using namespace berk;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

using QP = Poly<mpq_class>;
using UP = Poly<FpRat>;

QP monomial_q(long d) {
  std::vector<mpq_class> c(static_cast<std::size_t>(d) + 1, 0);
  c.back() = 1;
  return QP(0, std::move(c));
}

UP artin_schreier(const EqualCharField& f) {
  std::vector<FpRat> c(f.prime() + 1, f.zero());
  c[1] = f.from_int(-1);
  c[f.prime()] = f.one();
  return UP(f.zero(), std::move(c));
}

FpRat random_unit(std::mt19937_64& rng, const EqualCharField& f) {
  for (;;) {
    const auto a = testgen::random_elem(rng, f);
    if (f.val(a) == ValQ(0)) return a;
  }
}

// 1. z^p - z over F_p((u)): f = 1 away from infinity, f(inf) = 0.
Outcome example_artin_schreier(std::string& note) {
  Outcome o;
  std::mt19937_64 rng(1001);
  const std::vector<ValQ> rhos{ValQ(0), ValQ(1, 2), ValQ(1), ValQ(3)};
  int points = 0;
  for (std::uint32_t p : {2u, 3u}) {
    const EqualCharField f(p);
    const auto m = normalize(f, artin_schreier(f), UP(f.zero(), {f.one()}));
    for (int i = 0; i < 25; ++i) {
      const long k = -2 + i % 6;
      const FpRat a = random_unit(rng, f) * *f.element_of_valuation(ValQ(k));
      BerkPoint<EqualCharField> x = BerkPoint<EqualCharField>::type_i(a);
      if (i % 2 == 1) x = BerkPoint<EqualCharField>::type_ii(a, rhos[(i / 2) % rhos.size()]);
      const auto r = split_radius_at(f, m, x);
      o.expect(r.val == ValQ(0), "p=" + std::to_string(p) + " f(" + x.str(f) + ") = " + radius_string(p, r.val));
      ++points;
    }
    const auto inf = split_radius_at(f, m, BerkPoint<EqualCharField>::infinity());
    o.expect(inf.val.is_inf(), "f(inf) = " + radius_string(p, inf.val));
  }
  note = std::to_string(points) + " points, f = 1; f(inf) = 0";
  return o;
}

// 2. z^p over Q_p at x = 1: val f = p/(p-1), from the resultant distances of
// mu_p and the Gauss value of z^p - 1 at the radius of the mu_p cluster.
Outcome wild_kummer(std::string& note) {
  Outcome o;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const MixedCharField f(p);
    const auto m = normalize(f, monomial_q(p), QP(0, {mpq_class(1)}));
    auto fib = monomial_q(p);
    fib = fib - QP(0, {mpq_class(1)});
    const auto dist = pairwise_distance_multiset(f, fib);
    const ValQ radius = dist.front();
    bool uniform = true;
    for (const auto& d : dist) uniform = uniform && d == radius;
    o.expect(uniform && radius == ValQ(1, p - 1), "mu_" + std::to_string(p) + " distances not uniform 1/(p-1)");
    const ValQ oracle = gauss_eval(f, fib, mpq_class(1), radius);
    const auto r = split_radius(f, m, std::optional<mpq_class>(1));
    o.expect(r.val == oracle, "p=" + std::to_string(p) + ": val f = " + r.val.str() + ", oracle " + oracle.str());
    o.expect(r.val == ValQ(p, p - 1), "p=" + std::to_string(p) + ": val f = " + r.val.str());
    o.expect(splits_at(f, m, std::optional<mpq_class>(1), r.val).splits, "no splitting at the critical radius");
    if (p == 2) o.expect(r.val == ValQ(2), "hand value at p = 2");
  }
  note = "val f(1) = 2, 3/2, 5/4 for p = 2, 3, 5";
  return o;
}

// 3. z^2 over Q_3 end to end through the command layer.
Outcome tame_square(std::string& note) {
  Outcome o;
  const std::string text =
      "[field]\nmode = mixed\np = 3\n[map]\nnum = 0, 0, 1\n[queries]\neval = 0\neval = inf\nverify = on\n"
      "[budget]\noffskeleton = 30\nseed = 3\n";
  const auto pr = berkcli::parse_problem(text);
  std::ostringstream out, err;
  const int code = berkcli::run_command("verify", pr, {}, out, err);
  o.expect(code == 0, "verify exit " + std::to_string(code) + " " + err.str());
  std::vector<std::string> lines;
  {
    std::istringstream in(out.str());
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
  }
  int edges = 0, samples = 0, good = 0;
  for (const auto& l : lines) {
    if (l.rfind("edge\t", 0) == 0) {
      ++edges;
      o.expect(l == "edge\t0\t0\tinf\tpieces=2\tslopes=0,1\tbreakpoints=0\tok", "spine report: " + l);
    }
    if (l.rfind("constancy\t", 0) == 0) {
      ++samples;
      good += l.size() >= 3 && l.compare(l.size() - 3, 3, "\tok") == 0;
    }
  }
  o.expect(edges == 1, "expected the spine as the only edge");
  o.expect(samples == 30 && good == 30, "fiber constancy " + std::to_string(good) + "/" + std::to_string(samples));
  o.expect(!lines.empty() && lines.back() == "result\tPASS", "verify result");

  std::ostringstream ev, everr;
  berkcli::run_command("eval", pr, {}, ev, everr);
  o.expect(ev.str() == "point\tf\tval_f\twitness\n0\t0\tINF\tbranch\ninf\t0\tINF\tbranch\n", "f(0), f(inf): " + ev.str());

  // closed form f(x) = min(1, |x|) at off-spine samples
  const MixedCharField f(3);
  const auto m = normalize(f, monomial_q(2), QP(0, {mpq_class(1)}));
  std::mt19937_64 rng(3003);
  for (int i = 0; i < 30; ++i) {
    const mpq_class x = testgen::random_elem(rng, f);
    if (x == 0) continue;
    const ValQ expect = max(ValQ(0), f.val(x));
    o.expect(split_radius(f, m, std::optional<mpq_class>(x)).val == expect, "closed form at " + x.get_str());
  }
  note = "spine: one breakpoint at the Gauss point, slopes 0,1; 30/30 constancy";
  return o;
}

// 4. Chart tables.
Outcome chart_tables(std::string& note) {
  Outcome o;
  struct Row {
    ValQ va, v;
    const char* tuple;
  };
  const std::vector<Row> rows{
      {ValQ(1), ValQ(0), "((0,0),(0,0))"},        {ValQ(1), ValQ(1), "((0,0),(1,0))"},
      {ValQ(2), ValQ(5, 2), "((0,0),(5/2,0))"},   {ValQ(1, 2), ValQ(3), "((0,0),(3,0))"},
      {ValQ(0), ValQ(0), "((0,0),(0,0))"},        {ValQ(0), ValQ(1), "((0,1),(1,0))"},
      {ValQ(0), ValQ(1, 3), "((0,1/3),(1/3,0))"}, {ValQ(0), ValQ(4), "((0,4),(4,0))"},
      {ValQ(-1), ValQ(0), "((0,2),(0,0))"},       {ValQ(-1), ValQ(1), "((0,3),(0,0))"},
      {ValQ(-2), ValQ(1, 2), "((0,9/2),(0,0))"},  {ValQ(-1, 2), ValQ(2), "((0,3),(0,0))"},
  };
  for (const auto& r : rows) {
    const auto t = tuple_of_ball(r.va, r.v);
    o.expect(t.str() == r.tuple, "tuple(" + r.va.str() + ", " + r.v.str() + ") = " + t.str());
    const auto back = radius_of_tuple(r.va, PolyRadiusTuple::parse(r.tuple));
    o.expect(back.radius && *back.radius == r.v, std::string("radius of ") + r.tuple);
  }
  o.expect(radius_of_tuple(ValQ(-1), PolyRadiusTuple::parse("((0,1/2),(0,0))")).infinity_neighborhood(),
           "large chart-2 radius is a neighbourhood of infinity");
  struct MRow {
    ValQ m, t1, t2, expect;
  };
  const std::vector<MRow> ms{
      {ValQ(3), ValQ(1), ValQ(0), ValQ(3)},          {ValQ(2), ValQ(0), ValQ(0), ValQ(1)},
      {ValQ(5, 2), ValQ(4), ValQ(4), ValQ(5, 4)},    {ValQ(5), ValQ(-1), ValQ(0), ValQ(3)},
      {ValQ(1), ValQ(-1), ValQ(0), ValQ(0)},         {ValQ(3), ValQ(-1, 2), ValQ(0), ValQ(2)},
  };
  for (const auto& r : ms)
    o.expect(M_from_chart(r.m, r.t1, r.t2) == r.expect,
             "M(" + r.m.str() + "; " + r.t1.str() + ", " + r.t2.str() + ") = " + M_from_chart(r.m, r.t1, r.t2).str());
  note = std::to_string(rows.size()) + " round trips, " + std::to_string(ms.size()) + " M conversions";
  return o;
}

// 5. Property suites.
Outcome property_suites(std::string& note) {
  Outcome o;
  std::string counts;
  auto add = [&](const char* name, const props::Result& r, int want) {
    o.expect(r.ok() && r.trials == want, std::string(name) + ": " + r.first);
    counts += std::string(counts.empty() ? "" : ", ") + name + " " + std::to_string(r.trials);
  };
  add("monotone", props::monotone_in_radius(200), 200);
  add("attainment/bound/ultrametric", props::fiber_laws(150), 150);
  add("frobenius", props::frobenius_invariance(50), 50);
  add("g-monotone", props::g_monotone(500), 500);
  add("oracle", props::oracle_equivalence(100), 100);
  note = counts;
  return o;
}

// 6. Reduction fibers of the unit disk are the open residue balls.
Outcome reduction_fibers(std::string& note) {
  Outcome o;
  std::mt19937_64 rng(6006);
  const MixedCharField q(3);
  const EqualCharField e(2);
  auto pairs = [&](const auto& f, int n) {
    using P = BerkPoint<std::decay_t<decltype(f)>>;
    for (int i = 0; i < n; ++i) {
      const auto x = testgen::random_integral(rng, f);
      const auto y = testgen::random_integral(rng, f);
      const auto probe = testgen::small(rng, 0, 3) == 0 ? P::type_ii(y, ValQ(testgen::small(rng, 0, 2), 2)) : P::type_i(y);
      const bool in = reduction_fiber_contains(f, x, probe);
      o.expect(in == (reduce_disk_point(f, probe) == reduce_disk_point(f, P::type_i(x))),
               "reduction mismatch at " + f.str(x) + " / " + probe.str(f));
    }
  };
  pairs(q, 50);
  pairs(e, 50);
  int probes = 0;
  for (int i = 0; i < 10; ++i) {
    const mpq_class x = testgen::random_integral(rng, q);
    mpq_class unit;
    do unit = testgen::random_integral(rng, q);
    while (q.val(unit) != ValQ(0));
    const mpq_class small = unit * 3;
    o.expect(!reduction_fiber_contains(q, x, BerkPoint<MixedCharField>::type_i(x + unit)), "boundary probe included");
    o.expect(reduction_fiber_contains(q, x, BerkPoint<MixedCharField>::type_i(x + small)), "inner probe excluded");
    probes += 2;
  }
  note = "100 pairs, " + std::to_string(probes) + " boundary probes";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome(std::string&)> run;
  };
  const std::vector<Criterion> all{
      {1, "z^p - z: f = 1 off infinity, 0 at infinity", 5, example_artin_schreier},
      {2, "z^p at x = 1: val f = p/(p-1)", 5, wild_kummer},
      {3, "z^2 over Q_3: verify on the spine", 30, tame_square},
      {4, "chart tuple and M tables", 1, chart_tables},
      {5, "property suites", 120, property_suites},
      {6, "reduction fibers are open unit balls", 1, reduction_fibers},
  };
  bool all_pass = true;
  for (const auto& c : all) {
    std::string note;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run(note);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) o.expect(false, "over time budget");
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, c.limit_s);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << timing << "] "
              << (o.pass ? note : o.detail) << '\n';
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
