#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "berk/charts.hpp"
#include "berk/splitting.hpp"
#include "expr.hpp"

namespace berkcli {

using namespace berk;

namespace {

std::string join_vals(const std::vector<ValQ>& xs) {
  if (xs.empty()) return "-";
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ",") + x.str();
  return s;
}

std::string qstr(const mpq_class& q) { return q.get_str(); }

// Unresolved clusters are reported against the query that triggered them.
struct QueryFailure {
  const Query* query;
  UnresolvedCluster error;
};

template <ValuedField F>
class Runner {
 public:
  using E = typename F::Elem;
  using Point = BerkPoint<F>;

  Runner(F field, const Problem& pr, const Options& opts)
      : field_(std::move(field)), pr_(pr), opts_(opts), map_(make_map()) {
    for (const auto& h : pr_.hints) add_hint(h);
    if (!opts_.hints.empty())
      for (const auto& h : parse_hints(read_file(opts_.hints))) add_hint(h);
  }

  int eval(std::ostream& out) {
    out << "point\tf\tval_f\twitness\n";
    for (const auto& q : pr_.queries) {
      if (q.kind != "eval") continue;
      const Point x = parse_point(field_, q.value);
      guard(q, [&] {
        const auto r = radius_at(x);
        out << x.str(field_) << '\t' << radius_string(field_.prime(), r.val) << '\t' << r.val.str() << '\t'
            << witness_name(r.witness) << '\n';
      });
    }
    return Ok;
  }

  int skeleton(std::ostream& out) {
    const auto rep = verify();
    const auto& t = rep.tree;
    for (std::size_t i = 0; i < t.vertices.size(); ++i) out << "vertex\t" << i << '\t' << t.vertices[i].str(field_) << '\n';
    for (std::size_t e = 0; e < t.edges.size(); ++e)
      out << "edge\t" << e << '\t' << t.edges[e].lower << '\t' << t.edges[e].upper << '\n';
    for (std::size_t e = 0; e < rep.edges.size(); ++e) {
      for (const auto& pc : rep.edges[e].pieces)
        out << "piece\t" << e << '\t' << pc.from.str() << '\t' << pc.to.str() << '\t' << qstr(pc.slope) << '\t'
            << qstr(pc.intercept) << '\n';
      for (const auto& b : rep.edges[e].breakpoints) out << "breakpoint\t" << e << '\t' << b.str() << '\n';
    }
    out << "extended\t" << (rep.extended ? "yes" : "no") << '\n';
    if (!opts_.svg.empty()) write_svg(rep);
    return Ok;
  }

  int verify_cmd(std::ostream& out) {
    const auto rep = verify();
    const auto& t = rep.tree;
    for (std::size_t e = 0; e < rep.edges.size(); ++e) {
      const auto& er = rep.edges[e];
      std::vector<ValQ> slopes;
      for (const auto& pc : er.pieces) slopes.push_back(ValQ(pc.slope));
      out << "edge\t" << e << '\t' << t.vertices[er.lower].str(field_) << '\t' << t.vertices[er.upper].str(field_)
          << "\tpieces=" << er.pieces.size() << "\tslopes=" << join_vals(slopes)
          << "\tbreakpoints=" << join_vals(er.breakpoints) << '\t' << (er.ok ? "ok" : "FAIL " + er.failure) << '\n';
    }
    for (std::size_t k = 0; k < rep.constancy.size(); ++k) {
      const auto& c = rep.constancy[k];
      out << "constancy\t" << k << '\t' << c.point.str(field_) << '\t' << c.image.str(field_) << '\t'
          << c.f_point.str() << '\t' << c.f_image.str() << '\t' << (c.ok ? "ok" : "FAIL") << '\n';
    }
    out << "piecewise_linear\t" << (rep.pl_ok ? "PASS" : "FAIL") << '\n';
    out << "fiber_constancy\t" << (rep.constancy_ok ? "PASS" : "FAIL") << '\n';
    out << "result\t" << (rep.passes() ? "PASS" : "FAIL") << '\n';
    return rep.passes() ? Ok : VerificationFailed;
  }

  int charts(std::ostream& out) {
    for (const auto& q : pr_.queries) {
      if (q.kind == "ball") {
        need_parts(q, 2, "a ; v");
        const E a = parse_elem(field_, q.parts[0]);
        const ValQ v = parse_valq(q.parts[1]);
        const auto t = tuple_of_ball(field_, a, v);
        out << "ball\t" << field_.str(a) << '\t' << v.str() << '\t' << t.str() << '\t' << g_eval(t).str() << '\n';
      } else if (q.kind == "tuple") {
        need_parts(q, 2, "a ; ((v11,v12),(v21,v22))");
        const E a = parse_elem(field_, q.parts[0]);
        PolyRadiusTuple t;
        try {
          t = PolyRadiusTuple::parse(q.parts[1].text);
        } catch (const MalformedTuple& e) {
          throw ParseError(e.what(), q.parts[1].line, q.parts[1].col);
        }
        const auto r = radius_of_tuple(field_, a, t);
        out << "tuple\t" << field_.str(a) << '\t' << t.str() << '\t'
            << (r.infinity_neighborhood() ? std::string("inf-neighborhood") : r.radius->str()) << '\n';
      } else if (q.kind == "mconv") {
        need_parts(q, 3, "m ; t1 ; t2");
        const ValQ m = parse_valq(q.parts[0]), t1 = parse_valq(q.parts[1]), t2 = parse_valq(q.parts[2]);
        out << "mconv\t" << m.str() << '\t' << t1.str() << '\t' << t2.str() << '\t' << M_from_chart(m, t1, t2).str()
            << '\n';
      }
    }
    return Ok;
  }

  // Cluster-engine distances against the resultant oracle; when every
  // preimage and pole is an exact field point, also the split radius against
  // merge levels recomputed by direct Gauss evaluation along each path.
  int oracle(std::ostream& out) {
    bool agree = true;
    out << "point\tdistances_engine\tdistances_oracle\tval_f_engine\tval_f_oracle\tstatus\n";
    for (const auto& q : pr_.queries) {
      if (q.kind != "oracle") continue;
      const Point x = parse_point(field_, q.value);
      if (!x.is_type_i()) throw ParseError("oracle queries take an affine field point", q.value.line, q.value.col);
      guard(q, [&] {
        const auto fib = fiber_poly(field_, map_, std::optional<E>(x.center()));
        if (distinct_fiber_count(field_, fib) < map_.d_sep) {
          out << x.str(field_) << "\t-\t-\tINF\t-\tbranch\n";
          return;
        }
        const auto fc = fiber_clusters(field_, map_, x.center());
        const auto engine = fc.tree.distance_multiset(0);
        const auto resultant = pairwise_distance_multiset(field_, fib.poly);
        const ValQ f_engine = split_radius(field_, map_, std::optional<E>(x.center())).val;
        const auto f_oracle = direct_split_val(fc);
        const bool ok = engine == resultant && (!f_oracle || *f_oracle == f_engine);
        agree = agree && ok;
        out << x.str(field_) << '\t' << join_vals(engine) << '\t' << join_vals(resultant) << '\t' << f_engine.str()
            << '\t' << (f_oracle ? f_oracle->str() : std::string("-")) << '\t' << (ok ? "agree" : "DISAGREE") << '\n';
      });
    }
    return agree ? Ok : VerificationFailed;
  }

 private:
  // val(phi - x) on the path between two preimages is piecewise linear with
  // breaks only at joins with other roots and poles, so its minimum is found
  // among those joins and the top of the path.
  std::optional<ValQ> direct_split_val(const FiberClusters<F>& fc) const {
    if (fc.has_inf) return std::nullopt;
    std::vector<E> roots, poles;
    for (std::size_t l = 0; l < fc.tree.nodes.size(); ++l) {
      const auto& n = fc.tree.nodes[l];
      if (!n.is_leaf()) continue;
      if (!n.center || n.parent == npos) return std::nullopt;
      E c = *n.center;
      if (!n.exact) {
        const auto g = n.label() == 0 ? fc.fiber.poly : separable_radical(field_, map_.Q_sep);
        const auto r = refine_root(field_, g, c, fc.tree.nodes[n.parent].sep_val, ValQ(64));
        if (!r.exact) return std::nullopt;
        c = r.center;
      }
      (n.label() == 0 ? roots : poles).push_back(c);
    }
    auto level = [&](const E& c, const ValQ& rho) {
      return gauss_eval(field_, fc.fiber.poly, c, rho) - gauss_eval(field_, map_.Q_sep, c, rho);
    };
    ValQ best(0);
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        const ValQ top = field_.val(roots[i] - roots[j]);
        ValQ m = level(roots[i], top);
        for (const E* end : {&roots[i], &roots[j]})
          for (const auto* set : {&roots, &poles})
            for (const auto& g : *set) {
              const ValQ r = field_.val(*end - g);
              if (r.is_finite() && r >= top) m = min(m, level(*end, r));
            }
        best = max(best, m);
      }
    return best;
  }

  RationalMapNF<F> make_map() {
    auto coeffs = [&](const std::vector<Located>& src) {
      std::vector<E> c;
      for (const auto& l : src) c.push_back(parse_elem(field_, l));
      return Poly<E>(field_.zero(), std::move(c));
    };
    return normalize(field_, coeffs(pr_.num), coeffs(pr_.den));
  }

  void add_hint(const RootHint& h) {
    const Point pt = parse_point(field_, h.point);
    if (!pt.is_type_i()) throw ParseError("root hints attach to affine field points", h.point.line, h.point.col);
    std::vector<E> roots;
    for (const auto& r : h.roots) roots.push_back(parse_elem(field_, r));
    hints_.emplace_back(pt.center(), std::move(roots));
  }

  const std::vector<E>* hints_for(const Point& x) const {
    if (!x.is_type_i()) return nullptr;
    for (const auto& [c, roots] : hints_)
      if (c == x.center()) return &roots;
    return nullptr;
  }

  SplitRadius radius_at(const Point& x) {
    if (const auto* h = hints_for(x)) return split_radius(field_, map_, std::optional<E>(x.center()), h);
    return split_radius_at(field_, map_, x);
  }

  template <class Body>
  void guard(const Query& q, Body&& body) {
    try {
      body();
    } catch (const UnresolvedCluster& e) {
      throw QueryFailure{&q, e};
    }
  }

  void need_parts(const Query& q, std::size_t n, const char* shape) const {
    if (q.parts.size() != n) throw ParseError(q.kind + " expects '" + shape + "'", q.value.line, q.value.col);
  }

  VerifyBudget budget() const {
    VerifyBudget b;
    b.evaluations_per_edge = opts_.budget ? *opts_.budget : pr_.samples;
    b.offskeleton = pr_.offskeleton;
    b.margin = pr_.window.line == 0 ? ValQ(3) : parse_valq(pr_.window);
    b.seed = pr_.seed;
    return b;
  }

  SkeletonReport<F> verify() {
    static const Query auto_query{"skeleton", {"auto", 0, 0}, {}};
    const Query* q = &auto_query;
    for (const auto& x : pr_.queries)
      if (x.kind == "skeleton" || x.kind == "verify") q = &x;
    SkeletonReport<F> rep;
    guard(*q, [&] {
      FiniteTree<F> tree;
      if (pr_.skeleton.empty()) {
        tree = skeleton_for(field_, map_);
      } else {
        std::vector<Point> vs;
        for (const auto& v : pr_.skeleton) vs.push_back(parse_point(field_, v));
        tree = tree_from_vertices(field_, vs);
      }
      rep = verify_theorem(field_, map_, tree, budget());
    });
    return rep;
  }

  void write_svg(const SkeletonReport<F>& rep) const {
    std::ofstream svg(opts_.svg, std::ios::binary);
    if (!svg) throw std::runtime_error("cannot write " + opts_.svg);
    const double panel_w = 480, panel_h = 160, pad = 40;
    const double height = pad + rep.edges.size() * (panel_h + pad);
    auto num = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", v);
      return std::string(buf);
    };
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(panel_w + 2 * pad) << "\" height=\""
        << num(height) << "\" font-family=\"monospace\" font-size=\"11\">\n";
    for (std::size_t e = 0; e < rep.edges.size(); ++e) {
      const auto& er = rep.edges[e];
      const double top = pad + e * (panel_h + pad);
      const auto& t = rep.tree;
      svg << "<text x=\"" << num(pad) << "\" y=\"" << num(top - 8) << "\">edge " << e << ": "
          << t.vertices[er.lower].str(field_) << " -- " << t.vertices[er.upper].str(field_) << " (val f against rho)</text>\n";
      svg << "<rect x=\"" << num(pad) << "\" y=\"" << num(top) << "\" width=\"" << num(panel_w) << "\" height=\""
          << num(panel_h) << "\" fill=\"none\" stroke=\"#999\"/>\n";
      if (er.samples.size() < 2) continue;
      double x0 = er.samples.front().rho.q().get_d(), x1 = er.samples.back().rho.q().get_d();
      double y0 = 0, y1 = 0;
      for (const auto& s : er.samples)
        if (s.val_f.is_finite()) {
          y0 = std::min(y0, s.val_f.q().get_d());
          y1 = std::max(y1, s.val_f.q().get_d());
        }
      if (y1 == y0) y1 = y0 + 1;
      auto sx = [&](double x) { return pad + (x - x0) / (x1 - x0) * panel_w; };
      auto sy = [&](double y) { return top + panel_h - (y - y0) / (y1 - y0) * panel_h; };
      svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
      for (const auto& pc : er.pieces) {
        for (const auto& r : {pc.from, pc.to}) {
          const mpq_class y = pc.slope * r.q() + pc.intercept;
          svg << num(sx(r.q().get_d())) << ',' << num(sy(y.get_d())) << ' ';
        }
      }
      svg << "\"/>\n";
      for (const auto& s : er.samples)
        if (s.val_f.is_finite())
          svg << "<circle cx=\"" << num(sx(s.rho.q().get_d())) << "\" cy=\"" << num(sy(s.val_f.q().get_d()))
              << "\" r=\"2\" fill=\"#d62728\"/>\n";
      svg << "<text x=\"" << num(pad) << "\" y=\"" << num(top + panel_h + 14) << "\">rho " << er.samples.front().rho.str()
          << " .. " << er.samples.back().rho.str() << "</text>\n";
    }
    svg << "</svg>\n";
  }

  F field_;
  const Problem& pr_;
  const Options& opts_;
  RationalMapNF<F> map_;
  std::vector<std::pair<E, std::vector<E>>> hints_;
};

template <ValuedField F>
int dispatch(F field, const std::string& command, const Problem& pr, const Options& opts, std::ostream& out) {
  Runner<F> r(std::move(field), pr, opts);
  if (command == "eval") return r.eval(out);
  if (command == "skeleton") return r.skeleton(out);
  if (command == "verify") return r.verify_cmd(out);
  if (command == "charts") return r.charts(out);
  return r.oracle(out);
}

}  // namespace

int run_command(const std::string& command, const Problem& pr, const Options& opts, std::ostream& out,
                std::ostream& err) {
  if (command != "eval" && command != "skeleton" && command != "verify" && command != "charts" &&
      command != "oracle") {
    err << "error: unknown command '" << command << "'\n";
    return BadInput;
  }
  // Reports are buffered so that a failing query leaves no partial table.
  std::ostringstream buf;
  try {
    const int code = pr.mode == Problem::Mode::Mixed ? dispatch(MixedCharField(pr.p), command, pr, opts, buf)
                                                     : dispatch(EqualCharField(pr.p), command, pr, opts, buf);
    out << buf.str();
    return code;
  } catch (const ParseError& e) {
    err << "parse error at " << e.line() << ":" << e.col() << ": " << e.what() << '\n';
    return BadInput;
  } catch (const QueryFailure& f) {
    err << "unresolved cluster in query '" << f.query->kind << " = " << f.query->value.text << "'";
    if (f.query->value.line > 0) err << " (line " << f.query->value.line << ")";
    err << ": " << f.error.what();
    if (!f.error.residue_factor().empty()) err << " [residue factor " << f.error.residue_factor() << "]";
    err << '\n';
    return Unresolved;
  } catch (const UnresolvedCluster& e) {
    err << "unresolved cluster: " << e.what() << '\n';
    return Unresolved;
  } catch (const BudgetExceeded& e) {
    out << buf.str();
    err << "verification failed: " << e.what() << " at " << e.where() << '\n';
    return VerificationFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return BadInput;
  }
}

int run_file(const std::string& command, const std::string& path, const Options& opts, std::ostream& out,
             std::ostream& err) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return BadInput;
  }
  try {
    return run_command(command, parse_problem(text), opts, out, err);
  } catch (const ParseError& e) {
    err << "parse error at " << e.line() << ":" << e.col() << ": " << e.what() << '\n';
    return BadInput;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return BadInput;
  }
}

}  // namespace berkcli
