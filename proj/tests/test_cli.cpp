#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "problem.hpp"

using namespace berkcli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::string& cmd, const std::string& text, const Options& opts = {}) {
  std::ostringstream out, err;
  int code = 0;
  try {
    code = run_command(cmd, parse_problem(text), opts, out, err);
  } catch (const ParseError& e) {
    err << "parse error at " << e.line() << ":" << e.col() << ": " << e.what();
    code = BadInput;
  }
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string l;
  while (std::getline(in, l)) out.push_back(l);
  return out;
}

const char* kArtinSchreier2 = R"([field]
mode = equal
p = 2

[map]
num = 0, -1, 1    # z^2 - z

[queries]
eval = 0
eval = inf
eval = u^-1
eval = disk(u + 1; 3)
)";

const char* kSquare3 = R"([field]
mode = mixed
p = 3

[map]
num = 0, 0, 1
den = 1

[queries]
eval = 9
eval = disk(0; 1/2)
skeleton = auto
verify = on
ball = 1 ; 1
ball = 1/9 ; 0
tuple = 1/9 ; ((0,4),(0,0))
mconv = 2 ; 1 ; 1
oracle = 9
oracle = 0

[budget]
samples = 200
offskeleton = 30
seed = 7
)";

}  // namespace

TEST_CASE("eval rows for z^p - z") {
  const auto r = run("eval", kArtinSchreier2);
  REQUIRE(r.code == Ok);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "point\tf\tval_f\twitness");
  CHECK(ls[1] == "0\t1\t0\tcap");
  CHECK(ls[2] == "inf\t0\tINF\tbranch");
  CHECK(ls[3] == "1/(u)\t1\t0\tcap");
  CHECK(ls[4] == "disk(u + 1; 3)\t1\t0\tcap");
}

TEST_CASE("eval, charts and oracle for the square map") {
  const auto e = run("eval", kSquare3);
  REQUIRE(e.code == Ok);
  CHECK(lines(e.out)[1] == "9\t3^(-2)\t2\tmerge");
  CHECK(lines(e.out)[2] == "disk(0; 1/2)\t3^(-1/2)\t1/2\tmerge");

  const auto c = run("charts", kSquare3);
  REQUIRE(c.code == Ok);
  const auto cl = lines(c.out);
  REQUIRE(cl.size() == 4);
  CHECK(cl[0] == "ball\t1\t1\t((0,1),(1,0))\t2");
  CHECK(cl[1] == "ball\t1/9\t0\t((0,4),(0,0))\t4");
  CHECK(cl[2] == "tuple\t1/9\t((0,4),(0,0))\t0");
  CHECK(cl[3] == "mconv\t2\t1\t1\t1");

  const auto o = run("oracle", kSquare3);
  REQUIRE(o.code == Ok);
  CHECK(lines(o.out)[1] == "9\t1,1\t1,1\t2\t2\tagree");
  CHECK(lines(o.out)[2] == "0\t-\t-\tINF\t-\tbranch");
}

TEST_CASE("verify passes on the spine and is deterministic") {
  const auto a = run("verify", kSquare3);
  const auto b = run("verify", kSquare3);
  REQUIRE(a.code == Ok);
  CHECK(a.out == b.out);
  const auto ls = lines(a.out);
  CHECK(ls[0] == "edge\t0\t0\tinf\tpieces=2\tslopes=0,1\tbreakpoints=0\tok");
  CHECK(ls.back() == "result\tPASS");
  for (const char* cmd : {"eval", "skeleton", "charts", "oracle"}) CHECK(run(cmd, kSquare3).out == run(cmd, kSquare3).out);
}

TEST_CASE("skeleton output re-ingested as a user skeleton gives the same verify report") {
  for (const char* text : {kSquare3, kArtinSchreier2}) {
    const auto sk = run("skeleton", text);
    REQUIRE(sk.code == Ok);
    std::string user = std::string(text) + "\n[skeleton]\n";
    for (const auto& l : lines(sk.out))
      if (l.rfind("vertex\t", 0) == 0) user += "vertex = " + l.substr(l.find('\t', 7) + 1) + "\n";
    const auto a = run("verify", text);
    const auto b = run("verify", user);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(run("skeleton", user).out == sk.out);
  }
}

TEST_CASE("a tripod skeleton for z + 1/z") {
  const auto r = run("skeleton", R"([field]
mode = mixed
p = 3
[map]
num = 1, 0, 1
den = 0, 1
)");
  REQUIRE(r.code == Ok);
  const auto ls = lines(r.out);
  int vertices = 0;
  for (const auto& l : ls) vertices += l.rfind("vertex\t", 0) == 0;
  CHECK(vertices == 5);  // 0, 2, -2, the Gauss point, infinity
  CHECK(ls.back() == "extended\tno");
}

TEST_CASE("exit codes") {
  SUBCASE("parse errors carry line and column") {
    const auto r = run("eval", "[field]\nmode = mixed\np = 3\n[map]\nnum = 0, 0, 1\n[queries]\neval = 1 + * 2\n");
    CHECK(r.code == BadInput);
    CHECK(r.err.find("7:12") != std::string::npos);
    const auto np = run("eval", "[field]\nmode = mixed\np = 9\n[map]\nnum = 1\n");
    CHECK(np.code == BadInput);
    CHECK(np.err.find("3:5") != std::string::npos);
    const auto u = run("eval", "[field]\nmode = mixed\np = 3\n[map]\nnum = 0, u\n");
    CHECK(u.code == BadInput);
    CHECK(u.err.find("5:10") != std::string::npos);
    CHECK(run("eval", "[field]\nmode = odd\n").code == BadInput);
    CHECK(run("eval", "[fields]\n").code == BadInput);
    CHECK(run("eval", "[field]\nmode = mixed\np = 3\n[map]\nnum = 1, 1\n[queries]\nball = 1\n").code == Ok);
    CHECK(run("charts", "[field]\nmode = mixed\np = 3\n[map]\nnum = 1, 1\n[queries]\nball = 1\n").code == BadInput);
  }
  SUBCASE("unresolved clusters name the query") {
    const auto r = run("eval", "[field]\nmode = mixed\np = 2\n[map]\nnum = 12, 0, -8, 0, 1\n[queries]\neval = 1\neval = 0\n");
    CHECK(r.code == Unresolved);
    CHECK(r.err.find("eval = 0") != std::string::npos);
    CHECK(r.out.empty());
  }
  SUBCASE("budget exhaustion is a verification failure") {
    Options o;
    o.budget = 3;
    const auto r = run("verify", kSquare3, o);
    CHECK(r.code == VerificationFailed);
    CHECK(r.err.find("BudgetExceeded") != std::string::npos);
  }
  SUBCASE("constant maps are rejected") {
    CHECK(run("eval", "[field]\nmode = mixed\np = 3\n[map]\nnum = 2\nden = 3\n").code == BadInput);
  }
}

TEST_CASE("root hints") {
  const std::string base = "[field]\nmode = mixed\np = 3\n[map]\nnum = 0, 0, 1\n[queries]\neval = 9\n";
  const auto plain = run("eval", base);
  const auto hinted = run("eval", base + "[roots]\n9 : 3, -3\n");
  REQUIRE(hinted.code == Ok);
  CHECK(hinted.out == plain.out);
  CHECK(run("eval", base + "[roots]\n9 : 3, 4\n").code == BadInput);

  const std::string path = "test_cli_hints.txt";
  {
    std::ofstream h(path);
    h << "[roots]\n9 : -3, 3\n";
  }
  Options o;
  o.hints = path;
  CHECK(run("eval", base, o).out == plain.out);
  std::remove(path.c_str());
}

TEST_CASE("svg output is deterministic") {
  Options o;
  o.svg = "test_cli_plot.svg";
  REQUIRE(run("skeleton", kSquare3, o).code == Ok);
  std::ifstream a(o.svg);
  std::stringstream first;
  first << a.rdbuf();
  REQUIRE(run("skeleton", kSquare3, o).code == Ok);
  std::ifstream b(o.svg);
  std::stringstream second;
  second << b.rdbuf();
  CHECK(first.str() == second.str());
  CHECK(first.str().rfind("<svg", 0) == 0);
  std::remove(o.svg.c_str());
}
