#include "problem.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace berkcli {

namespace {

struct Line {
  std::string text;
  int number;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string s;
  int n = 0;
  while (std::getline(in, s)) {
    ++n;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    const auto hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    out.push_back({s, n});
  }
  return out;
}

Located trimmed(const std::string& s, std::size_t from, std::size_t to, int line) {
  while (from < to && std::isspace(static_cast<unsigned char>(s[from]))) ++from;
  while (to > from && std::isspace(static_cast<unsigned char>(s[to - 1]))) --to;
  return {s.substr(from, to - from), line, static_cast<int>(from) + 1};
}

// Splits at top-level separators (not inside parentheses).
std::vector<Located> split_at(const Located& v, char sep) {
  std::vector<Located> out;
  int depth = 0;
  std::size_t start = 0;
  const std::string& s = v.text;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size()) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (s[i] != sep || depth != 0) continue;
    }
    Located part = trimmed(s, start, i, v.line);
    part.col += v.col - 1;
    if (part.text.empty()) throw ParseError("empty item", v.line, v.col + static_cast<int>(start));
    out.push_back(part);
    start = i + 1;
  }
  return out;
}

long parse_long(const Located& v, long lo, long hi) {
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(v.text, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + v.text + "'", v.line, v.col);
  }
  if (used != v.text.size()) throw ParseError("trailing characters after integer", v.line, v.col + static_cast<int>(used));
  if (x < lo || x > hi)
    throw ParseError("value " + v.text + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", v.line,
                     v.col);
  return x;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

struct KeyValue {
  Located key, value;
};

KeyValue key_value(const Line& l) {
  const auto eq = l.text.find('=');
  if (eq == std::string::npos) {
    const Located all = trimmed(l.text, 0, l.text.size(), l.number);
    throw ParseError("expected 'key = value'", l.number, all.col);
  }
  KeyValue kv{trimmed(l.text, 0, eq, l.number), trimmed(l.text, eq + 1, l.text.size(), l.number)};
  if (kv.key.text.empty()) throw ParseError("missing key", l.number, 1);
  if (kv.value.text.empty()) throw ParseError("missing value", l.number, static_cast<int>(eq) + 2);
  return kv;
}

RootHint hint_line(const Line& l) {
  const auto colon = l.text.find(':');
  if (colon == std::string::npos) {
    const Located all = trimmed(l.text, 0, l.text.size(), l.number);
    throw ParseError("expected 'point : root, root, ...'", l.number, all.col);
  }
  RootHint h{trimmed(l.text, 0, colon, l.number), {}};
  if (h.point.text.empty()) throw ParseError("missing point", l.number, 1);
  Located rest = trimmed(l.text, colon + 1, l.text.size(), l.number);
  if (rest.text.empty()) throw ParseError("missing roots", l.number, static_cast<int>(colon) + 2);
  h.roots = split_at(rest, ',');
  return h;
}

}  // namespace

Problem parse_problem(const std::string& text) {
  Problem pr;
  std::string section;
  std::set<std::string> seen;
  bool have_p = false, have_mode = false, have_num = false;
  static const std::set<std::string> sections{"field", "map", "roots", "queries", "budget", "skeleton"};
  static const std::set<std::string> query_kinds{"eval", "skeleton", "verify", "ball", "tuple", "mconv", "oracle"};
  for (const Line& l : split_lines(text)) {
    const Located t = trimmed(l.text, 0, l.text.size(), l.number);
    if (t.text.empty()) continue;
    if (t.text.front() == '[') {
      if (t.text.back() != ']') throw ParseError("unterminated section header", l.number, t.col);
      section = t.text.substr(1, t.text.size() - 2);
      if (!sections.count(section)) throw ParseError("unknown section [" + section + "]", l.number, t.col + 1);
      if (!seen.insert(section).second) throw ParseError("duplicate section [" + section + "]", l.number, t.col + 1);
      continue;
    }
    if (section.empty()) throw ParseError("content before the first section", l.number, t.col);
    if (section == "roots") {
      pr.hints.push_back(hint_line(l));
      continue;
    }
    const KeyValue kv = key_value(l);
    const std::string& k = kv.key.text;
    if (section == "field") {
      if (k == "mode") {
        if (kv.value.text == "mixed") pr.mode = Problem::Mode::Mixed;
        else if (kv.value.text == "equal") pr.mode = Problem::Mode::Equal;
        else throw ParseError("mode must be 'mixed' or 'equal'", kv.value.line, kv.value.col);
        have_mode = true;
      } else if (k == "p") {
        const long p = parse_long(kv.value, 2, 65521);
        if (!is_prime(p)) throw ParseError(kv.value.text + " is not prime", kv.value.line, kv.value.col);
        pr.p = static_cast<std::uint32_t>(p);
        have_p = true;
      } else {
        throw ParseError("unknown key '" + k + "' in [field]", kv.key.line, kv.key.col);
      }
    } else if (section == "map") {
      if (k == "num") {
        pr.num = split_at(kv.value, ',');
        have_num = true;
      } else if (k == "den") {
        pr.den = split_at(kv.value, ',');
      } else {
        throw ParseError("unknown key '" + k + "' in [map]", kv.key.line, kv.key.col);
      }
    } else if (section == "queries") {
      if (!query_kinds.count(k)) throw ParseError("unknown query '" + k + "'", kv.key.line, kv.key.col);
      pr.queries.push_back({k, kv.value, split_at(kv.value, ';')});
    } else if (section == "budget") {
      if (k == "samples") pr.samples = parse_long(kv.value, 4, 1000000);
      else if (k == "offskeleton") pr.offskeleton = static_cast<int>(parse_long(kv.value, 0, 100000));
      else if (k == "window") pr.window = kv.value;
      else if (k == "seed") pr.seed = static_cast<std::uint64_t>(parse_long(kv.value, 0, 1L << 62));
      else throw ParseError("unknown key '" + k + "' in [budget]", kv.key.line, kv.key.col);
    } else if (section == "skeleton") {
      if (k != "vertex") throw ParseError("expected 'vertex = point'", kv.key.line, kv.key.col);
      pr.skeleton.push_back(kv.value);
    }
  }
  if (!have_mode) throw ParseError("missing 'mode' in [field]", 1, 1);
  if (!have_p) throw ParseError("missing 'p' in [field]", 1, 1);
  if (!have_num) throw ParseError("missing 'num' in [map]", 1, 1);
  if (pr.den.empty()) pr.den.push_back({"1", 0, 0});
  return pr;
}

std::vector<RootHint> parse_hints(const std::string& text) {
  std::vector<RootHint> out;
  bool in_roots = false;
  for (const Line& l : split_lines(text)) {
    const Located t = trimmed(l.text, 0, l.text.size(), l.number);
    if (t.text.empty()) continue;
    if (t.text == "[roots]") {
      in_roots = true;
      continue;
    }
    if (!in_roots) throw ParseError("hints file must start with [roots]", l.number, t.col);
    out.push_back(hint_line(l));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace berkcli
