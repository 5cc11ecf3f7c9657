#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace berkcli {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int col)
      : std::runtime_error(what), line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

/// A value with the file position of its first character.
struct Located {
  std::string text;
  int line = 0;
  int col = 0;
};

struct Query {
  std::string kind;  // eval | skeleton | verify | ball | tuple | mconv | oracle
  Located value;
  std::vector<Located> parts;  // value split at ';'
};

struct RootHint {
  Located point;
  std::vector<Located> roots;
};

struct Problem {
  enum class Mode { Mixed, Equal };
  Mode mode = Mode::Mixed;
  std::uint32_t p = 0;
  std::vector<Located> num, den;
  std::vector<RootHint> hints;
  std::vector<Query> queries;
  std::vector<Located> skeleton;  // user vertices
  long samples = 200;
  int offskeleton = 30;
  Located window{"3", 0, 0};
  std::uint64_t seed = 1;
};

/// Line-oriented format: [section] headers, key = value lines, '#' comments.
Problem parse_problem(const std::string& text);

/// A [roots] block on its own, as read by --hints.
std::vector<RootHint> parse_hints(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace berkcli
