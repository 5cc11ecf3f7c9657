#include "berk/charts.hpp"

#include <cctype>

namespace berk {

std::string PolyRadiusTuple::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ",";
    out += "(";
    for (std::size_t j = 0; j < entries[i].size(); ++j) {
      if (j) out += ",";
      out += entries[i][j].str();
    }
    out += ")";
  }
  return out + ")";
}

PolyRadiusTuple PolyRadiusTuple::parse(const std::string& s) {
  std::string compact;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  std::vector<std::vector<ValQ>> rows;
  std::size_t i = 0;
  auto expect = [&](char c) {
    if (i >= compact.size() || compact[i] != c) throw MalformedTuple("expected '" + std::string(1, c) + "' in " + s);
    ++i;
  };
  expect('(');
  for (;;) {
    expect('(');
    std::vector<ValQ> row;
    for (;;) {
      const std::size_t j = compact.find_first_of(",)", i);
      if (j == std::string::npos) throw MalformedTuple(s);
      try {
        row.push_back(ValQ::parse(compact.substr(i, j - i)));
      } catch (const DomainError&) {
        throw MalformedTuple("bad entry in " + s);
      }
      i = j + 1;
      if (compact[j] == ')') break;
    }
    rows.push_back(std::move(row));
    if (i < compact.size() && compact[i] == ',') {
      ++i;
      continue;
    }
    expect(')');
    break;
  }
  if (i != compact.size()) throw MalformedTuple("trailing text in " + s);
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw MalformedTuple("tuple is not square: " + s);
  PolyRadiusTuple t;
  t.entries = std::move(rows);
  return t;
}

std::array<bool, 2> maximal_charts(const ValQ& val_a) {
  if (val_a > ValQ(0)) return {false, true};
  if (val_a == ValQ(0)) return {true, true};
  return {true, false};
}

PolyRadiusTuple tuple_of_ball(const ValQ& val_a, const ValQ& v) {
  if (!v.is_finite() || v < ValQ(0)) throw RadiusOutOfRange("radius valuation " + v.str() + " outside (0, 1]");
  if (!val_a.is_finite() || val_a > ValQ(0)) return {ValQ(0), ValQ(0), v, ValQ(0)};
  if (val_a == ValQ(0)) return {ValQ(0), v, v, ValQ(0)};
  return {ValQ(0), v - val_a * 2, ValQ(0), ValQ(0)};
}

ChartRadius radius_of_tuple(const ValQ& val_a, const PolyRadiusTuple& t) {
  if (t.size() != 2 || t.entries[0].size() != 2) throw MalformedTuple("expected a 2x2 tuple: " + t.str());
  const ValQ zero(0);
  auto finite_nonneg = [](const ValQ& x) { return x.is_finite() && x >= ValQ(0); };
  if (!val_a.is_finite() || val_a > zero) {
    if (t.at(0, 0) == zero && t.at(0, 1) == zero && t.at(1, 1) == zero && finite_nonneg(t.at(1, 0)))
      return {t.at(1, 0)};
  } else if (val_a == zero) {
    if (t.at(0, 0) == zero && t.at(1, 1) == zero && t.at(0, 1) == t.at(1, 0) && finite_nonneg(t.at(0, 1)))
      return {t.at(0, 1)};
  } else {
    if (t.at(0, 0) == zero && t.at(1, 0) == zero && t.at(1, 1) == zero && finite_nonneg(t.at(0, 1))) {
      const ValQ w = t.at(0, 1);
      if (w >= -val_a) return {w + val_a * 2};
      return {std::nullopt};
    }
  }
  throw MalformedTuple(t.str() + " does not match the chart case of val(a) = " + val_a.str());
}

ValQ g_eval(const PolyRadiusTuple& t) {
  ValQ acc(0);
  for (const auto& row : t.entries)
    for (const auto& x : row) acc = acc + x;
  return acc;
}

ValQ M_from_chart(const ValQ& mpp, const ValQ& t1, const ValQ& t2) {
  if (mpp < ValQ(0)) throw RadiusOutOfRange("chart value " + mpp.str() + " exceeds 1");
  if (!t1.is_finite() && !t2.is_finite()) throw DomainError("both coordinates vanish");
  if (t1 > t2) return mpp;
  if (t1 == t2) return mpp / 2;
  if (mpp.is_inf()) return mpp;
  return max(ValQ(0), mpp + (t1 - t2) * 2);
}

}  // namespace berk
