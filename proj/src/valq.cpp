#include "berk/valq.hpp"

#include <stdexcept>

#include "berk/errors.hpp"

namespace berk {

ValQ operator-(const ValQ& a, const ValQ& b) {
  if (b.inf_) throw DomainError("subtracting INF");
  if (a.inf_) return ValQ::inf();
  return ValQ(mpq_class(a.value_ - b.value_));
}

ValQ ValQ::operator-() const {
  if (inf_) throw DomainError("negating INF");
  return ValQ(mpq_class(-value_));
}

ValQ operator*(const ValQ& a, long k) {
  if (a.inf_) {
    if (k == 0) throw DomainError("0 * INF");
    if (k < 0) throw DomainError("negative multiple of INF");
    return a;
  }
  return ValQ(mpq_class(a.value_ * k));
}

ValQ operator/(const ValQ& a, long k) {
  if (k == 0) throw DomainError("division of a valuation by zero");
  if (a.inf_) {
    if (k < 0) throw DomainError("negative multiple of INF");
    return a;
  }
  return ValQ(mpq_class(a.value_ / k));
}

std::string ValQ::str() const {
  if (inf_) return "INF";
  return value_.get_str();
}

ValQ ValQ::parse(const std::string& s) {
  if (s == "INF" || s == "inf") return inf();
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw DomainError("bad valuation literal '" + s + "'");
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
  q.canonicalize();
  return ValQ(q);
}

std::string radius_string(unsigned p, const ValQ& v) {
  if (v.is_inf()) return "0";
  if (v.q() == 0) return "1";
  return std::to_string(p) + "^(" + (-v).str() + ")";
}

}  // namespace berk
