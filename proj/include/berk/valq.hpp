#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace berk {

/// Additive valuation value: an exact rational or the absorbing maximum INF.
class ValQ {
 public:
  ValQ() = default;
  ValQ(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  ValQ(long num, long den) : value_(num, den) { value_.canonicalize(); }
  explicit ValQ(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }

  static ValQ inf() {
    ValQ v;
    v.inf_ = true;
    return v;
  }

  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }
  /// Precondition: finite.
  const mpq_class& q() const { return value_; }
  mpz_class num() const { return value_.get_num(); }
  mpz_class den() const { return value_.get_den(); }
  bool is_integer() const { return !inf_ && value_.get_den() == 1; }

  friend ValQ operator+(const ValQ& a, const ValQ& b) {
    if (a.inf_ || b.inf_) return inf();
    return ValQ(mpq_class(a.value_ + b.value_));
  }
  /// Precondition: b finite.
  friend ValQ operator-(const ValQ& a, const ValQ& b);
  ValQ operator-() const;
  friend ValQ operator*(const ValQ& a, long k);
  friend ValQ operator*(long k, const ValQ& a) { return a * k; }
  friend ValQ operator/(const ValQ& a, long k);

  friend bool operator==(const ValQ& a, const ValQ& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ValQ& a, const ValQ& b) {
    if (a.inf_ && b.inf_) return std::strong_ordering::equal;
    if (a.inf_) return std::strong_ordering::greater;
    if (b.inf_) return std::strong_ordering::less;
    int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "INF", "3", "-1/2".
  std::string str() const;
  /// Parses the output of str().
  static ValQ parse(const std::string& s);

 private:
  mpq_class value_{0};
  bool inf_ = false;
};

inline const ValQ& min(const ValQ& a, const ValQ& b) { return b < a ? b : a; }
inline const ValQ& max(const ValQ& a, const ValQ& b) { return a < b ? b : a; }

/// Multiplicative radius p^(-v) rendered exactly: "1", "0", "3^(-2)", "2^(-1/2)".
std::string radius_string(unsigned p, const ValQ& v);

}  // namespace berk
