#include "berk/fp.hpp"

#include "berk/errors.hpp"

namespace berk {

Fp pow(Fp a, std::uint64_t k) {
  Fp r(1, a.p);
  while (k) {
    if (k & 1U) r = r * a;
    a = a * a;
    k >>= 1U;
  }
  return r;
}

Fp Fp::inverse() const {
  if (v == 0) throw DomainError("inverse of 0 in F_" + std::to_string(p));
  return pow(*this, p - 2);
}

FpRat::FpRat(std::uint32_t p, long c, char var)
    : p_(p), var_(var), num_(Fp(0, p)), den_(Fp(0, p), {Fp(1, p)}) {
  num_ = FpPoly(Fp(0, p), {Fp(c, p)});
}

FpRat::FpRat(FpPoly num, FpPoly den, char var)
    : p_(num.zero().p), var_(var), num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

FpRat FpRat::from_poly(FpPoly num, char var) {
  const std::uint32_t p = num.zero().p;
  return FpRat(std::move(num), FpPoly(Fp(0, p), {Fp(1, p)}), var);
}

FpRat FpRat::variable(std::uint32_t p, char var) {
  return from_poly(FpPoly::monomial(Fp(1, p), 1), var);
}

void FpRat::canonicalize() {
  if (den_.is_zero()) throw DomainError("division by zero in F_p(" + std::string(1, var_) + ")");
  if (num_.is_zero()) {
    den_ = FpPoly(Fp(0, p_), {Fp(1, p_)});
    return;
  }
  FpPoly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  Fp inv = den_.lc().inverse();
  num_ = num_ * inv;
  den_ = den_ * inv;
}

FpRat operator+(const FpRat& a, const FpRat& b) {
  if (a.den_ == b.den_) return FpRat(a.num_ + b.num_, a.den_, a.var_);
  return FpRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, a.var_);
}
FpRat operator-(const FpRat& a, const FpRat& b) {
  if (a.den_ == b.den_) return FpRat(a.num_ - b.num_, a.den_, a.var_);
  return FpRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_, a.var_);
}
FpRat operator*(const FpRat& a, const FpRat& b) {
  return FpRat(a.num_ * b.num_, a.den_ * b.den_, a.var_);
}
FpRat operator/(const FpRat& a, const FpRat& b) {
  if (b.is_zero()) throw DomainError("division by zero in F_p(" + std::string(1, a.var_) + ")");
  return FpRat(a.num_ * b.den_, a.den_ * b.num_, a.var_);
}
FpRat FpRat::operator-() const { return FpRat(-num_, den_, var_); }

long FpRat::ord0() const {
  if (num_.is_zero()) throw DomainError("order of 0");
  return static_cast<long>(num_.low_order()) - static_cast<long>(den_.low_order());
}

Fp FpRat::at_zero() const {
  if (num_.is_zero()) return Fp(0, p_);
  const std::size_t dn = den_.low_order();
  const std::size_t nn = num_.low_order();
  if (nn < dn) throw NegativeValuation("pole at 0");
  if (nn > dn) return Fp(0, p_);
  return num_[nn] / den_[dn];
}

bool FpRat::is_pth_power() const { return num_.deflatable(p_) && den_.deflatable(p_); }

FpPoly fp_poly_pth_root(const FpPoly& f) { return f.deflate(f.zero().p); }

FpRat FpRat::pth_root() const {
  return FpRat(fp_poly_pth_root(num_), fp_poly_pth_root(den_), var_);
}

std::string FpRat::str() const {
  const std::string v(1, var_);
  if (den_.degree() == 0) return num_.str(v);
  std::string n = num_.str(v), d = den_.str(v);
  if (num_.degree() > 0 && num_.coeffs().size() > 1) n = "(" + n + ")";
  return n + "/(" + d + ")";
}

}  // namespace berk
