#include "berk/fields.hpp"

namespace berk {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long padic_order(const mpz_class& n, std::uint32_t p) {
  mpz_class rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

}  // namespace

MixedCharField::MixedCharField(std::uint32_t p) : p_(p), residue_(p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

ValQ MixedCharField::val(const Elem& a) const {
  if (sgn(a) == 0) return ValQ::inf();
  return ValQ(padic_order(a.get_num(), p_) - padic_order(a.get_den(), p_));
}

Fp MixedCharField::residue(const Elem& a) const {
  const ValQ v = val(a);
  if (v < ValQ(0)) throw NegativeValuation("residue of " + a.get_str());
  if (v > ValQ(0)) return Fp(0, p_);
  mpz_class n = a.get_num() % p_, d = a.get_den() % p_;
  return Fp(n.get_si(), p_) / Fp(d.get_si(), p_);
}

std::optional<MixedCharField::Elem> MixedCharField::element_of_valuation(const ValQ& v) const {
  if (!v.is_integer()) return std::nullopt;
  const long k = v.num().get_si();
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p_, static_cast<unsigned long>(k < 0 ? -k : k));
  if (k >= 0) return mpq_class(pk);
  return mpq_class(mpz_class(1), pk);
}

EqualCharField::EqualCharField(std::uint32_t p) : p_(p), residue_(p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

ValQ EqualCharField::val(const Elem& a) const {
  if (a.is_zero()) return ValQ::inf();
  return ValQ(a.ord0());
}

Fp EqualCharField::residue(const Elem& a) const {
  if (a.is_zero()) return Fp(0, p_);
  if (a.ord0() < 0) throw NegativeValuation("residue of " + a.str());
  return a.at_zero();
}

std::optional<EqualCharField::Elem> EqualCharField::element_of_valuation(const ValQ& v) const {
  if (!v.is_integer()) return std::nullopt;
  const long k = v.num().get_si();
  FpPoly m = FpPoly::monomial(Fp(1, p_), static_cast<std::size_t>(k < 0 ? -k : k));
  if (k >= 0) return FpRat::from_poly(m, 'u');
  return FpRat(FpPoly::constant(Fp(1, p_)), m, 'u');
}

EqualCharField::Elem EqualCharField::distinct_element(std::size_t k) const {
  std::vector<Fp> c;
  while (k > 0) {
    c.emplace_back(static_cast<long>(k % p_), p_);
    k /= p_;
  }
  return FpRat::from_poly(FpPoly(Fp(0, p_), std::move(c)), 'u');
}

}  // namespace berk
