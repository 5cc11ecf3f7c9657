#pragma once

#include <concepts>
#include <memory>
#include <optional>
#include <string>

#include "berk/fp.hpp"
#include "berk/poly.hpp"
#include "berk/residue.hpp"
#include "berk/valq.hpp"

namespace berk {

/// A field with a rank-one valuation whose value group is (1/D)Z and whose
/// residue field is F_p or F_p(T). Arithmetic lives on the element type;
/// the field object supplies everything valuation-theoretic.
template <class F>
concept ValuedField = requires(const F& f, const typename F::Elem& a, const ValQ& v,
                               const typename F::ResidueField::Elem& r) {
  typename F::Elem;
  typename F::ResidueField;
  { f.zero() } -> std::same_as<typename F::Elem>;
  { f.one() } -> std::same_as<typename F::Elem>;
  { f.from_int(1L) } -> std::same_as<typename F::Elem>;
  { f.val(a) } -> std::same_as<ValQ>;
  { f.residue(a) } -> std::same_as<typename F::ResidueField::Elem>;
  { f.lift(r) } -> std::same_as<typename F::Elem>;
  { f.element_of_valuation(v) } -> std::same_as<std::optional<typename F::Elem>>;
  { f.value_group_denominator() } -> std::same_as<long>;
  { f.prime() } -> std::same_as<std::uint32_t>;
  { f.characteristic() } -> std::same_as<std::uint32_t>;
  { f.residue_field() } -> std::same_as<const typename F::ResidueField&>;
  { f.distinct_element(std::size_t{0}) } -> std::same_as<typename F::Elem>;
  { f.str(a) } -> std::same_as<std::string>;
};

/// Q with the p-adic valuation (mixed characteristic (0, p)).
class MixedCharField {
 public:
  using Elem = mpq_class;
  using ResidueField = PrimeField;
  static constexpr bool is_gauss = false;

  explicit MixedCharField(std::uint32_t p);

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long k) const { return k; }
  ValQ val(const Elem& a) const;
  Fp residue(const Elem& a) const;
  Elem lift(const Fp& r) const { return static_cast<long>(r.v); }
  std::optional<Elem> element_of_valuation(const ValQ& v) const;
  long value_group_denominator() const { return 1; }
  std::uint32_t prime() const { return p_; }
  std::uint32_t characteristic() const { return 0; }
  const PrimeField& residue_field() const { return residue_; }
  Elem distinct_element(std::size_t k) const { return static_cast<long>(k); }
  std::string str(const Elem& a) const { return a.get_str(); }
  std::string name() const { return "mixed(" + std::to_string(p_) + ")"; }

 private:
  std::uint32_t p_;
  PrimeField residue_;
};

/// F_p(u) with the u-adic valuation (equal characteristic p).
class EqualCharField {
 public:
  using Elem = FpRat;
  using ResidueField = PrimeField;
  static constexpr bool is_gauss = false;

  explicit EqualCharField(std::uint32_t p);

  Elem zero() const { return FpRat(p_, 0, 'u'); }
  Elem one() const { return FpRat(p_, 1, 'u'); }
  Elem from_int(long k) const { return FpRat(p_, k, 'u'); }
  Elem uniformizer() const { return FpRat::variable(p_, 'u'); }
  ValQ val(const Elem& a) const;
  Fp residue(const Elem& a) const;
  Elem lift(const Fp& r) const { return FpRat(p_, static_cast<long>(r.v), 'u'); }
  std::optional<Elem> element_of_valuation(const ValQ& v) const;
  long value_group_denominator() const { return 1; }
  std::uint32_t prime() const { return p_; }
  std::uint32_t characteristic() const { return p_; }
  const PrimeField& residue_field() const { return residue_; }
  Elem distinct_element(std::size_t k) const;
  std::string str(const Elem& a) const { return a.str(); }
  std::string name() const { return "equal(" + std::to_string(p_) + ")"; }

 private:
  std::uint32_t p_;
  PrimeField residue_;
};

/// Element of K(t): reduced fraction of polynomials in t over the base field,
/// denominator monic.
template <class E>
class GaussElem {
 public:
  GaussElem(Poly<E> num, Poly<E> den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }
  static GaussElem constant(const E& a) {
    return GaussElem(Poly<E>::constant(a), Poly<E>::constant(one_like(a)), true);
  }
  static GaussElem from_poly(Poly<E> n) {
    E one = one_like(n.zero());
    return GaussElem(std::move(n), Poly<E>::constant(one), true);
  }

  const Poly<E>& num() const { return num_; }
  const Poly<E>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  friend GaussElem operator+(const GaussElem& a, const GaussElem& b) {
    if (a.den_ == b.den_) return GaussElem(a.num_ + b.num_, a.den_);
    return GaussElem(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend GaussElem operator-(const GaussElem& a, const GaussElem& b) {
    if (a.den_ == b.den_) return GaussElem(a.num_ - b.num_, a.den_);
    return GaussElem(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend GaussElem operator*(const GaussElem& a, const GaussElem& b) {
    if (a.is_constant() && b.is_constant())
      return GaussElem(Poly<E>::constant(a.num_[0] * b.num_[0]), a.den_, true);
    return GaussElem(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend GaussElem operator/(const GaussElem& a, const GaussElem& b) {
    if (b.is_zero()) throw DomainError("division by zero in K(t)");
    return GaussElem(a.num_ * b.den_, a.den_ * b.num_);
  }
  GaussElem operator-() const { return GaussElem(-num_, den_, true); }
  friend bool operator==(const GaussElem& a, const GaussElem& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str() const {
    if (den_.degree() == 0) return num_.str("t");
    return "(" + num_.str("t") + ")/(" + den_.str("t") + ")";
  }

 private:
  GaussElem(Poly<E> num, Poly<E> den, bool /*canonical*/) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.is_zero()) den_ = Poly<E>::constant(one_like(den_.zero()));
  }
  void canonicalize() {
    if (den_.is_zero()) throw DomainError("division by zero in K(t)");
    if (num_.is_zero()) {
      den_ = Poly<E>::constant(one_like(den_.zero()));
      return;
    }
    if (den_.degree() > 0) {
      Poly<E> g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    const E inv = one_like(den_.zero()) / den_.lc();
    if (!(inv == one_like(inv))) {
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

  Poly<E> num_;
  Poly<E> den_;
};

template <class E>
struct ElemTraits<GaussElem<E>> {
  static GaussElem<E> zero_like(const GaussElem<E>& a) {
    return GaussElem<E>::constant(berk::zero_like(a.den().lc()));
  }
  static GaussElem<E> one_like(const GaussElem<E>& a) {
    return GaussElem<E>::constant(berk::one_like(a.den().lc()));
  }
  static GaussElem<E> from_int_like(const GaussElem<E>& a, long k) {
    return GaussElem<E>::constant(berk::from_int_like(a.den().lc(), k));
  }
  static bool is_zero(const GaussElem<E>& a) { return a.is_zero(); }
  static std::string str(const GaussElem<E>& a) { return a.str(); }
  static bool is_compound(const GaussElem<E>& a) {
    return !a.is_constant() || ElemTraits<E>::is_compound(a.num()[0]);
  }
};

/// One-level Gauss extension K(t) with val(t) = rho: the valuation of a
/// polynomial is min_j val(c_j) + j*rho. The type-II point zeta(a, rho) of
/// the base line becomes the type-I point a + t here.
template <class Base>
  requires(!Base::is_gauss)
class GaussField {
 public:
  using BaseElem = typename Base::Elem;
  using Elem = GaussElem<BaseElem>;
  using ResidueField = FpRatField;
  using BaseField = Base;
  static constexpr bool is_gauss = true;

  GaussField(Base base, ValQ rho) : base_(std::move(base)), rho_(std::move(rho)), residue_(base_.prime()) {
    if (!rho_.is_finite()) throw DomainError("Gauss parameter valuation must be finite");
    a_ = rho_.num().get_si();
    b_ = rho_.den().get_si();
  }

  const Base& base() const { return base_; }
  const ValQ& rho() const { return rho_; }

  Elem embed(const BaseElem& a) const { return Elem::constant(a); }
  Elem t() const { return Elem::from_poly(Poly<BaseElem>::monomial(base_.one(), 1)); }
  Elem zero() const { return embed(base_.zero()); }
  Elem one() const { return embed(base_.one()); }
  Elem from_int(long k) const { return embed(base_.from_int(k)); }

  /// Gauss valuation of a polynomial in t.
  ValQ val_poly(const Poly<BaseElem>& f) const {
    ValQ best = ValQ::inf();
    for (std::size_t j = 0; j < f.coeffs().size(); ++j) {
      const auto& c = f.coeffs()[j];
      if (berk::is_zero(c)) continue;
      best = min(best, base_.val(c) + rho_ * static_cast<long>(j));
    }
    return best;
  }
  ValQ val(const Elem& a) const {
    if (a.is_zero()) return ValQ::inf();
    return val_poly(a.num()) - val_poly(a.den());
  }

  FpRat residue(const Elem& a) const {
    if (a.is_zero()) return residue_.zero();
    const ValQ v = val(a);
    if (v < ValQ(0)) throw NegativeValuation("residue of element with valuation " + v.str());
    if (v > ValQ(0)) return residue_.zero();
    auto [n_init, n_j] = initial_form(a.num());
    auto [d_init, d_j] = initial_form(a.den());
    // a = pi^(iN - iD) t^(jN - jD) * (initial forms); the monomial has
    // valuation zero and equals (t^b / pi^a)^m.
    long shift = static_cast<long>(n_j) - static_cast<long>(d_j);
    FpRat r = n_init / d_init;
    const long m = shift / b_;
    FpRat tau = FpRat::variable(prime(), 'T');
    if (m >= 0) {
      for (long i = 0; i < m; ++i) r = r * tau;
    } else {
      for (long i = 0; i < -m; ++i) r = r / tau;
    }
    return r;
  }

  Elem lift(const FpRat& r) const {
    // T -> t^b / pi^a
    Elem s = Elem::from_poly(Poly<BaseElem>::monomial(base_.one(), static_cast<std::size_t>(b_))) *
             embed(*base_.element_of_valuation(ValQ(-a_)));
    auto lift_poly = [&](const FpPoly& f) {
      Elem acc = zero();
      for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = acc * s + embed(base_.lift(*it));
      return acc;
    };
    return lift_poly(r.num()) / lift_poly(r.den());
  }

  std::optional<Elem> element_of_valuation(const ValQ& v) const {
    if (!v.is_finite()) return std::nullopt;
    const mpq_class kb = v.q() * b_;
    if (kb.get_den() != 1) return std::nullopt;
    const long k = kb.get_num().get_si();
    long j = 0;
    if (b_ > 1) {
      // i*b + j*a = k with 0 <= j < b
      long ainv = 1;
      const long am = ((a_ % b_) + b_) % b_;
      while ((am * ainv) % b_ != 1) ++ainv;
      j = (((k % b_) + b_) % b_) * ainv % b_;
    }
    const long i = (k - j * a_) / b_;
    auto pi = base_.element_of_valuation(ValQ(i));
    return Elem::from_poly(Poly<BaseElem>::monomial(*pi, static_cast<std::size_t>(j)));
  }

  long value_group_denominator() const { return b_; }
  std::uint32_t prime() const { return base_.prime(); }
  std::uint32_t characteristic() const { return base_.characteristic(); }
  const FpRatField& residue_field() const { return residue_; }
  Elem distinct_element(std::size_t k) const { return embed(base_.distinct_element(k)); }
  std::string str(const Elem& a) const { return a.str(); }
  std::string name() const { return "gauss(" + base_.name() + ", " + rho_.str() + ")"; }

 private:
  // Initial form of a polynomial in t as a Laurent polynomial in T, together
  // with the first exponent attaining the minimum.
  std::pair<FpRat, std::size_t> initial_form(const Poly<BaseElem>& f) const {
    const ValQ w = val_poly(f);
    std::size_t j0 = 0;
    while (berk::is_zero(f[j0]) || base_.val(f[j0]) + rho_ * static_cast<long>(j0) != w) ++j0;
    const ValQ i0 = base_.val(f[j0]);
    std::vector<std::pair<long, Fp>> terms;
    for (std::size_t j = j0; j < f.coeffs().size(); ++j) {
      const auto& c = f[j];
      if (berk::is_zero(c) || base_.val(c) + rho_ * static_cast<long>(j) != w) continue;
      const long m = static_cast<long>(j - j0) / b_;
      // c * pi^(a*m - i0) has valuation zero
      auto scale = base_.element_of_valuation(ValQ(a_ * m) - i0);
      terms.emplace_back(m, base_.residue(c * *scale));
    }
    std::vector<Fp> coeffs;
    for (const auto& [m, r] : terms) {
      if (static_cast<std::size_t>(m) >= coeffs.size()) coeffs.resize(static_cast<std::size_t>(m) + 1, Fp(0, prime()));
      coeffs[static_cast<std::size_t>(m)] = r;
    }
    return {FpRat::from_poly(FpPoly(Fp(0, prime()), std::move(coeffs)), 'T'), j0};
  }

  Base base_;
  ValQ rho_;
  long a_ = 0;
  long b_ = 1;
  FpRatField residue_;
};

static_assert(ValuedField<MixedCharField>);
static_assert(ValuedField<EqualCharField>);
static_assert(ValuedField<GaussField<MixedCharField>>);
static_assert(ValuedField<GaussField<EqualCharField>>);

}  // namespace berk
