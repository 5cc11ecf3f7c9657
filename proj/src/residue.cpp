#include "berk/residue.hpp"

#include <functional>

namespace berk {

namespace {

FpPoly x_poly(std::uint32_t p) { return FpPoly::monomial(Fp(1, p), 1); }

FpPoly powmod(FpPoly base, mpz_class e, const FpPoly& mod) {
  FpPoly r = FpPoly::constant(Fp(1, mod.zero().p));
  base = base % mod;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % mod;
    base = (base * base) % mod;
    e >>= 1;
  }
  return r;
}

// Monic polynomial of the given degree indexed by k in [0, p^deg).
FpPoly enumerate_monic(std::uint32_t p, int deg, std::uint64_t k) {
  std::vector<Fp> c;
  for (int i = 0; i < deg; ++i) {
    c.emplace_back(static_cast<long>(k % p), p);
    k /= p;
  }
  c.emplace_back(1, p);
  return FpPoly(Fp(0, p), std::move(c));
}

constexpr std::uint64_t kSearchCap = 200000;

}  // namespace

std::vector<std::pair<Fp, int>> PrimeField::roots(const FpPoly& f) const {
  std::vector<std::pair<Fp, int>> out;
  if (f.is_zero()) throw ZeroPolynomial("roots of 0");
  for (std::uint32_t v = 0; v < p_; ++v) {
    Fp r(v, p_);
    if (f.eval(r) == zero()) out.emplace_back(r, root_multiplicity(f, r));
  }
  return out;
}

std::optional<bool> PrimeField::is_irreducible(const FpPoly& f) const {
  if (f.degree() <= 0) return false;
  if (f.degree() == 1) return true;
  FpPoly fm = f.monic();
  FpPoly d = fm.derivative();
  if (d.is_zero() || gcd(fm, d).degree() > 0) return false;
  const FpPoly x = x_poly(p_);
  FpPoly xp = x;
  for (int i = 1; 2 * i <= fm.degree(); ++i) {
    xp = powmod(xp, mpz_class(p_), fm);
    if (gcd(fm, xp - x).degree() > 0) return false;
  }
  return true;
}

std::optional<std::vector<std::pair<FpPoly, int>>> factor_fp_poly(const FpPoly& f0) {
  if (f0.is_zero()) throw ZeroPolynomial("factor 0");
  const std::uint32_t p = f0.zero().p;
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly f = f0.monic();
  for (int deg = 1; 2 * deg <= f.degree(); ++deg) {
    mpz_class count;
    mpz_ui_pow_ui(count.get_mpz_t(), p, static_cast<unsigned long>(deg));
    if (count > kSearchCap) return std::nullopt;
    for (std::uint64_t k = 0; k < count.get_ui() && 2 * deg <= f.degree(); ++k) {
      FpPoly g = enumerate_monic(p, deg, k);
      int m = 0;
      for (;;) {
        auto [q, r] = f.divmod(g);
        if (!r.is_zero()) break;
        f = std::move(q);
        ++m;
      }
      if (m > 0) out.emplace_back(std::move(g), m);
    }
  }
  if (f.degree() > 0) out.emplace_back(f, 1);
  return out;
}

namespace {

// All monic divisors of a factored polynomial.
std::optional<std::vector<FpPoly>> monic_divisors(const std::vector<std::pair<FpPoly, int>>& fac,
                                                  std::uint32_t p) {
  std::vector<FpPoly> divs{FpPoly::constant(Fp(1, p))};
  for (const auto& [g, m] : fac) {
    std::vector<FpPoly> next;
    for (const auto& d : divs) {
      FpPoly acc = d;
      for (int e = 0; e <= m; ++e) {
        next.push_back(acc);
        acc = acc * g;
      }
    }
    divs = std::move(next);
    if (divs.size() > kSearchCap) return std::nullopt;
  }
  return divs;
}

}  // namespace

std::optional<std::vector<std::pair<FpRat, int>>> FpRatField::roots(const Poly<FpRat>& f) const {
  if (f.is_zero()) throw ZeroPolynomial("roots of 0");
  std::vector<std::pair<FpRat, int>> out;
  Poly<FpRat> g = f;
  if (is_zero(g[0])) {
    const int m = static_cast<int>(g.low_order());
    out.emplace_back(zero(), m);
    std::vector<FpRat> c(g.coeffs().begin() + m, g.coeffs().end());
    g = Poly<FpRat>(zero(), std::move(c));
  }
  if (g.degree() <= 0) return out;

  // Clear denominators: coefficients in F_p[T].
  FpPoly lcm_den = FpPoly::constant(Fp(1, p_));
  for (const auto& c : g.coeffs()) lcm_den = lcm_den * c.den() / gcd(lcm_den, c.den());
  std::vector<FpPoly> ic;
  for (const auto& c : g.coeffs()) ic.push_back(c.num() * (lcm_den / c.den()));

  auto fa0 = factor_fp_poly(ic.front());
  auto fan = factor_fp_poly(ic.back());
  if (!fa0 || !fan) return std::nullopt;
  auto num_divs = monic_divisors(*fa0, p_);
  auto den_divs = monic_divisors(*fan, p_);
  if (!num_divs || !den_divs) return std::nullopt;
  if (num_divs->size() * den_divs->size() * (p_ - 1) > kSearchCap) return std::nullopt;

  std::vector<FpRat> seen;
  for (const auto& a : *num_divs) {
    for (const auto& b : *den_divs) {
      if (gcd(a, b).degree() > 0) continue;
      for (std::uint32_t u = 1; u < p_; ++u) {
        FpRat r(a * Fp(u, p_), b, 'T');
        if (!is_zero(g.eval(r))) continue;
        bool dup = false;
        for (const auto& s : seen) dup = dup || s == r;
        if (dup) continue;
        seen.push_back(r);
        out.emplace_back(r, root_multiplicity(g, r));
      }
    }
  }
  return out;
}

std::optional<bool> FpRatField::is_irreducible(const Poly<FpRat>& f) const {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  // X^(p^k) - c: irreducible iff c is not a p-th power.
  bool binomial = true;
  for (int i = 1; i < n; ++i) binomial = binomial && is_zero(f[static_cast<std::size_t>(i)]);
  mpz_class pk = 1;
  while (pk < n) pk *= p_;
  if (binomial && pk == n) {
    FpRat c = -f[0] / f.lc();
    return !c.is_pth_power();
  }
  if (n <= 3) {
    auto rs = roots(f);
    if (!rs) return std::nullopt;
    return rs->empty();
  }
  return std::nullopt;
}

}  // namespace berk
