#include "tatekit/error.hpp"
#include "tatekit/field.hpp"

namespace tatekit {

namespace {

using detail::PadicValue;

std::optional<std::uint32_t> residue_root_mod_prime(std::uint32_t residue, std::uint32_t q, std::uint32_t p) {
  if (residue == 1) return 1u;
  for (std::uint32_t r = 1; r < q; ++r) {
    Integer pw;
    mpz_powm_ui(pw.get_mpz_t(), Integer(r).get_mpz_t(), p, Integer(q).get_mpz_t());
    if (pw == residue) return r;
  }
  return std::nullopt;
}

Scalar padic_root(const Scalar& a, std::uint32_t p) {
  const auto& spec = a.spec();
  const auto& x = a.padic();
  const std::uint32_t q = spec.residue_prime();
  const std::int64_t n = x.exact ? spec.precision_cap() : std::min(x.prec, spec.precision_cap());
  const Integer modulus = ipow(q, static_cast<std::uint64_t>(n));
  const Integer unit = x.exact ? mod_rational(x.unit, modulus) : Integer(x.unit.get_num() % modulus);
  const auto r0 = residue_root_mod_prime(static_cast<std::uint32_t>(Integer(unit % q).get_ui()), q, p);
  if (!r0) throw NoRootInField("unit residue is not a " + std::to_string(p) + "-th power mod " + std::to_string(q));

  // Newton: r <- r - (r^p - u) / (p r^{p-1}) mod q^n; the derivative is a unit since p != q.
  Integer r = *r0;
  for (int iter = 0; iter < 256; ++iter) {
    Integer rp1, rp, inv;
    mpz_powm_ui(rp1.get_mpz_t(), r.get_mpz_t(), p - 1, modulus.get_mpz_t());
    rp = rp1 * r % modulus;
    Integer f = (rp - unit) % modulus;
    if (f < 0) f += modulus;
    if (f == 0) break;
    Integer deriv = rp1 * p % modulus;
    mpz_invert(inv.get_mpz_t(), deriv.get_mpz_t(), modulus.get_mpz_t());
    r = (r - f * inv) % modulus;
    if (r < 0) r += modulus;
  }
  Integer check;
  mpz_powm_ui(check.get_mpz_t(), r.get_mpz_t(), p, modulus.get_mpz_t());
  if (check != unit) throw Error("Hensel lifting failed to converge");

  PadicValue out;
  out.val = x.val / static_cast<std::int64_t>(p);
  out.exact = false;
  out.prec = n;
  out.unit = Rational(r);
  return Scalar(spec, std::move(out));
}

template <class Ring>
std::optional<typename Ring::Elem> coefficient_root(const FieldSpec& spec, const Ring& ring,
                                                     const typename Ring::Elem& c, std::uint32_t p);

template <>
std::optional<std::uint32_t> coefficient_root(const FieldSpec& spec, const detail::GfRing&, const std::uint32_t& c,
                                              std::uint32_t p) {
  return spec.galois().root(c, p);
}

template <>
std::optional<RatFun> coefficient_root(const FieldSpec& spec, const detail::RatFunRing& ring, const RatFun& c,
                                       std::uint32_t p) {
  if (c == ring.one()) return ring.one();
  if (!c.is_constant()) return std::nullopt;
  const auto root = spec.galois().root(c.num().constant_term(), p);
  if (!root) return std::nullopt;
  return ring.from_int(*root);
}

template <class Ring>
detail::LaurentValue<Ring> laurent_root(const FieldSpec& spec, const Ring& ring, const detail::LaurentValue<Ring>& x,
                                        std::uint32_t p) {
  using Elem = typename Ring::Elem;
  const auto cap = static_cast<std::size_t>(spec.precision_cap());
  const std::size_t n = x.exact ? cap : std::min(x.unit.size(), cap);
  const auto r0 = coefficient_root(spec, ring, x.unit[0], p);
  if (!r0) throw NoRootInField("leading coefficient is not a " + std::to_string(p) + "-th power");

  std::vector<Elem> u(x.unit.begin(), x.unit.begin() + static_cast<std::ptrdiff_t>(std::min(n, x.unit.size())));
  u.resize(n, ring.zero());
  const Elem p_elem = ring.from_int(p);

  // Newton with precision doubling on w^p = u.
  std::vector<Elem> w{*r0};
  std::size_t known = 1;
  while (known < n) {
    known = std::min(2 * known, n);
    w.resize(known, ring.zero());
    std::vector<Elem> wp1{ring.one()};
    for (std::uint32_t i = 0; i + 1 < p; ++i) wp1 = detail::series_mul(ring, wp1, w, known);
    std::vector<Elem> wp = detail::series_mul(ring, wp1, w, known);
    std::vector<Elem> resid(known);
    for (std::size_t k = 0; k < known; ++k) resid[k] = ring.sub(wp[k], u[k]);
    std::vector<Elem> deriv(known);
    for (std::size_t k = 0; k < known; ++k) deriv[k] = ring.mul(p_elem, k < wp1.size() ? wp1[k] : ring.zero());
    const auto step = detail::series_mul(ring, resid, detail::series_inverse(ring, deriv, known), known);
    for (std::size_t k = 0; k < known; ++k) w[k] = ring.sub(w[k], step[k]);
  }
  return detail::laurent_normalize(ring, x.val / static_cast<std::int64_t>(p), std::move(w), false, cap);
}

}  // namespace

Scalar scalar_pth_root(const Scalar& a, std::uint32_t p) {
  const FieldSpec& spec = a.spec();
  if (!check_aux_prime(spec, p))
    throw PreconditionFailed("|" + std::to_string(p) + "| != 1 in " + spec.describe());
  if (a.is_zero()) return a;
  if (a.val() % static_cast<std::int64_t>(p) != 0)
    throw NoRootInField("valuation " + std::to_string(a.val()) + " is not divisible by " + std::to_string(p));
  Scalar root = [&] {
    switch (spec.kind()) {
      case FieldKind::Padic: return padic_root(a, p);
      case FieldKind::FqLaurent: return Scalar(spec, laurent_root(spec, spec.gf_ring(), a.gf(), p));
      case FieldKind::RatfunLaurent: return Scalar(spec, laurent_root(spec, spec.ratfun_ring(), a.ratfun(), p));
    }
    throw Error("unreachable");
  }();
  if (root.pow(p) != a) throw Error("root verification failed at the precision cap");
  return root;
}

std::optional<Recentering> leading_recentering(const Scalar& a, std::uint32_t p) {
  const FieldSpec& spec = a.spec();
  if (a.is_zero() || a.val() % static_cast<std::int64_t>(p) != 0) return std::nullopt;
  const std::int64_t v = a.val();
  const Scalar pi = Scalar::uniformizer(spec);
  switch (spec.kind()) {
    case FieldKind::Padic: {
      const auto& x = a.padic();
      const std::uint32_t q = spec.residue_prime();
      const auto residue = x.exact ? mod_rational_small(x.unit, q) : static_cast<std::uint32_t>(Integer(x.unit.get_num() % q).get_ui());
      const auto r0 = residue_root_mod_prime(residue, q, p);
      if (!r0) return std::nullopt;
      const Scalar root = Scalar::from_int(spec, *r0) * pi.pow(v / static_cast<std::int64_t>(p));
      return Recentering{root.pow(p), root};
    }
    case FieldKind::FqLaurent: {
      const auto r0 = spec.galois().root(a.gf().unit[0], p);
      if (!r0) return std::nullopt;
      const Scalar root = Scalar::gf_monomial(spec, *r0, v / static_cast<std::int64_t>(p));
      return Recentering{root.pow(p), root};
    }
    case FieldKind::RatfunLaurent: {
      const auto ring = spec.ratfun_ring();
      const auto r0 = coefficient_root(spec, ring, a.ratfun().unit[0], p);
      if (!r0) return std::nullopt;
      const Scalar root = Scalar::ratfun_monomial(spec, *r0, v / static_cast<std::int64_t>(p));
      return Recentering{root.pow(p), root};
    }
  }
  return std::nullopt;
}

}  // namespace tatekit
