#include "tatekit/padic_value.hpp"

#include "tatekit/error.hpp"

#include <algorithm>

namespace tatekit::detail {

namespace {

Integer qpow(const PadicContext& ctx, std::int64_t e) { return ipow(ctx.q, static_cast<std::uint64_t>(e)); }

// Unit of x reduced modulo q^n.
Integer unit_mod(const PadicContext& ctx, const PadicValue& x, std::int64_t n) {
  const Integer m = qpow(ctx, n);
  if (x.exact) return mod_rational(x.unit, m);
  Integer u = x.unit.get_num() % m;
  return u;
}

PadicValue make_inexact(const PadicContext& ctx, std::int64_t val, Integer unit, std::int64_t prec) {
  prec = std::min(prec, ctx.cap);
  PadicValue out;
  out.val = val;
  out.exact = false;
  out.prec = prec;
  Integer m = qpow(ctx, prec);
  unit %= m;
  if (unit < 0) unit += m;
  out.unit = Rational(unit);
  return out;
}

}  // namespace

PadicValue padic_from_rational(const PadicContext& ctx, const Rational& x) {
  PadicValue out;
  if (x == 0) return out;
  Integer num = x.get_num();
  Integer den = x.get_den();
  const std::int64_t vn = strip_prime(num, ctx.q);
  const std::int64_t vd = strip_prime(den, ctx.q);
  out.val = vn - vd;
  out.unit = Rational(num, den);
  out.unit.canonicalize();
  return out;
}

PadicValue padic_from_residue(const PadicContext& ctx, const Integer& residue, std::int64_t abs_prec) {
  Integer m = qpow(ctx, abs_prec);
  Integer r = residue % m;
  if (r < 0) r += m;
  if (r == 0) throw PrecisionExhausted("residue is zero at the requested precision");
  const std::int64_t v = strip_prime(r, ctx.q);
  return make_inexact(ctx, v, r, abs_prec - v);
}

Rational padic_to_rational(const PadicContext& ctx, const PadicValue& x) {
  if (x.is_zero()) return 0;
  return x.unit * rpow(Rational(ctx.q), x.val);
}

std::optional<Rational> padic_rational_reconstruction(const PadicContext& ctx, const PadicValue& x) {
  if (x.exact || x.is_zero()) return padic_to_rational(ctx, x);
  const Integer m = qpow(ctx, x.prec);
  const Integer u = unit_mod(ctx, x, x.prec);
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = u, s0 = 0, s1 = 1;
  while (r1 > bound) {
    const Integer quo = r0 / r1;
    r0 -= quo * r1;
    std::swap(r0, r1);
    s0 -= quo * s1;
    std::swap(s0, s1);
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), s1.get_mpz_t(), m.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational out(r1, s1);
  out.canonicalize();
  return out * rpow(Rational(ctx.q), x.val);
}

PadicValue padic_add(const PadicContext& ctx, const PadicValue& x, const PadicValue& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.exact && y.exact) return padic_from_rational(ctx, padic_to_rational(ctx, x) + padic_to_rational(ctx, y));
  const std::int64_t hi = std::min(x.abs_prec(), y.abs_prec());
  const std::int64_t lo = std::min(x.val, y.val);
  const std::int64_t width = hi - lo;
  const Integer m = qpow(ctx, width);
  Integer sum = 0;
  for (const PadicValue* part : {&x, &y}) {
    if (part->val >= hi) continue;
    sum += unit_mod(ctx, *part, hi - part->val) * qpow(ctx, part->val - lo);
  }
  sum %= m;
  if (sum == 0) throw PrecisionExhausted("sum indistinguishable from zero at the precision cap");
  const std::int64_t shift = strip_prime(sum, ctx.q);
  return make_inexact(ctx, lo + shift, sum, width - shift);
}

PadicValue padic_neg(const PadicValue& x) {
  PadicValue out = x;
  out.unit = -x.unit;
  return out;
}

PadicValue padic_mul(const PadicContext& ctx, const PadicValue& x, const PadicValue& y) {
  if (x.is_zero() || y.is_zero()) return {};
  if (x.exact && y.exact) {
    PadicValue out;
    out.val = x.val + y.val;
    out.unit = x.unit * y.unit;
    return out;
  }
  std::int64_t prec = std::numeric_limits<std::int64_t>::max();
  if (!x.exact) prec = std::min(prec, x.prec);
  if (!y.exact) prec = std::min(prec, y.prec);
  return make_inexact(ctx, x.val + y.val, unit_mod(ctx, x, prec) * unit_mod(ctx, y, prec), prec);
}

PadicValue padic_inv(const PadicContext& ctx, const PadicValue& x) {
  if (x.is_zero()) throw DivisionByZero();
  if (x.exact) {
    PadicValue out;
    out.val = -x.val;
    out.unit = 1 / x.unit;
    return out;
  }
  const Integer m = qpow(ctx, x.prec);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), x.unit.get_num_mpz_t(), m.get_mpz_t());
  return make_inexact(ctx, -x.val, inv, x.prec);
}

bool padic_agree(const PadicContext& ctx, const PadicValue& x, const PadicValue& y) {
  if (x.exact && y.exact) return x.val == y.val && x.unit == y.unit;
  if (x.is_zero() || y.is_zero()) return false;
  if (x.val != y.val) return false;
  const std::int64_t n = std::min(x.abs_prec(), y.abs_prec()) - x.val;
  return unit_mod(ctx, x, n) == unit_mod(ctx, y, n);
}

std::string padic_to_string(const PadicContext& ctx, const PadicValue& x) {
  if (x.is_zero()) return "0";
  std::string out = to_string(x.unit) + "*" + std::to_string(ctx.q) + "^" + std::to_string(x.val);
  if (!x.exact) out += "+O(" + std::to_string(ctx.q) + "^" + std::to_string(x.abs_prec()) + ")";
  return out;
}

}  // namespace tatekit::detail
