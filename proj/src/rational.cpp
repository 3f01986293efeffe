#include "tatekit/rational.hpp"

#include "tatekit/error.hpp"

namespace tatekit {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw ParseError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational out;
  if (out.set_str(s, 10) != 0) throw ParseError("malformed rational literal '" + s + "'");
  if (out.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  out.canonicalize();
  return out;
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& x) { return x.get_str(10); }

Integer ipow(std::uint64_t base, std::uint64_t exp) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

Rational rpow(const Rational& base, std::int64_t exp) {
  if (exp == 0) return Rational(1);
  if (base == 0) {
    if (exp < 0) throw DivisionByZero();
    return Rational(0);
  }
  const auto n = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), n);
  Rational out = exp < 0 ? Rational(den, num) : Rational(num, den);
  out.canonicalize();
  return out;
}

std::int64_t valuation(const Integer& z, std::uint64_t prime) {
  Integer copy = z;
  return strip_prime(copy, prime);
}

std::int64_t strip_prime(Integer& z, std::uint64_t prime) {
  if (z == 0) throw PreconditionFailed("valuation of zero");
  Integer p(static_cast<unsigned long>(prime));
  return static_cast<std::int64_t>(mpz_remove(z.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t()));
}

Integer mod_rational(const Rational& x, const Integer& modulus) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), x.get_den_mpz_t(), modulus.get_mpz_t()) == 0) {
    if (modulus == 1) return Integer(0);
    throw DivisionByZero();
  }
  Integer out = (x.get_num() * inv) % modulus;
  if (out < 0) out += modulus;
  return out;
}

std::uint32_t mod_rational_small(const Rational& x, std::uint32_t modulus) {
  return static_cast<std::uint32_t>(mod_rational(x, Integer(modulus)).get_ui());
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

}  // namespace tatekit
