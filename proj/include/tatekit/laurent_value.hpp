#pragma once

// Capped-precision Laurent series sum_{k >= val} c_k t^k over a coefficient
// field. Exact values are Laurent polynomials; inexact values know their
// first unit.size() coefficients (the relative precision).

#include "tatekit/error.hpp"
#include "tatekit/galois_field.hpp"
#include "tatekit/ratfun.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace tatekit::detail {

struct GfRing {
  const GaloisField* gf;
  using Elem = std::uint32_t;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  Elem add(Elem a, Elem b) const { return gf->add(a, b); }
  Elem sub(Elem a, Elem b) const { return gf->sub(a, b); }
  Elem neg(Elem a) const { return gf->neg(a); }
  Elem mul(Elem a, Elem b) const { return gf->mul(a, b); }
  Elem inv(Elem a) const { return gf->inv(a); }
  Elem from_int(std::int64_t n) const { return gf->from_int(n); }
  std::string str(Elem a) const { return gf->to_string(a); }
  bool is_simple(Elem a) const { return gf->in_prime_field(a); }
};

struct RatFunRing {
  std::uint32_t p;
  std::size_t nvars;
  using Elem = RatFun;

  Elem zero() const { return RatFun(p, nvars); }
  Elem one() const { return RatFun(MPoly::constant(p, nvars, 1)); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return a.inverse(); }
  Elem from_int(std::int64_t n) const { return RatFun(MPoly::constant(p, nvars, n)); }
  std::string str(const Elem& a) const { return a.to_string(); }
  bool is_simple(const Elem& a) const { return a.is_constant(); }
};

template <class Ring>
struct LaurentValue {
  using Elem = typename Ring::Elem;

  std::int64_t val = 0;
  std::vector<Elem> unit;  // empty means exact zero
  bool exact = true;

  bool is_zero() const { return unit.empty(); }
  std::int64_t abs_prec() const {
    return exact ? std::numeric_limits<std::int64_t>::max() : val + static_cast<std::int64_t>(unit.size());
  }
  // Coefficient of t^k, for k below the absolute precision.
  Elem coeff(const Ring& ring, std::int64_t k) const {
    if (k < val || k - val >= static_cast<std::int64_t>(unit.size())) return ring.zero();
    return unit[static_cast<std::size_t>(k - val)];
  }
};

template <class Ring>
LaurentValue<Ring> laurent_normalize(const Ring& ring, std::int64_t val, std::vector<typename Ring::Elem> coeffs,
                                     bool exact, std::size_t cap) {
  std::size_t first = 0;
  while (first < coeffs.size() && ring.is_zero(coeffs[first])) ++first;
  LaurentValue<Ring> out;
  if (first == coeffs.size()) {
    if (!exact) throw PrecisionExhausted("result indistinguishable from zero at the precision cap");
    return out;
  }
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(first));
  out.val = val + static_cast<std::int64_t>(first);
  if (exact) {
    while (ring.is_zero(coeffs.back())) coeffs.pop_back();
  }
  if (coeffs.size() > cap) {
    coeffs.resize(cap);
    exact = false;
  }
  out.unit = std::move(coeffs);
  out.exact = exact;
  return out;
}

template <class Ring>
LaurentValue<Ring> laurent_monomial(const Ring& ring, typename Ring::Elem c, std::int64_t k) {
  LaurentValue<Ring> out;
  if (ring.is_zero(c)) return out;
  out.val = k;
  out.unit.push_back(std::move(c));
  return out;
}

template <class Ring>
LaurentValue<Ring> laurent_add(const Ring& ring, const LaurentValue<Ring>& x, const LaurentValue<Ring>& y,
                               std::size_t cap) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const std::int64_t lo = std::min(x.val, y.val);
  const bool exact = x.exact && y.exact;
  std::int64_t hi;
  if (exact) {
    hi = std::max(x.val + static_cast<std::int64_t>(x.unit.size()), y.val + static_cast<std::int64_t>(y.unit.size()));
  } else {
    hi = std::min(x.abs_prec(), y.abs_prec());
  }
  std::vector<typename Ring::Elem> coeffs;
  coeffs.reserve(static_cast<std::size_t>(hi - lo));
  for (std::int64_t k = lo; k < hi; ++k) coeffs.push_back(ring.add(x.coeff(ring, k), y.coeff(ring, k)));
  return laurent_normalize(ring, lo, std::move(coeffs), exact, cap);
}

template <class Ring>
LaurentValue<Ring> laurent_neg(const Ring& ring, LaurentValue<Ring> x) {
  for (auto& c : x.unit) c = ring.neg(c);
  return x;
}

template <class Ring>
std::vector<typename Ring::Elem> series_mul(const Ring& ring, const std::vector<typename Ring::Elem>& a,
                                            const std::vector<typename Ring::Elem>& b, std::size_t n) {
  std::vector<typename Ring::Elem> out(n, ring.zero());
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (ring.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
      if (ring.is_zero(b[j])) continue;
      out[i + j] = ring.add(out[i + j], ring.mul(a[i], b[j]));
    }
  }
  return out;
}

// First n coefficients of 1/a for a unit power series a (a[0] != 0).
template <class Ring>
std::vector<typename Ring::Elem> series_inverse(const Ring& ring, const std::vector<typename Ring::Elem>& a,
                                                std::size_t n) {
  std::vector<typename Ring::Elem> out(n, ring.zero());
  if (n == 0) return out;
  const auto lead_inv = ring.inv(a[0]);
  out[0] = lead_inv;
  for (std::size_t k = 1; k < n; ++k) {
    auto acc = ring.zero();
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc = ring.add(acc, ring.mul(a[j], out[k - j]));
    out[k] = ring.neg(ring.mul(lead_inv, acc));
  }
  return out;
}

template <class Ring>
LaurentValue<Ring> laurent_mul(const Ring& ring, const LaurentValue<Ring>& x, const LaurentValue<Ring>& y,
                               std::size_t cap) {
  if (x.is_zero() || y.is_zero()) return {};
  const bool exact = x.exact && y.exact;
  std::size_t n;
  if (exact) {
    n = x.unit.size() + y.unit.size() - 1;
  } else if (!x.exact && !y.exact) {
    n = std::min(x.unit.size(), y.unit.size());
  } else {
    n = x.exact ? y.unit.size() : x.unit.size();
  }
  return laurent_normalize(ring, x.val + y.val, series_mul(ring, x.unit, y.unit, n), exact, cap);
}

template <class Ring>
LaurentValue<Ring> laurent_inv(const Ring& ring, const LaurentValue<Ring>& y, std::size_t cap) {
  if (y.is_zero()) throw DivisionByZero();
  if (y.exact && y.unit.size() == 1) return laurent_monomial(ring, ring.inv(y.unit[0]), -y.val);
  const std::size_t n = y.exact ? cap : std::min(y.unit.size(), cap);
  return laurent_normalize(ring, -y.val, series_inverse(ring, y.unit, n), false, cap);
}

template <class Ring>
LaurentValue<Ring> laurent_div(const Ring& ring, const LaurentValue<Ring>& x, const LaurentValue<Ring>& y,
                               std::size_t cap) {
  if (y.is_zero()) throw DivisionByZero();
  if (x.is_zero()) return {};
  if (x.exact && y.exact && x.unit.size() >= y.unit.size()) {
    // Exact polynomial division when it terminates.
    const std::size_t qlen = x.unit.size() - y.unit.size() + 1;
    auto quotient = series_mul(ring, x.unit, series_inverse(ring, y.unit, qlen), qlen);
    auto back = series_mul(ring, quotient, y.unit, x.unit.size() + 1);
    bool same = true;
    for (std::size_t k = 0; k < back.size() && same; ++k) {
      const auto want = k < x.unit.size() ? x.unit[k] : ring.zero();
      same = ring.eq(back[k], want);
    }
    if (same) return laurent_normalize(ring, x.val - y.val, std::move(quotient), true, cap);
  }
  return laurent_mul(ring, x, laurent_inv(ring, y, cap), cap);
}

// Agreement up to the joint known precision.
template <class Ring>
bool laurent_agree(const Ring& ring, const LaurentValue<Ring>& x, const LaurentValue<Ring>& y) {
  if (x.exact && y.exact) {
    if (x.val != y.val && !(x.is_zero() && y.is_zero())) return false;
    if (x.unit.size() != y.unit.size()) return false;
    for (std::size_t i = 0; i < x.unit.size(); ++i)
      if (!ring.eq(x.unit[i], y.unit[i])) return false;
    return true;
  }
  if (x.is_zero() || y.is_zero()) return false;
  const std::int64_t hi = std::min(x.abs_prec(), y.abs_prec());
  for (std::int64_t k = std::min(x.val, y.val); k < hi; ++k)
    if (!ring.eq(x.coeff(ring, k), y.coeff(ring, k))) return false;
  return true;
}

}  // namespace tatekit::detail
