#pragma once

// Elements of Q_q written q^val * unit. Exact values keep the unit as a
// rational with numerator and denominator prime to q. Inexact values keep an
// integer unit modulo q^prec, prec being the relative precision.

#include "tatekit/rational.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace tatekit::detail {

struct PadicValue {
  std::int64_t val = 0;
  Rational unit = 0;  // zero means exact zero
  bool exact = true;
  std::int64_t prec = 0;

  bool is_zero() const { return unit == 0; }
  std::int64_t abs_prec() const { return exact ? std::numeric_limits<std::int64_t>::max() : val + prec; }
};

struct PadicContext {
  std::uint32_t q;
  std::int64_t cap;
};

PadicValue padic_from_rational(const PadicContext& ctx, const Rational& x);
// An inexact value from an integer known modulo q^abs_prec.
PadicValue padic_from_residue(const PadicContext& ctx, const Integer& residue, std::int64_t abs_prec);
Rational padic_to_rational(const PadicContext& ctx, const PadicValue& x);
// The rational a/b with |a|, |b| <= sqrt(M/2) agreeing with x modulo
// M = q^(relative precision), scaled back by q^val; the value itself when exact.
std::optional<Rational> padic_rational_reconstruction(const PadicContext& ctx, const PadicValue& x);

PadicValue padic_add(const PadicContext& ctx, const PadicValue& x, const PadicValue& y);
PadicValue padic_neg(const PadicValue& x);
PadicValue padic_mul(const PadicContext& ctx, const PadicValue& x, const PadicValue& y);
PadicValue padic_inv(const PadicContext& ctx, const PadicValue& x);
bool padic_agree(const PadicContext& ctx, const PadicValue& x, const PadicValue& y);
std::string padic_to_string(const PadicContext& ctx, const PadicValue& x);

}  // namespace tatekit::detail
