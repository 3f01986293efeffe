#pragma once

#include "tatekit/galois_field.hpp"
#include "tatekit/laurent_value.hpp"
#include "tatekit/lognorm.hpp"
#include "tatekit/padic_value.hpp"
#include "tatekit/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace tatekit {

enum class FieldKind { Padic, FqLaurent, RatfunLaurent };

std::string to_string(FieldKind kind);

// A concrete complete non-archimedean field:
//   Padic          Q_q
//   FqLaurent      F_{field_size}((t)), field_size a power of q
//   RatfunLaurent  F_q(u_1, ..., u_N)((t))
// The norm is |x| = q^{-v(x)} in every case.
class FieldSpec {
 public:
  static FieldSpec padic(std::uint32_t q, std::int64_t precision_cap = 40);
  static FieldSpec fq_laurent(std::uint32_t q, std::uint32_t field_size, std::int64_t precision_cap = 64);
  static FieldSpec ratfun_laurent(std::uint32_t q, std::size_t num_vars, std::int64_t precision_cap = 64);

  FieldKind kind() const { return kind_; }
  std::uint32_t residue_prime() const { return q_; }
  std::uint32_t field_size() const { return field_size_; }
  std::size_t num_pbasis_vars() const { return nvars_; }
  std::int64_t precision_cap() const { return cap_; }
  // 0 for Q_q, q for the Laurent kinds.
  std::uint32_t characteristic() const { return kind_ == FieldKind::Padic ? 0 : q_; }
  bool is_laurent() const { return kind_ != FieldKind::Padic; }

  const GaloisField& galois() const;
  detail::GfRing gf_ring() const { return {&galois()}; }
  detail::RatFunRing ratfun_ring() const { return {q_, nvars_}; }
  detail::PadicContext padic_context() const { return {q_, cap_}; }

  FieldSpec with_precision(std::int64_t precision_cap) const;
  std::string describe() const;

  bool operator==(const FieldSpec& o) const {
    return kind_ == o.kind_ && q_ == o.q_ && field_size_ == o.field_size_ && nvars_ == o.nvars_ && cap_ == o.cap_;
  }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }

 private:
  FieldSpec() = default;

  FieldKind kind_ = FieldKind::Padic;
  std::uint32_t q_ = 2;
  std::uint32_t field_size_ = 2;
  std::size_t nvars_ = 0;
  std::int64_t cap_ = 40;
  std::shared_ptr<const GaloisField> gf_;
};

// Element of a FieldSpec's field, with exact valuation and capped precision.
//
// Values built from literals are exact; an operation whose true result needs
// more than precision_cap significant digits (series inverses, roots) yields
// an inexact value carrying its relative precision. Cancellation that leaves
// nothing known above the cap raises PrecisionExhausted instead of returning 0.
class Scalar {
 public:
  using GfValue = detail::LaurentValue<detail::GfRing>;
  using RatFunValue = detail::LaurentValue<detail::RatFunRing>;
  using Value = std::variant<detail::PadicValue, GfValue, RatFunValue>;

  Scalar(FieldSpec spec, Value value);

  static Scalar zero(const FieldSpec& spec);
  static Scalar one(const FieldSpec& spec) { return from_int(spec, 1); }
  static Scalar from_int(const FieldSpec& spec, std::int64_t n);
  static Scalar from_rational(const FieldSpec& spec, const Rational& x);
  // q for Q_q, t for the Laurent kinds.
  static Scalar uniformizer(const FieldSpec& spec);
  // u_i (1-based) of F_q(u_1..u_N)((t)).
  static Scalar pbasis_variable(const FieldSpec& spec, std::size_t i);
  // The generator z of F_{q^d} over F_q.
  static Scalar residue_generator(const FieldSpec& spec);
  // c * t^k for a coefficient c of a Laurent kind.
  static Scalar gf_monomial(const FieldSpec& spec, std::uint32_t c, std::int64_t k);
  static Scalar ratfun_monomial(const FieldSpec& spec, RatFun c, std::int64_t k);

  const FieldSpec& spec() const { return spec_; }
  const Value& value() const { return value_; }
  const detail::PadicValue& padic() const { return std::get<detail::PadicValue>(value_); }
  const GfValue& gf() const { return std::get<GfValue>(value_); }
  const RatFunValue& ratfun() const { return std::get<RatFunValue>(value_); }

  bool is_zero() const;
  bool is_exact() const;
  // v(x); nullopt for zero (v = +infinity).
  std::optional<std::int64_t> valuation() const;
  std::int64_t val() const;
  // Relative precision; nullopt for exact values.
  std::optional<std::int64_t> relative_precision() const;
  std::optional<std::int64_t> absolute_precision() const;
  // The exact rational value of an exact p-adic scalar.
  std::optional<Rational> as_rational() const;

  LogNorm norm() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar inverse() const;
  Scalar pow(std::int64_t e) const;

  // Agreement to the joint known precision (identity for exact values).
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Drops everything at and beyond absolute precision n (for inexact results).
  Scalar truncated_to(std::int64_t abs_prec) const;
  // An exact value with the same stored digits.
  Scalar as_exact() const;

  std::string to_string() const;

 private:
  FieldSpec spec_;
  Value value_;
};

enum class ScalarOp { Add, Sub, Mul, Div };
Scalar field_arith(const Scalar& x, const Scalar& y, ScalarOp op);

// |p| = 1 in the field.
bool check_aux_prime(const FieldSpec& spec, std::uint32_t p);

// A p-th root of a inside the field, lifted from a residue root by Newton
// iteration to the precision cap. Among the p candidates, the root
// congruent to 1 when a's unit part is congruent to 1, otherwise the lift of
// the smallest residue root.
Scalar scalar_pth_root(const Scalar& a, std::uint32_t p);

// The leading part g = q^v * c^p (or t^v * c^p) of a together with g^{1/p},
// when v is divisible by p and the residue of a's unit part has a p-th root c.
struct Recentering {
  Scalar center;
  Scalar center_root;
};
std::optional<Recentering> leading_recentering(const Scalar& a, std::uint32_t p);

}  // namespace tatekit
