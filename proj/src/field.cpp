#include "tatekit/field.hpp"

#include "tatekit/error.hpp"

#include <sstream>

namespace tatekit {

using detail::GfRing;
using detail::PadicValue;
using detail::RatFunRing;

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::Padic: return "padic";
    case FieldKind::FqLaurent: return "fq_laurent";
    case FieldKind::RatfunLaurent: return "ratfun_laurent";
  }
  return "?";
}

FieldSpec FieldSpec::padic(std::uint32_t q, std::int64_t precision_cap) {
  if (!is_prime(q)) throw PreconditionFailed("residue prime must be prime");
  if (precision_cap < 1) throw PreconditionFailed("precision cap must be positive");
  FieldSpec s;
  s.kind_ = FieldKind::Padic;
  s.q_ = q;
  s.field_size_ = q;
  s.cap_ = precision_cap;
  return s;
}

FieldSpec FieldSpec::fq_laurent(std::uint32_t q, std::uint32_t field_size, std::int64_t precision_cap) {
  if (precision_cap < 1) throw PreconditionFailed("precision cap must be positive");
  FieldSpec s;
  s.kind_ = FieldKind::FqLaurent;
  s.q_ = q;
  s.field_size_ = field_size;
  s.cap_ = precision_cap;
  s.gf_ = std::make_shared<const GaloisField>(q, field_size);
  return s;
}

FieldSpec FieldSpec::ratfun_laurent(std::uint32_t q, std::size_t num_vars, std::int64_t precision_cap) {
  if (!is_prime(q)) throw PreconditionFailed("residue prime must be prime");
  if (precision_cap < 1) throw PreconditionFailed("precision cap must be positive");
  FieldSpec s;
  s.kind_ = FieldKind::RatfunLaurent;
  s.q_ = q;
  s.field_size_ = q;
  s.nvars_ = num_vars;
  s.cap_ = precision_cap;
  s.gf_ = std::make_shared<const GaloisField>(q, q);
  return s;
}

const GaloisField& FieldSpec::galois() const {
  if (!gf_) throw PreconditionFailed("field has no finite coefficient field");
  return *gf_;
}

FieldSpec FieldSpec::with_precision(std::int64_t precision_cap) const {
  if (precision_cap < 1) throw PreconditionFailed("precision cap must be positive");
  FieldSpec s = *this;
  s.cap_ = precision_cap;
  return s;
}

std::string FieldSpec::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case FieldKind::Padic: out << "Q_" << q_; break;
    case FieldKind::FqLaurent: out << "F_" << field_size_ << "((t))"; break;
    case FieldKind::RatfunLaurent: out << "F_" << q_ << "(u1..u" << nvars_ << ")((t))"; break;
  }
  out << " [cap " << cap_ << "]";
  return out.str();
}

Scalar::Scalar(FieldSpec spec, Value value) : spec_(std::move(spec)), value_(std::move(value)) {
  const bool ok = (spec_.kind() == FieldKind::Padic && std::holds_alternative<PadicValue>(value_)) ||
                  (spec_.kind() == FieldKind::FqLaurent && std::holds_alternative<GfValue>(value_)) ||
                  (spec_.kind() == FieldKind::RatfunLaurent && std::holds_alternative<RatFunValue>(value_));
  if (!ok) throw IncompatibleContext("scalar representation does not match its field");
}

Scalar Scalar::zero(const FieldSpec& spec) {
  switch (spec.kind()) {
    case FieldKind::Padic: return Scalar(spec, PadicValue{});
    case FieldKind::FqLaurent: return Scalar(spec, GfValue{});
    case FieldKind::RatfunLaurent: return Scalar(spec, RatFunValue{});
  }
  throw Error("unreachable");
}

Scalar Scalar::from_int(const FieldSpec& spec, std::int64_t n) { return from_rational(spec, Rational(static_cast<long>(n))); }

Scalar Scalar::from_rational(const FieldSpec& spec, const Rational& x) {
  switch (spec.kind()) {
    case FieldKind::Padic: return Scalar(spec, detail::padic_from_rational(spec.padic_context(), x));
    case FieldKind::FqLaurent: {
      const auto c = mod_rational_small(x, spec.residue_prime());
      return Scalar(spec, detail::laurent_monomial(spec.gf_ring(), c, 0));
    }
    case FieldKind::RatfunLaurent: {
      const auto c = mod_rational_small(x, spec.residue_prime());
      const auto ring = spec.ratfun_ring();
      return Scalar(spec, detail::laurent_monomial(ring, ring.from_int(c), 0));
    }
  }
  throw Error("unreachable");
}

Scalar Scalar::uniformizer(const FieldSpec& spec) {
  switch (spec.kind()) {
    case FieldKind::Padic: return from_int(spec, spec.residue_prime());
    case FieldKind::FqLaurent: return gf_monomial(spec, 1, 1);
    case FieldKind::RatfunLaurent: {
      const auto ring = spec.ratfun_ring();
      return Scalar(spec, detail::laurent_monomial(ring, ring.one(), 1));
    }
  }
  throw Error("unreachable");
}

Scalar Scalar::pbasis_variable(const FieldSpec& spec, std::size_t i) {
  if (spec.kind() != FieldKind::RatfunLaurent || i == 0 || i > spec.num_pbasis_vars())
    throw PreconditionFailed("u" + std::to_string(i) + " is not a declared variable of " + spec.describe());
  return ratfun_monomial(spec, RatFun(MPoly::variable(spec.residue_prime(), spec.num_pbasis_vars(), i - 1)), 0);
}

Scalar Scalar::residue_generator(const FieldSpec& spec) {
  if (spec.kind() != FieldKind::FqLaurent) throw PreconditionFailed("z is only defined for F_{q^d}((t))");
  return gf_monomial(spec, spec.galois().generator(), 0);
}

Scalar Scalar::gf_monomial(const FieldSpec& spec, std::uint32_t c, std::int64_t k) {
  return Scalar(spec, detail::laurent_monomial(spec.gf_ring(), c, k));
}

Scalar Scalar::ratfun_monomial(const FieldSpec& spec, RatFun c, std::int64_t k) {
  return Scalar(spec, detail::laurent_monomial(spec.ratfun_ring(), std::move(c), k));
}

bool Scalar::is_zero() const {
  return std::visit([](const auto& v) { return v.is_zero(); }, value_);
}

bool Scalar::is_exact() const {
  return std::visit([](const auto& v) { return v.exact; }, value_);
}

std::optional<std::int64_t> Scalar::valuation() const {
  if (is_zero()) return std::nullopt;
  return std::visit([](const auto& v) { return v.val; }, value_);
}

std::int64_t Scalar::val() const {
  if (auto v = valuation()) return *v;
  throw PreconditionFailed("valuation of zero is infinite");
}

std::optional<std::int64_t> Scalar::relative_precision() const {
  if (is_exact()) return std::nullopt;
  if (const auto* p = std::get_if<PadicValue>(&value_)) return p->prec;
  return std::visit([](const auto& v) -> std::int64_t {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, PadicValue>) return v.prec;
    else return static_cast<std::int64_t>(v.unit.size());
  }, value_);
}

std::optional<std::int64_t> Scalar::absolute_precision() const {
  if (is_exact()) return std::nullopt;
  return std::visit([](const auto& v) { return v.abs_prec(); }, value_);
}

std::optional<Rational> Scalar::as_rational() const {
  const auto* p = std::get_if<PadicValue>(&value_);
  if (!p || !p->exact) return std::nullopt;
  return detail::padic_to_rational(spec_.padic_context(), *p);
}

LogNorm Scalar::norm() const {
  if (is_zero()) return LogNorm::zero();
  return LogNorm::of(Rational(static_cast<long>(val())));
}

namespace {

void require_same(const Scalar& a, const Scalar& b) {
  if (a.spec() != b.spec())
    throw IncompatibleContext("scalars from different fields: " + a.spec().describe() + " vs " + b.spec().describe());
}

std::size_t cap_of(const FieldSpec& spec) { return static_cast<std::size_t>(spec.precision_cap()); }

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  const FieldSpec& s = a.spec();
  switch (s.kind()) {
    case FieldKind::Padic: return Scalar(s, detail::padic_add(s.padic_context(), a.padic(), b.padic()));
    case FieldKind::FqLaurent: return Scalar(s, detail::laurent_add(s.gf_ring(), a.gf(), b.gf(), cap_of(s)));
    case FieldKind::RatfunLaurent:
      return Scalar(s, detail::laurent_add(s.ratfun_ring(), a.ratfun(), b.ratfun(), cap_of(s)));
  }
  throw Error("unreachable");
}

Scalar Scalar::operator-() const {
  switch (spec_.kind()) {
    case FieldKind::Padic: return Scalar(spec_, detail::padic_neg(padic()));
    case FieldKind::FqLaurent: return Scalar(spec_, detail::laurent_neg(spec_.gf_ring(), gf()));
    case FieldKind::RatfunLaurent: return Scalar(spec_, detail::laurent_neg(spec_.ratfun_ring(), ratfun()));
  }
  throw Error("unreachable");
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  const FieldSpec& s = a.spec();
  switch (s.kind()) {
    case FieldKind::Padic: return Scalar(s, detail::padic_mul(s.padic_context(), a.padic(), b.padic()));
    case FieldKind::FqLaurent: return Scalar(s, detail::laurent_mul(s.gf_ring(), a.gf(), b.gf(), cap_of(s)));
    case FieldKind::RatfunLaurent:
      return Scalar(s, detail::laurent_mul(s.ratfun_ring(), a.ratfun(), b.ratfun(), cap_of(s)));
  }
  throw Error("unreachable");
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  const FieldSpec& s = a.spec();
  switch (s.kind()) {
    case FieldKind::Padic:
      return Scalar(s, detail::padic_mul(s.padic_context(), a.padic(), detail::padic_inv(s.padic_context(), b.padic())));
    case FieldKind::FqLaurent: return Scalar(s, detail::laurent_div(s.gf_ring(), a.gf(), b.gf(), cap_of(s)));
    case FieldKind::RatfunLaurent:
      return Scalar(s, detail::laurent_div(s.ratfun_ring(), a.ratfun(), b.ratfun(), cap_of(s)));
  }
  throw Error("unreachable");
}

Scalar Scalar::inverse() const { return one(spec_) / *this; }

Scalar Scalar::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result = one(spec_);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

bool Scalar::operator==(const Scalar& o) const {
  if (spec_ != o.spec_) return false;
  switch (spec_.kind()) {
    case FieldKind::Padic: return detail::padic_agree(spec_.padic_context(), padic(), o.padic());
    case FieldKind::FqLaurent: return detail::laurent_agree(spec_.gf_ring(), gf(), o.gf());
    case FieldKind::RatfunLaurent: return detail::laurent_agree(spec_.ratfun_ring(), ratfun(), o.ratfun());
  }
  return false;
}

namespace {

template <class Ring>
detail::LaurentValue<Ring> laurent_truncate(const Ring& ring, const detail::LaurentValue<Ring>& x, std::int64_t n) {
  if (x.is_zero()) return x;
  if (!x.exact && x.abs_prec() <= n) return x;
  if (x.val >= n) throw PrecisionExhausted("truncation removes every known digit");
  // An exact value shorter than n is padded with known zero digits.
  std::vector<typename Ring::Elem> coeffs(static_cast<std::size_t>(n - x.val), ring.zero());
  for (std::size_t i = 0; i < coeffs.size() && i < x.unit.size(); ++i) coeffs[i] = x.unit[i];
  const std::size_t len = coeffs.size();
  return detail::laurent_normalize(ring, x.val, std::move(coeffs), false, len);
}

}  // namespace

Scalar Scalar::truncated_to(std::int64_t abs_prec) const {
  switch (spec_.kind()) {
    case FieldKind::Padic: {
      const auto& p = padic();
      if (p.is_zero() || p.abs_prec() <= abs_prec) return *this;
      if (p.val >= abs_prec) throw PrecisionExhausted("truncation removes every known digit");
      const auto ctx = spec_.padic_context();
      PadicValue out;
      out.val = p.val;
      out.exact = false;
      out.prec = std::min(abs_prec - p.val, ctx.cap);
      const Integer m = ipow(ctx.q, static_cast<std::uint64_t>(out.prec));
      out.unit = Rational(p.exact ? mod_rational(p.unit, m) : Integer(p.unit.get_num() % m));
      return Scalar(spec_, std::move(out));
    }
    case FieldKind::FqLaurent: return Scalar(spec_, laurent_truncate(spec_.gf_ring(), gf(), abs_prec));
    case FieldKind::RatfunLaurent: return Scalar(spec_, laurent_truncate(spec_.ratfun_ring(), ratfun(), abs_prec));
  }
  throw Error("unreachable");
}

Scalar Scalar::as_exact() const {
  switch (spec_.kind()) {
    case FieldKind::Padic: {
      PadicValue v = padic();
      v.exact = true;
      return Scalar(spec_, std::move(v));
    }
    case FieldKind::FqLaurent: {
      const auto& v = gf();
      return Scalar(spec_, detail::laurent_normalize(spec_.gf_ring(), v.val, v.unit, true, v.unit.size() + 1));
    }
    case FieldKind::RatfunLaurent: {
      const auto& v = ratfun();
      return Scalar(spec_, detail::laurent_normalize(spec_.ratfun_ring(), v.val, v.unit, true, v.unit.size() + 1));
    }
  }
  throw Error("unreachable");
}

namespace {

std::string monomial_string(const std::string& coeff, std::int64_t k) {
  const bool composite = coeff.find_first_of("+/*") != std::string::npos ||
                         (coeff.size() > 1 && coeff.find('-', 1) != std::string::npos);
  if (k == 0) return coeff;
  std::string c = composite ? "(" + coeff + ")" : coeff;
  std::string t = k == 1 ? "t" : "t^" + std::to_string(k);
  if (c == "1") return t;
  return c + "*" + t;
}

template <class Ring>
std::string laurent_string(const Ring& ring, const detail::LaurentValue<Ring>& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < x.unit.size(); ++i) {
    if (ring.is_zero(x.unit[i])) continue;
    if (!out.empty()) out += " + ";
    out += monomial_string(ring.str(x.unit[i]), x.val + static_cast<std::int64_t>(i));
  }
  if (!x.exact) out += " + O(t^" + std::to_string(x.abs_prec()) + ")";
  return out;
}

}  // namespace

std::string Scalar::to_string() const {
  switch (spec_.kind()) {
    case FieldKind::Padic: return detail::padic_to_string(spec_.padic_context(), padic());
    case FieldKind::FqLaurent: return laurent_string(spec_.gf_ring(), gf());
    case FieldKind::RatfunLaurent: return laurent_string(spec_.ratfun_ring(), ratfun());
  }
  return "?";
}

Scalar field_arith(const Scalar& x, const Scalar& y, ScalarOp op) {
  switch (op) {
    case ScalarOp::Add: return x + y;
    case ScalarOp::Sub: return x - y;
    case ScalarOp::Mul: return x * y;
    case ScalarOp::Div: return x / y;
  }
  throw Error("unreachable");
}

bool check_aux_prime(const FieldSpec& spec, std::uint32_t p) {
  if (!is_prime(p)) throw PreconditionFailed("auxiliary prime must be prime");
  return p != spec.residue_prime();
}

}  // namespace tatekit
