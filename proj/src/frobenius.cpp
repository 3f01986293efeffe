#include "tatekit/frobenius.hpp"

#include "tatekit/error.hpp"
#include "tatekit/radius.hpp"

namespace tatekit {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t p) { return a >= 0 ? (a + p - 1) / p : -((-a) / p); }

void require_same_field(const FieldSpec& a, const PBasis& basis) {
  if (a != basis.spec()) throw IncompatibleContext("value and p-basis are over different fields");
}

}  // namespace

PBasis::PBasis(FieldSpec spec) : spec_(std::move(spec)) {
  if (spec_.kind() != FieldKind::FqLaurent) throw PreconditionFailed("p-bases are provided for F_q((t)) only");
  const auto t = Scalar::uniformizer(spec_);
  for (std::uint32_t i = 0; i < prime(); ++i) elements_.push_back(t.pow(i));
}

std::string PBasis::name(std::size_t i) const {
  if (i == 0) return "1";
  return i == 1 ? "t" : "t^" + std::to_string(i);
}

ScalarParts scalar_decompose(const Scalar& a, const PBasis& basis) {
  require_same_field(a.spec(), basis);
  const auto& spec = basis.spec();
  const auto& gf = spec.galois();
  const auto ring = spec.gf_ring();
  const auto p = static_cast<std::int64_t>(basis.prime());
  const auto cap = static_cast<std::size_t>(spec.precision_cap());
  const auto& v = a.gf();

  ScalarParts out;
  for (std::int64_t i = 0; i < p; ++i) {
    std::vector<GaloisField::Elem> coeffs;
    std::int64_t first = 0;
    bool started = false;
    for (std::size_t idx = 0; idx < v.unit.size(); ++idx) {
      const auto k = v.val + static_cast<std::int64_t>(idx);
      if (floor_mod(k, p) != i || v.unit[idx] == 0) continue;
      const auto j = (k - i) / p;
      if (!started) {
        first = j;
        started = true;
      }
      coeffs.resize(static_cast<std::size_t>(j - first + 1), 0);
      coeffs.back() = gf.frobenius_root(v.unit[idx]);
    }
    std::optional<std::int64_t> prec;
    if (!v.exact) prec = ceil_div(v.abs_prec() - i, p);
    if (!started) {
      out.coords.push_back(Scalar::zero(spec));
      out.abs_prec.push_back(prec);
      continue;
    }
    if (prec) coeffs.resize(static_cast<std::size_t>(*prec - first), 0);
    out.coords.emplace_back(spec, detail::laurent_normalize(ring, first, std::move(coeffs), !prec, cap));
    out.abs_prec.push_back(prec);
  }
  return out;
}

Scalar scalar_reconstruct(const std::vector<Scalar>& coords, const PBasis& basis) {
  if (coords.size() != basis.size()) throw PreconditionFailed("coordinate count does not match the p-basis");
  Scalar out = Scalar::zero(basis.spec());
  for (std::size_t i = 0; i < coords.size(); ++i) out += coords[i].pow(basis.prime()) * basis.element(i);
  return out;
}

NormBoundReport verify_norm_bound(const Scalar& a, const PBasis& basis, const LogNorm& declared) {
  if (a.is_zero()) throw PreconditionFailed("norm bound needs a nonzero value");
  const RadiusContext plain(basis.prime());
  const auto parts = scalar_decompose(a, basis);
  NormBoundReport out;
  out.norm = a.norm();
  out.weighted_max = LogNorm::zero();
  out.plain_max = LogNorm::zero();
  const Rational p(basis.prime());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto power = ln_pow(parts.coords[i].norm(), p);
    out.plain_max = ln_max(out.plain_max, power, plain);
    out.weighted_max = ln_max(out.weighted_max, power * basis.element(i).norm(), plain);
  }
  const Rational gap = ln_div(out.weighted_max, out.norm).base_exp();
  out.observed = LogNorm::of(gap < 0 ? Rational(gap) : Rational(-gap));
  out.declared = declared;
  out.pass = ln_less_equal(out.observed, declared, plain);
  return out;
}

std::string PartKey::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (j) out += ":";
    out += std::to_string(e[j]);
  }
  return out + "," + std::to_string(i);
}

SeriesParts series_decompose(const TateSeries& f, const PBasis& basis) {
  require_same_field(f.spec(), basis);
  const auto& ring = f.ring_ptr();
  const auto n = ring->nvars();
  const auto p = static_cast<std::int64_t>(basis.prime());

  std::map<PartKey, TateSeries::Terms> terms;
  // every residue vector e in {0..p-1}^n
  std::vector<Exponent> residues{Exponent{}};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Exponent> next;
    for (const auto& r : residues)
      for (std::int64_t a = 0; a < p; ++a) {
        auto e = r;
        e.push_back(a);
        next.push_back(std::move(e));
      }
    residues = std::move(next);
  }
  for (const auto& e : residues)
    for (std::size_t i = 0; i < basis.size(); ++i) terms[{e, i}];

  for (const auto& [nu, c] : f.terms()) {
    Exponent e(n), shifted(n);
    for (std::size_t j = 0; j < n; ++j) {
      e[j] = floor_mod(nu[j], p);
      shifted[j] = (nu[j] - e[j]) / p;
    }
    const auto parts = scalar_decompose(c, basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!parts.coords[i].is_zero()) terms[{e, i}].emplace(shifted, parts.coords[i]);
  }

  SeriesParts out;
  const Rational inv_p(1, basis.prime());
  for (auto& [key, t] : terms) {
    LogNorm tail = LogNorm::zero();
    if (!f.tail().is_zero()) {
      Rational xi_exp(-static_cast<long>(key.i), static_cast<long>(basis.prime()));
      xi_exp.canonicalize();
      tail = ln_pow(f.tail(), inv_p) * LogNorm::of(xi_exp) * ln_pow(ring->monomial_norm(key.e), -inv_p);
    }
    out.emplace(key, TateSeries(ring, std::move(t), tail));
  }
  return out;
}

TateSeries frobenius_twist(const TateSeries& g) {
  const auto p = g.spec().residue_prime();
  TateSeries::Terms terms;
  for (const auto& [nu, c] : g.terms()) {
    Exponent scaled(nu);
    for (auto& x : scaled) x *= p;
    terms.emplace(std::move(scaled), c.pow(p));
  }
  const auto tail = g.tail().is_zero() ? LogNorm::zero() : ln_pow(g.tail(), Rational(p));
  return TateSeries(g.ring_ptr(), std::move(terms), tail);
}

TateSeries series_reconstruct(const SeriesParts& parts, const PBasis& basis, const SeriesRingPtr& ring) {
  TateSeries out = TateSeries::zero(ring);
  for (const auto& [key, part] : parts)
    out += frobenius_twist(part) * TateSeries::monomial(ring, basis.element(key.i), key.e);
  return out;
}

bool derivative_span_witness(const TateSeries& f, const PBasis& basis, std::size_t var) {
  const auto& ring = f.ring_ptr();
  if (var >= ring->nvars()) throw PreconditionFailed("no such variable");
  TateSeries rhs = TateSeries::zero(ring);
  for (const auto& [key, part] : series_decompose(f, basis)) {
    const auto e = key.e[var];
    if (e == 0) continue;
    auto shift = key.e;
    shift[var] -= 1;
    const auto coeff = basis.element(key.i) * Scalar::from_int(basis.spec(), e);
    rhs += frobenius_twist(part) * TateSeries::monomial(ring, coeff, shift);
  }
  return f.derivative(var) == rhs;
}

bool termwise_bound_holds(const TateSeries& f, const PBasis& basis, const LogNorm& declared) {
  require_same_field(f.spec(), basis);
  const auto& ring = f.ring();
  const auto p = static_cast<std::int64_t>(basis.prime());
  for (const auto& [nu, c] : f.terms()) {
    Exponent e(nu.size()), shifted(nu.size());
    for (std::size_t j = 0; j < nu.size(); ++j) {
      e[j] = floor_mod(nu[j], p);
      shifted[j] = (nu[j] - e[j]) / p;
    }
    const auto rhs = declared * c.norm() * ring.monomial_norm(nu) * ln_div(LogNorm::identity(), ring.monomial_norm(e));
    const auto parts = scalar_decompose(c, basis);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (parts.coords[i].is_zero()) continue;
      const auto lhs = ln_pow(parts.coords[i].norm() * ring.monomial_norm(shifted), Rational(p)) * basis.element(i).norm();
      if (!ln_less_equal(lhs, rhs, ring.radii())) return false;
    }
  }
  return true;
}

}  // namespace tatekit
