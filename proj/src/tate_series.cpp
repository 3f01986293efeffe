#include "tatekit/tate_series.hpp"

#include "tatekit/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace tatekit {

std::string to_string(SeriesKind kind) { return kind == SeriesKind::Power ? "power" : "laurent"; }

SeriesRing::SeriesRing(FieldSpec spec, std::shared_ptr<const RadiusContext> radii, std::vector<std::string> radius_ids,
                       SeriesKind kind, std::size_t support_cap)
    : spec_(std::move(spec)), radii_(std::move(radii)), ids_(std::move(radius_ids)), kind_(kind), cap_(support_cap) {
  if (!radii_) throw PreconditionFailed("series ring needs a radius context");
  if (ids_.empty()) throw PreconditionFailed("series ring needs at least one variable");
  if (cap_ == 0) throw PreconditionFailed("support cap must be positive");
  if (radii_->residue_prime() != spec_.residue_prime()) {
    throw IncompatibleContext("radius context and field use different residue primes");
  }
  for (const auto& id : ids_) gens_.push_back(radii_->index_of(id));
}

LogNorm SeriesRing::monomial_norm(const Exponent& nu) const {
  std::vector<Rational> exps(radii_->size(), Rational(0));
  for (std::size_t i = 0; i < nu.size(); ++i) exps[gens_[i]] += nu[i];
  return LogNorm::of(0, std::move(exps));
}

bool SeriesRing::admits(const Exponent& nu) const {
  if (nu.size() != nvars()) return false;
  if (kind_ == SeriesKind::Power) {
    return std::all_of(nu.begin(), nu.end(), [](std::int64_t e) { return e >= 0; });
  }
  return true;
}

bool SeriesRing::compatible(const SeriesRing& o) const {
  return this == &o || (spec_ == o.spec_ && radii_ == o.radii_ && ids_ == o.ids_ && kind_ == o.kind_);
}

namespace {

void require_compatible(const TateSeries& a, const TateSeries& b) {
  if (!a.ring().compatible(b.ring())) throw IncompatibleContext("series from different rings");
}

// Adds c into terms[nu]. Inexact cancellation moves the unresolved remainder
// into the tail bound instead of failing.
void accumulate(const SeriesRing& ring, TateSeries::Terms& terms, const Exponent& nu, const Scalar& c, LogNorm& tail) {
  if (c.is_zero()) return;
  auto it = terms.find(nu);
  if (it == terms.end()) {
    terms.emplace(nu, c);
    return;
  }
  try {
    Scalar sum = it->second + c;
    if (sum.is_zero()) {
      terms.erase(it);
    } else {
      it->second = std::move(sum);
    }
  } catch (const PrecisionExhausted&) {
    const auto pa = it->second.absolute_precision();
    const auto pc = c.absolute_precision();
    std::int64_t prec = std::numeric_limits<std::int64_t>::max();
    if (pa) prec = std::min(prec, *pa);
    if (pc) prec = std::min(prec, *pc);
    terms.erase(it);
    tail = ln_max(tail, ln_mul(LogNorm::of(prec), ring.monomial_norm(nu)), ring.radii());
  }
}

LogNorm stored_max(const TateSeries& f) {
  LogNorm best = LogNorm::zero();
  for (const auto& [nu, c] : f.terms()) {
    best = ln_max(best, ln_mul(c.norm(), f.ring().monomial_norm(nu)), f.ring().radii());
  }
  return best;
}

std::string monomial_text(const SeriesRing& ring, const Exponent& nu) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] == 0) continue;
    if (!first) out << "*";
    first = false;
    out << "T";
    if (ring.nvars() > 1) out << (i + 1);
    if (nu[i] != 1) out << "^" << nu[i];
  }
  return out.str();
}

}  // namespace

TateSeries::TateSeries(SeriesRingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw PreconditionFailed("series needs a ring");
}

TateSeries::TateSeries(SeriesRingPtr ring, Terms terms, LogNorm tail) : ring_(std::move(ring)), tail_(std::move(tail)) {
  if (!ring_) throw PreconditionFailed("series needs a ring");
  for (auto& [nu, c] : terms) {
    if (!ring_->admits(nu)) throw PreconditionFailed("exponent not admitted by the series ring");
    if (c.spec() != ring_->spec()) throw IncompatibleContext("coefficient from a different field");
    accumulate(*ring_, terms_, nu, c, tail_);
  }
  prune();
}

TateSeries TateSeries::constant(SeriesRingPtr ring, const Scalar& c) {
  Exponent nu(ring->nvars(), 0);
  return monomial(std::move(ring), c, std::move(nu));
}

TateSeries TateSeries::one(SeriesRingPtr ring) {
  const Scalar c = Scalar::one(ring->spec());
  return constant(std::move(ring), c);
}

TateSeries TateSeries::monomial(SeriesRingPtr ring, const Scalar& c, Exponent nu) {
  Terms t;
  t.emplace(std::move(nu), c);
  return TateSeries(std::move(ring), std::move(t));
}

TateSeries TateSeries::power_of_t(SeriesRingPtr ring, std::int64_t k) {
  if (ring->nvars() != 1) throw PreconditionFailed("power_of_t needs a single-variable ring");
  const Scalar c = Scalar::one(ring->spec());
  return monomial(std::move(ring), c, {k});
}

TateSeries TateSeries::variable(SeriesRingPtr ring, std::size_t var) {
  Exponent nu(ring->nvars(), 0);
  nu.at(var) = 1;
  const Scalar c = Scalar::one(ring->spec());
  return monomial(std::move(ring), c, std::move(nu));
}

Scalar TateSeries::coefficient(const Exponent& nu) const {
  auto it = terms_.find(nu);
  return it == terms_.end() ? Scalar::zero(spec()) : it->second;
}

std::int64_t TateSeries::max_degree() const {
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (const auto& [nu, c] : terms_) best = std::max(best, std::accumulate(nu.begin(), nu.end(), std::int64_t{0}));
  return best;
}

void TateSeries::prune() {
  const std::size_t cap = ring_->support_cap();
  if (terms_.size() <= cap) return;
  struct Entry {
    Exponent nu;
    LogNorm norm;
  };
  std::vector<Entry> entries;
  entries.reserve(terms_.size());
  for (const auto& [nu, c] : terms_) entries.push_back({nu, ln_mul(c.norm(), ring_->monomial_norm(nu))});
  const RadiusContext& radii = ring_->radii();
  // Largest norms first; among equal norms the smaller exponent is kept.
  std::stable_sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
    const Ordering o = ln_compare(a.norm, b.norm, radii);
    if (o != Ordering::Equal) return o == Ordering::Greater;
    return a.nu < b.nu;
  });
  for (std::size_t i = cap; i < entries.size(); ++i) {
    tail_ = ln_max(tail_, entries[i].norm, radii);
    terms_.erase(entries[i].nu);
  }
}

TateSeries TateSeries::operator-() const {
  TateSeries out(ring_);
  for (const auto& [nu, c] : terms_) out.terms_.emplace(nu, -c);
  out.tail_ = tail_;
  return out;
}

TateSeries operator+(const TateSeries& a, const TateSeries& b) {
  require_compatible(a, b);
  TateSeries out = a;
  out.tail_ = ln_max(a.tail_, b.tail_, a.ring().radii());
  for (const auto& [nu, c] : b.terms_) accumulate(a.ring(), out.terms_, nu, c, out.tail_);
  out.prune();
  return out;
}

TateSeries operator-(const TateSeries& a, const TateSeries& b) { return a + (-b); }

TateSeries operator*(const TateSeries& a, const TateSeries& b) {
  require_compatible(a, b);
  const RadiusContext& radii = a.ring().radii();
  TateSeries out(a.ring_);
  // (a_s + A)(b_s + B) with |A| <= t_a, |B| <= t_b.
  LogNorm tail = ln_mul(a.tail_, b.tail_);
  if (!b.tail_.is_zero()) tail = ln_max(tail, ln_mul(stored_max(a), b.tail_), radii);
  if (!a.tail_.is_zero()) tail = ln_max(tail, ln_mul(a.tail_, stored_max(b)), radii);
  out.tail_ = tail;
  Exponent nu(a.ring().nvars());
  for (const auto& [na, ca] : a.terms_) {
    for (const auto& [nb, cb] : b.terms_) {
      for (std::size_t i = 0; i < nu.size(); ++i) nu[i] = na[i] + nb[i];
      accumulate(a.ring(), out.terms_, nu, ca * cb, out.tail_);
    }
  }
  out.prune();
  return out;
}

TateSeries TateSeries::scaled(const Scalar& c) const {
  if (c.spec() != spec()) throw IncompatibleContext("scalar from a different field");
  TateSeries out(ring_);
  if (c.is_zero()) return out;
  for (const auto& [nu, a] : terms_) out.terms_.emplace(nu, a * c);
  out.tail_ = ln_mul(tail_, c.norm());
  return out;
}

TateSeries TateSeries::pow(std::uint64_t e) const {
  TateSeries result = one(ring_);
  TateSeries base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

TateSeries TateSeries::inverse() const {
  if (!is_exact() || terms_.size() != 1) throw PreconditionFailed("only single exact terms are inverted");
  const auto& [nu, c] = *terms_.begin();
  Exponent neg(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) neg[i] = -nu[i];
  if (!ring_->admits(neg)) throw PreconditionFailed("term is not a unit of the power series ring");
  return monomial(ring_, c.inverse(), std::move(neg));
}

TateSeries TateSeries::derivative(std::size_t var) const {
  if (var >= ring_->nvars()) throw PreconditionFailed("no such variable");
  TateSeries out(ring_);
  for (const auto& [nu, c] : terms_) {
    if (nu[var] == 0) continue;
    Exponent d = nu;
    d[var] -= 1;
    accumulate(*ring_, out.terms_, d, c * Scalar::from_int(spec(), nu[var]), out.tail_);
  }
  if (!tail_.is_zero()) {
    out.tail_ = ln_max(out.tail_, ln_mul(tail_, LogNorm::radius_power(ring_->generator(var), -1)), ring_->radii());
  }
  return out;
}

TateSeries TateSeries::with_tail(const LogNorm& tail) const {
  TateSeries out = *this;
  out.tail_ = tail;
  return out;
}

TateSeries TateSeries::folded_below(const LogNorm& floor) const {
  const RadiusContext& radii = ring_->radii();
  TateSeries out(ring_);
  out.tail_ = tail_;
  for (const auto& [nu, c] : terms_) {
    const LogNorm n = ln_mul(c.norm(), ring_->monomial_norm(nu));
    if (ln_less_equal(n, floor, radii)) {
      out.tail_ = ln_max(out.tail_, n, radii);
    } else {
      out.terms_.emplace(nu, c);
    }
  }
  return out;
}

TateSeries TateSeries::rebased(SeriesRingPtr ring) const {
  if (ring->spec().kind() != spec().kind() || ring->spec().residue_prime() != spec().residue_prime() ||
      ring->nvars() != ring_->nvars()) {
    throw IncompatibleContext("cannot move a series between unrelated rings");
  }
  Terms terms;
  for (const auto& [nu, c] : terms_) {
    Scalar moved(ring->spec(), c.value());
    const auto v = moved.valuation();
    if (v) moved = moved.truncated_to(*v + ring->spec().precision_cap());
    terms.emplace(nu, std::move(moved));
  }
  return TateSeries(std::move(ring), std::move(terms), tail_);
}

bool TateSeries::operator==(const TateSeries& o) const {
  if (!ring_->compatible(*o.ring_) || terms_.size() != o.terms_.size() || tail_ != o.tail_) return false;
  auto it = o.terms_.begin();
  for (const auto& [nu, c] : terms_) {
    if (nu != it->first || c != it->second) return false;
    ++it;
  }
  return true;
}

bool TateSeries::agrees_within(const TateSeries& o, const LogNorm& bound) const {
  const TateSeries d = *this - o;
  return d.terms_.empty() && ln_less_equal(d.tail_, bound, ring_->radii());
}

std::string TateSeries::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [nu, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    const std::string mono = monomial_text(*ring_, nu);
    std::string coeff = c.to_string();
    if (mono.empty()) {
      out << coeff;
      continue;
    }
    if (c.is_exact() && c == Scalar::one(c.spec())) {
      out << mono;
      continue;
    }
    if (coeff.find_first_of(" +") != std::string::npos || coeff.find('-', 1) != std::string::npos) {
      coeff = "(" + coeff + ")";
    }
    out << coeff << "*" << mono;
  }
  if (!tail_.is_zero()) out << (first ? "" : " + ") << "O(" << tail_.to_string() << ")";
  if (first && tail_.is_zero()) out << "0";
  return out.str();
}

TateSeries ts_arith(const TateSeries& f, const TateSeries& g, SeriesOp op) {
  return op == SeriesOp::Add ? f + g : f * g;
}

NormEstimate gauss_norm(const TateSeries& f) {
  NormEstimate out;
  out.value = stored_max(f);
  const RadiusContext& radii = f.ring().radii();
  out.exact = f.tail().is_zero() || ln_less(f.tail(), out.value, radii);
  out.bound = ln_max(out.value, f.tail(), radii);
  return out;
}

NormEstimate spectral_radius_laurent(const TateSeries& f) {
  if (f.ring().kind() != SeriesKind::Laurent) throw PreconditionFailed("spectral radius formula needs a Laurent ring");
  return gauss_norm(f);
}

LogNorm spectral_power_estimate(const TateSeries& f, std::uint64_t l) {
  if (l == 0) throw PreconditionFailed("power must be positive");
  if (!f.is_exact()) throw PreconditionFailed("power estimate needs an exact series");
  const TateSeries power = f.pow(l);
  if (!power.is_exact()) throw CapExceeded("support cap exceeded while forming the power");
  const LogNorm n = gauss_norm(power).value;
  if (n.is_zero()) return n;
  return ln_pow(n, Rational(1, static_cast<long>(l)));
}

Truncation truncate(const TateSeries& f, std::optional<std::int64_t> degree_bound) {
  if (f.ring().kind() != SeriesKind::Power) throw PreconditionFailed("truncation is defined for power series");
  TateSeries::Terms head, rest;
  for (const auto& [nu, c] : f.terms()) {
    const std::int64_t deg = std::accumulate(nu.begin(), nu.end(), std::int64_t{0});
    (degree_bound && deg > *degree_bound ? rest : head).emplace(nu, c);
  }
  if (!degree_bound) return {f.with_tail(LogNorm::zero()), TateSeries(f.ring_ptr(), {}, f.tail())};
  return {TateSeries(f.ring_ptr(), std::move(head)), TateSeries(f.ring_ptr(), std::move(rest), f.tail())};
}

}  // namespace tatekit
