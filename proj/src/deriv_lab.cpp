#include "tatekit/deriv_lab.hpp"

#include "tatekit/error.hpp"
#include "tatekit/linalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace tatekit {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw CapExceeded("sparse index overflows 64 bits");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw CapExceeded("sparse index overflows 64 bits");
  return out;
}

void require_one_variable_power(const TateSeries& f, const char* what) {
  if (f.ring().nvars() != 1) throw PreconditionFailed(std::string(what) + ": series must have one variable");
  if (f.ring().kind() != SeriesKind::Power) throw PreconditionFailed(std::string(what) + ": series must be a power series");
}

std::int64_t exponent_of(const Exponent& nu) { return nu.at(0); }

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t mod_inverse(std::uint64_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t reduce_integer(const Integer& n, std::uint32_t p) {
  Integer r = n % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

// Image of a scalar in Z/ell when it lies in the prime ring, nullopt otherwise.
std::optional<std::uint32_t> residue_mod(const Scalar& x, std::uint32_t ell) {
  if (x.is_zero()) return 0u;
  if (!x.is_exact()) return std::nullopt;
  switch (x.spec().kind()) {
    case FieldKind::Padic: {
      const auto r = *x.as_rational();
      const auto den = reduce_integer(r.get_den(), ell);
      if (den == 0) return std::nullopt;
      return static_cast<std::uint32_t>(std::uint64_t{reduce_integer(r.get_num(), ell)} * mod_inverse(den, ell) % ell);
    }
    case FieldKind::FqLaurent: {
      const auto& v = x.gf();
      if (v.val != 0 || v.unit.size() != 1 || v.unit[0] >= x.spec().residue_prime()) return std::nullopt;
      return v.unit[0];
    }
    case FieldKind::RatfunLaurent: {
      const auto& v = x.ratfun();
      if (v.val != 0 || v.unit.size() != 1 || !v.unit[0].is_constant()) return std::nullopt;
      const auto num = v.unit[0].num().constant_term(), den = v.unit[0].den().constant_term();
      return static_cast<std::uint32_t>(std::uint64_t{num} * mod_inverse(den, ell) % ell);
    }
  }
  return std::nullopt;
}

std::uint32_t rank_modulus(const FieldSpec& spec) {
  if (spec.characteristic() != 0) return spec.characteristic();
  std::uint32_t ell = 65521;
  while (ell == spec.residue_prime() || !is_prime(ell)) --ell;
  return ell;
}

std::string coefficient_prefix(const Scalar& c, bool& negative) {
  negative = false;
  const auto one = Scalar::one(c.spec());
  if (c == one) return "";
  if (c == -one) {
    negative = true;
    return "";
  }
  return "(" + c.to_string() + ")*";
}

}  // namespace

SparseSpec sparse_indices(std::size_t m) {
  if (m == 0) throw PreconditionFailed("sparse_indices needs m >= 1");
  SparseSpec out;
  out.indices.push_back(2);
  for (std::size_t j = 1; j < m; ++j) {
    const auto prev = out.indices.back();
    out.indices.push_back(checked_add(checked_mul(static_cast<std::int64_t>(j), checked_add(1, prev)), 1));
  }
  return out;
}

SparseSeries sparse_series(std::size_t m, const SeriesRingPtr& ring) {
  if (ring->nvars() != 1 || ring->kind() != SeriesKind::Power)
    throw PreconditionFailed("sparse series live in a one-variable power series ring");
  const auto gen = ring->generator(0);
  const auto& decl = ring->radii().at(gen);
  if (!decl.asserts_irrational()) throw PreconditionFailed("radius " + decl.id() + " is not declared irrational");
  if (!decl.below_one()) throw PreconditionFailed("radius " + decl.id() + " is not below one");
  const auto all = sparse_indices(m + 1);
  SparseSeries out{SparseSpec{}, TateSeries::zero(ring), LogNorm::zero(), all.indices.back()};
  out.spec.indices.assign(all.indices.begin(), all.indices.end() - 1);
  TateSeries::Terms terms;
  for (auto i : out.spec.indices) terms.emplace(Exponent{i}, Scalar::one(ring->spec()));
  out.poly = TateSeries(ring, std::move(terms));
  out.ideal_tail = ring->monomial_norm({out.next_index});
  return out;
}

// PolyInTF

void PolyInTF::add_term(const Key& k, const Scalar& c) {
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(k, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

PolyInTF PolyInTF::constant(const Scalar& c) { return monomial(c, 0, 0); }

PolyInTF PolyInTF::t(const FieldSpec& spec) { return monomial(Scalar::one(spec), 1, 0); }

PolyInTF PolyInTF::f(const FieldSpec& spec) { return monomial(Scalar::one(spec), 0, 1); }

PolyInTF PolyInTF::monomial(const Scalar& c, std::int64_t t_degree, std::int64_t f_degree) {
  if (t_degree < 0 || f_degree < 0) throw PreconditionFailed("negative degree in k[T][F]");
  PolyInTF out(c.spec());
  out.add_term({t_degree, f_degree}, c);
  return out;
}

PolyInTF PolyInTF::from_t_polynomial(const TateSeries& g) {
  require_one_variable_power(g, "from_t_polynomial");
  if (!g.is_exact()) throw PreconditionFailed("from_t_polynomial needs an exact polynomial");
  PolyInTF out(g.spec());
  for (const auto& [nu, c] : g.terms()) out.add_term({exponent_of(nu), 0}, c);
  return out;
}

std::int64_t PolyInTF::t_degree() const {
  std::int64_t d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first);
  return d;
}

std::int64_t PolyInTF::f_degree() const {
  std::int64_t d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.second);
  return d;
}

PolyInTF operator+(const PolyInTF& a, const PolyInTF& b) {
  if (a.spec_ != b.spec_) throw IncompatibleContext("polynomials over different fields");
  PolyInTF out = a;
  for (const auto& [k, c] : b.terms_) out.add_term(k, c);
  return out;
}

PolyInTF operator-(const PolyInTF& a, const PolyInTF& b) { return a + (-b); }

PolyInTF operator*(const PolyInTF& a, const PolyInTF& b) {
  if (a.spec_ != b.spec_) throw IncompatibleContext("polynomials over different fields");
  PolyInTF out(a.spec_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
  return out;
}

PolyInTF PolyInTF::operator-() const {
  PolyInTF out(spec_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
  return out;
}

PolyInTF PolyInTF::scaled(const Scalar& c) const {
  PolyInTF out(spec_);
  for (const auto& [k, a] : terms_) out.add_term(k, a * c);
  return out;
}

PolyInTF PolyInTF::pow(std::uint32_t e) const {
  PolyInTF out = constant(Scalar::one(spec_));
  for (std::uint32_t i = 0; i < e; ++i) out = out * *this;
  return out;
}

PolyInTF PolyInTF::derivative_f() const {
  PolyInTF out(spec_);
  for (const auto& [k, c] : terms_)
    if (k.second > 0) out.add_term({k.first, k.second - 1}, c * Scalar::from_int(spec_, k.second));
  return out;
}

TateSeries PolyInTF::evaluate(const TateSeries& f) const {
  require_one_variable_power(f, "evaluate");
  if (f.spec() != spec_) throw IncompatibleContext("polynomial and series over different fields");
  const auto& ring = f.ring_ptr();
  std::vector<TateSeries> powers{TateSeries::one(ring)};
  TateSeries out = TateSeries::zero(ring);
  for (const auto& [k, c] : terms_) {
    while (static_cast<std::int64_t>(powers.size()) <= k.second) powers.push_back(powers.back() * f);
    out += TateSeries::monomial(ring, c, {k.first}) * powers[static_cast<std::size_t>(k.second)];
  }
  return out;
}

bool PolyInTF::operator==(const PolyInTF& o) const {
  if (spec_ != o.spec_ || terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [k, c] : terms_) {
    if (k != it->first || c != it->second) return false;
    ++it;
  }
  return true;
}

std::string PolyInTF::to_string(const std::string& f_name) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Key, Scalar>> order(terms_.begin(), terms_.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.second, a.first.first) > std::tie(b.first.second, b.first.first);
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : order) {
    bool negative = false;
    std::string prefix = coefficient_prefix(c, negative);
    std::string mono;
    auto append = [&](const std::string& var, std::int64_t e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += var;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    append(f_name, k.second);
    append("T", k.first);
    if (mono.empty()) {
      if (prefix.empty()) mono = "1";
      else prefix.pop_back();  // drop the trailing '*'
    }
    if (first) out << (negative ? "-" : "");
    else out << (negative ? " - " : " + ");
    out << prefix << mono;
    first = false;
  }
  return out.str();
}

// Non-integrality

namespace {

NonIntegralResult solve_relation_system(const TateSeries& f, std::int64_t n, std::int64_t d, std::int64_t faithful) {
  const auto& spec = f.spec();
  const auto& ring = f.ring_ptr();
  NonIntegralResult out(f);
  out.n_max = n;
  out.d_max = d;
  out.faithful_degree = faithful;

  std::vector<TateSeries> powers{TateSeries::one(ring)};
  for (std::int64_t k = 1; k <= n; ++k) powers.push_back(powers.back() * f);

  const auto cols = static_cast<std::size_t>((n + 1) * (d + 1));
  out.unknowns = cols;
  out.equations = static_cast<std::size_t>(faithful + 1);

  // Row e collects the T^e coefficient of sum_i h_i f^{n-i}; column (i, j) is
  // the coefficient of T^j in h_i. Only nonzero rows are materialized.
  std::map<std::int64_t, std::vector<std::pair<std::size_t, Scalar>>> rows;
  for (std::int64_t i = 0; i <= n; ++i) {
    for (const auto& [nu, c] : powers[static_cast<std::size_t>(n - i)].terms()) {
      for (std::int64_t j = 0; j <= d; ++j) {
        const auto e = exponent_of(nu) + j;
        if (e > faithful) break;
        rows[e].emplace_back(static_cast<std::size_t>(i * (d + 1) + j), c);
      }
    }
  }

  out.modulus = rank_modulus(spec);
  bool reducible = true;
  FpMatrix mod(rows.size(), cols, out.modulus);
  std::size_t r = 0;
  for (const auto& [e, entries] : rows) {
    for (const auto& [col, c] : entries) {
      const auto v = residue_mod(c, out.modulus);
      if (!v) {
        reducible = false;
        break;
      }
      mod.add(r, col, *v);
    }
    if (!reducible) break;
    ++r;
  }
  if (reducible && mod.rank() == cols) {
    out.method = "modular-rank";
    out.rank = cols;
    out.non_integral = true;
    return out;
  }

  out.method = "exact-elimination";
  out.modulus = 0;
  const auto zero = Scalar::zero(spec), one = Scalar::one(spec);
  std::vector<std::vector<Scalar>> dense;
  dense.reserve(rows.size());
  for (const auto& [e, entries] : rows) {
    std::vector<Scalar> row(cols, zero);
    for (const auto& [col, c] : entries) row[col] = row[col] + c;
    dense.push_back(std::move(row));
  }
  const auto basis = exact_nullspace(std::move(dense), cols, zero, one);
  out.rank = cols - basis.size();
  out.non_integral = basis.empty();
  if (out.non_integral) return out;

  // Smallest relation among the basis vectors: lowest X-degree, then T-degree.
  std::optional<PolyInTF> best;
  for (const auto& v : basis) {
    PolyInTF rel(spec);
    for (std::int64_t i = 0; i <= n; ++i)
      for (std::int64_t j = 0; j <= d; ++j) {
        const auto& c = v[static_cast<std::size_t>(i * (d + 1) + j)];
        if (!c.is_zero()) rel = rel + PolyInTF::monomial(c, j, n - i);
      }
    if (!best || std::make_pair(rel.f_degree(), rel.t_degree()) < std::make_pair(best->f_degree(), best->t_degree()))
      best = std::move(rel);
  }
  // Normalize the leading coefficient (highest X-degree, then T-degree) to 1.
  const auto top_f = best->f_degree();
  const Scalar* lc = nullptr;
  for (const auto& [k, c] : best->terms())
    if (k.second == top_f) lc = &c;  // keys sort by T-degree first, so this ends on the top one
  out.relation = best->scaled(lc->inverse());
  return out;
}

void check_degrees(std::int64_t n_max, std::int64_t d_max) {
  if (n_max < 1) throw PreconditionFailed("n_max must be at least 1");
  if (d_max < 0) throw PreconditionFailed("d_max must be nonnegative");
}

}  // namespace

NonIntegralResult nonintegral_certificate(const TateSeries& f, std::int64_t n_max, std::int64_t d_max) {
  check_degrees(n_max, d_max);
  require_one_variable_power(f, "nonintegral_certificate");
  if (!f.is_exact()) throw PreconditionFailed("nonintegral_certificate needs an exact polynomial");
  const auto deg = std::max<std::int64_t>(f.max_degree(), 0);
  return solve_relation_system(f, n_max, d_max, checked_add(checked_mul(n_max, deg), d_max));
}

NonIntegralResult nonintegral_certificate(const SparseSeries& f, std::int64_t n_max, std::int64_t d_max) {
  check_degrees(n_max, d_max);
  const auto last = f.spec.indices.back();
  if (checked_add(checked_mul(n_max, last), d_max) >= f.next_index)
    throw PreconditionFailed("degree gap fails: n_max * " + std::to_string(last) + " + d_max must be below " +
                             std::to_string(f.next_index));
  return solve_relation_system(f.poly, n_max, d_max, f.next_index - 1);
}

namespace {

void require_certificate(const PolyInTF& P, const TateSeries& f, const NonIntegralResult& cert) {
  if (!cert.non_integral) throw PreconditionFailed("no transcendence certificate: a relation was found");
  if (f.with_tail(LogNorm::zero()) != cert.f.with_tail(LogNorm::zero()))
    throw PreconditionFailed("certificate was issued for a different series");
  if (P.f_degree() > cert.n_max || P.t_degree() > cert.d_max)
    throw PreconditionFailed("certificate does not cover the degrees of " + P.to_string());
}

}  // namespace

TateSeries deriv_eval(const PolyInTF& P, const TateSeries& f, const NonIntegralResult& certificate) {
  require_certificate(P, f, certificate);
  return P.derivative_f().evaluate(f);
}

SquareZeroElem<TateSeries> phi(const PolyInTF& P, const TateSeries& f, const NonIntegralResult& certificate) {
  require_certificate(P, f, certificate);
  return {P.evaluate(f), P.derivative_f().evaluate(f)};
}

UnboundedTable unboundedness_table(std::size_t m, const SeriesRingPtr& ring, double bound) {
  if (m < 2) throw PreconditionFailed("the table needs at least two sparse terms");
  if (!(bound > 0)) throw PreconditionFailed("bound must be positive");
  const auto sparse = sparse_series(m, ring);
  const auto& radii = ring->radii();
  UnboundedTable out(nonintegral_certificate(sparse, 1, sparse.spec.indices[m - 2]));
  out.spec = sparse.spec;
  out.radius_id = ring->radius_ids().at(0);
  out.bound = bound;

  const auto f = sparse.ideal();
  const SquareZeroRing<TateSeries> sz(ring->radii_ptr());
  for (std::size_t n = 1; n < m; ++n) {
    const auto cut = truncate(f, sparse.spec.indices[n - 1]);
    const auto P = PolyInTF::f(ring->spec()) - PolyInTF::from_t_polynomial(cut.head);
    const auto image = phi(P, f, out.transcendence);
    const auto g = gauss_norm(cut.rest);
    UnboundedRow row;
    row.n = n;
    row.next_index = sparse.spec.indices[n];
    row.g_norm = g.value;
    row.g_norm_exact = g.exact;
    row.phi_norm = sz.norm(image);
    row.ratio = ln_div(row.phi_norm, g.value);
    row.log10_ratio = radii.approx_log10(row.ratio);
    row.exceeds_bound = radii.exceeds(row.ratio, bound);
    if (row.exceeds_bound && !out.first_exceeding) out.first_exceeding = n;
    out.rows.push_back(std::move(row));
  }
  out.strictly_increasing = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    if (!ln_less(out.rows[i - 1].ratio, out.rows[i].ratio, radii)) out.strictly_increasing = false;
  out.unbounded = out.strictly_increasing && out.rows.back().exceeds_bound;
  return out;
}

// p-basis series

namespace {

// Exponent tuples (a_0 for t, a_1..a_N for u_i), each below p, in order of
// total degree then descending lex, skipping the empty product.
std::vector<std::vector<std::uint32_t>> pbasis_exponents(std::uint32_t p, std::size_t nvars, std::size_t m) {
  std::vector<std::vector<std::uint32_t>> out;
  const std::size_t width = nvars + 1;
  const std::size_t max_total = static_cast<std::size_t>(p - 1) * width;
  std::vector<std::uint32_t> cur(width, 0);
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t pos, std::size_t left) {
    if (out.size() >= m) return;
    if (pos == width) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const auto top = std::min<std::size_t>(left, p - 1);
    for (std::size_t a = top + 1; a-- > 0;) {
      if (left - a > static_cast<std::size_t>(p - 1) * (width - pos - 1)) break;
      cur[pos] = static_cast<std::uint32_t>(a);
      fill(pos + 1, left - a);
    }
    cur[pos] = 0;
  };
  for (std::size_t total = 1; total <= max_total && out.size() < m; ++total) fill(0, total);
  return out;
}

std::size_t available_pbasis(std::uint32_t p, std::size_t nvars) {
  std::size_t count = 1;
  for (std::size_t i = 0; i <= nvars; ++i) {
    if (count > (std::size_t{1} << 40) / p) return std::size_t{1} << 40;
    count *= p;
  }
  return count - 1;
}

}  // namespace

TateSeries pbasis_series(std::size_t m, const SeriesRingPtr& ring) {
  const auto& spec = ring->spec();
  if (spec.kind() != FieldKind::RatfunLaurent) throw PreconditionFailed("p-basis series need a rational function field");
  if (ring->nvars() != 1) throw PreconditionFailed("p-basis series need a one-variable ring");
  if (m == 0) throw PreconditionFailed("p-basis series need m >= 1");
  const auto p = spec.residue_prime();
  const auto nvars = spec.num_pbasis_vars();
  if (m > available_pbasis(p, nvars))
    throw PreconditionFailed("only " + std::to_string(available_pbasis(p, nvars)) + " p-basis elements available with " +
                             std::to_string(nvars) + " variables");
  const auto exps = pbasis_exponents(p, nvars, m);
  TateSeries::Terms terms;
  for (std::size_t i = 0; i < m; ++i) {
    MPoly::Monomial u(exps[i].begin() + 1, exps[i].end());
    const auto coeff = Scalar::ratfun_monomial(spec, RatFun(MPoly::monomial(p, std::move(u), 1)), exps[i][0]);
    terms.emplace(Exponent{static_cast<std::int64_t>(i)}, coeff);
  }
  return TateSeries(ring, std::move(terms));
}

std::vector<std::string> pbasis_monomial_names(const FieldSpec& spec, std::size_t m) {
  const auto nvars = spec.num_pbasis_vars();
  std::vector<std::string> names{"t"};
  for (auto& n : RatFun::variable_names(nvars)) names.push_back(n);
  std::vector<std::string> out;
  for (const auto& e : pbasis_exponents(spec.residue_prime(), nvars, m)) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += names[i];
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    out.push_back(s);
  }
  return out;
}

// p-independence

namespace {

// f as a polynomial over F_p in (t, u_1..u_N, T), with a shift by a p-th
// power of t when f has negative t-exponents.
MPoly series_as_polynomial(const TateSeries& f) {
  const auto& spec = f.spec();
  const auto p = spec.residue_prime();
  const auto nvars = spec.num_pbasis_vars();
  struct Raw {
    std::int64_t t;
    MPoly::Monomial u;
    std::int64_t T;
    std::uint32_t c;
  };
  std::vector<Raw> raw;
  std::int64_t min_t = 0;
  for (const auto& [nu, c] : f.terms()) {
    if (exponent_of(nu) < 0) throw PreconditionFailed("p-independence check needs nonnegative T-exponents");
    const auto& v = c.ratfun();
    if (!v.exact) throw PreconditionFailed("p-independence check needs exact coefficients");
    for (std::size_t k = 0; k < v.unit.size(); ++k) {
      const auto& rf = v.unit[k];
      if (rf.is_zero()) continue;
      if (!rf.is_polynomial()) throw PreconditionFailed("p-independence check needs polynomial coefficients");
      const auto scale = mod_inverse(rf.den().constant_term(), p);
      const auto t = v.val + static_cast<std::int64_t>(k);
      min_t = std::min(min_t, t);
      for (const auto& [mono, a] : rf.num().terms())
        raw.push_back({t, mono, exponent_of(nu), static_cast<std::uint32_t>(std::uint64_t{a} * scale % p)});
    }
  }
  const std::int64_t shift = min_t < 0 ? ((-min_t + p - 1) / p) * p : 0;
  MPoly out(p, nvars + 2);
  for (const auto& r : raw) {
    MPoly::Monomial m(nvars + 2, 0);
    m[0] = static_cast<std::uint32_t>(r.t + shift);
    for (std::size_t i = 0; i < nvars; ++i) m[i + 1] = r.u[i];
    m[nvars + 1] = static_cast<std::uint32_t>(r.T);
    out.add_term(m, r.c);
  }
  return out;
}

std::string power_decomposition(const MPoly& a, const std::vector<std::string>& names) {
  const auto p = a.prime();
  std::map<MPoly::Monomial, MPoly> parts;
  for (const auto& [m, c] : a.terms()) {
    MPoly::Monomial rem(m.size()), quo(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      rem[i] = m[i] % p;
      quo[i] = m[i] / p;
    }
    auto it = parts.try_emplace(rem, MPoly(p, m.size())).first;
    it->second.add_term(quo, c);
  }
  std::string out;
  for (const auto& [rem, part] : parts) {
    if (!out.empty()) out += " + ";
    out += "(" + part.to_string(names) + ")^" + std::to_string(p) + "*";
    const auto mono = MPoly::monomial(p, rem, 1).to_string(names);
    out += mono;
  }
  return out;
}

void enumerate_monomials(std::size_t width, std::uint32_t budget, MPoly::Monomial& cur, std::size_t pos,
                         const std::function<void(const MPoly::Monomial&)>& visit) {
  if (pos == width) {
    visit(cur);
    return;
  }
  for (std::uint32_t a = 0; a <= budget; ++a) {
    cur[pos] = a;
    enumerate_monomials(width, budget - a, cur, pos + 1, visit);
  }
  cur[pos] = 0;
}

GeneratorCheck check_generator(const MPoly& F, std::size_t lambda, const std::string& name,
                               const PIndependenceBounds& bounds, const std::vector<std::string>& names) {
  const auto p = F.prime();
  const auto width = F.num_vars();  // t, u_i, T
  GeneratorCheck out;
  out.generator = name;
  for (const auto& [m, c] : F.terms())
    if (m[lambda] % p != 0) out.occurs_in_f = true;

  std::vector<MPoly::Monomial> unknowns;
  MPoly::Monomial cur(width, 0);
  enumerate_monomials(width - 1, bounds.tu_degree, cur, 0, [&](const MPoly::Monomial& base) {
    if (base[lambda] % p != 0) return;
    for (std::uint32_t e = 0; e <= bounds.t_degree; ++e) {
      if (unknowns.size() >= bounds.max_unknowns)
        throw CapExceeded("p-independence system exceeds " + std::to_string(bounds.max_unknowns) + " unknowns");
      auto m = base;
      m[width - 1] = e;
      unknowns.push_back(std::move(m));
    }
  });
  out.unknowns = unknowns.size();

  // Entries of c*f whose lambda-exponent is not divisible by p must vanish.
  std::map<MPoly::Monomial, std::size_t> row_of;
  std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> entries;
  for (std::size_t col = 0; col < unknowns.size(); ++col) {
    for (const auto& [m, c] : F.terms()) {
      if (m[lambda] % p == 0) continue;
      MPoly::Monomial prod(width);
      for (std::size_t i = 0; i < width; ++i) prod[i] = m[i] + unknowns[col][i];
      const auto row = row_of.try_emplace(prod, row_of.size()).first->second;
      entries.emplace_back(row, col, c);
    }
  }
  out.equations = row_of.size();

  std::vector<std::vector<std::uint32_t>> basis;
  if (row_of.empty()) {
    out.rank = 0;
    for (std::size_t col = 0; col < unknowns.size(); ++col) {
      std::vector<std::uint32_t> v(unknowns.size(), 0);
      v[col] = 1;
      basis.push_back(std::move(v));
    }
  } else {
    FpMatrix mat(row_of.size(), unknowns.size(), p);
    for (const auto& [r, c, v] : entries) mat.add(r, c, v);
    out.rank = mat.rank();
    if (out.rank < unknowns.size()) basis = mat.nullspace();
  }
  out.trivial = basis.empty();
  if (out.trivial) return out;

  // Report the sparsest, lowest-degree multiplier.
  auto cost = [&](const std::vector<std::uint32_t>& v) {
    std::size_t nnz = 0;
    std::uint32_t deg = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      ++nnz;
      std::uint32_t d = 0;
      for (auto a : unknowns[i]) d += a;
      deg = std::max(deg, d);
    }
    return std::make_pair(nnz, deg);
  };
  const auto best = *std::min_element(basis.begin(), basis.end(),
                                      [&](const auto& a, const auto& b) { return cost(a) < cost(b); });
  MPoly c(p, width);
  for (std::size_t i = 0; i < best.size(); ++i)
    if (best[i] != 0) c.add_term(unknowns[i], best[i]);
  c = c.monic();
  const auto lhs = c == MPoly::constant(p, width, 1) ? std::string("f") : "(" + c.to_string(names) + ")*f";
  out.relation = lhs + " = " + power_decomposition(c * F, names);
  return out;
}

}  // namespace

PIndependenceResult p_independence_certificate(const TateSeries& f, const PIndependenceBounds& bounds) {
  const auto& spec = f.spec();
  if (spec.kind() != FieldKind::RatfunLaurent)
    throw PreconditionFailed("p-independence check needs a rational function field");
  if (f.ring().nvars() != 1) throw PreconditionFailed("p-independence check needs a one-variable series");
  if (!f.is_exact()) throw PreconditionFailed("p-independence check needs an exact series");
  const auto F = series_as_polynomial(f);
  std::vector<std::string> names{"t"};
  for (auto& n : RatFun::variable_names(spec.num_pbasis_vars())) names.push_back(n);
  names.push_back("T");

  PIndependenceResult out(f);
  out.bounds = bounds;
  bool any_occurs = false;
  out.independent = true;
  for (std::size_t lambda = 0; lambda + 1 < names.size(); ++lambda) {
    auto check = check_generator(F, lambda, names[lambda], bounds, names);
    if (check.occurs_in_f) {
      any_occurs = true;
      if (!check.trivial) {
        out.independent = false;
        if (!out.witness) out.witness = check.relation;
      }
    }
    out.checks.push_back(std::move(check));
  }
  if (!any_occurs) {
    out.independent = false;
    for (const auto& c : out.checks)
      if (c.relation) {
        out.witness = c.relation;
        break;
      }
  }
  return out;
}

}  // namespace tatekit
