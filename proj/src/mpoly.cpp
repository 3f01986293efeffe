#include "tatekit/mpoly.hpp"

#include "tatekit/error.hpp"
#include "tatekit/rational.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace tatekit {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw DivisionByZero();
  std::uint64_t result = 1, base = a;
  std::uint32_t e = p - 2;
  while (e > 0) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

MPoly MPoly::constant(std::uint32_t p, std::size_t nvars, std::int64_t c) {
  MPoly out(p, nvars);
  out.add_term(Monomial(nvars, 0), static_cast<std::uint32_t>(floor_mod(c, p)));
  return out;
}

MPoly MPoly::variable(std::uint32_t p, std::size_t nvars, std::size_t index, std::uint32_t power) {
  MPoly out(p, nvars);
  Monomial m(nvars, 0);
  m.at(index) = power;
  out.add_term(m, 1);
  return out;
}

MPoly MPoly::monomial(std::uint32_t p, Monomial exps, std::uint32_t coeff) {
  MPoly out(p, exps.size());
  out.add_term(exps, coeff % p);
  return out;
}

bool MPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                            [](std::uint32_t e) { return e == 0; }));
}

std::uint32_t MPoly::constant_term() const { return coefficient(Monomial(nvars_, 0)); }

std::uint32_t MPoly::degree(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

std::uint32_t MPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) {
    std::uint32_t s = 0;
    for (auto e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

std::uint32_t MPoly::leading_coefficient() const { return terms_.empty() ? 0 : terms_.begin()->second; }

std::uint32_t MPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void MPoly::add_term(const Monomial& m, std::uint32_t c) {
  c %= p_;
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = static_cast<std::uint32_t>((static_cast<std::uint64_t>(it->second) + c) % p_);
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly MPoly::operator-() const { return scaled(p_ - 1); }

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, p_ - c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly out(a.p_, a.nvars_);
  MPoly::Monomial m(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, static_cast<std::uint32_t>(static_cast<std::uint64_t>(ca) * cb % a.p_));
    }
  }
  return out;
}

MPoly MPoly::scaled(std::uint32_t c) const {
  MPoly out(p_, nvars_);
  c %= p_;
  if (c == 0) return out;
  for (const auto& [m, v] : terms_)
    out.terms_.emplace_hint(out.terms_.end(), m, static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * c % p_));
  return out;
}

MPoly MPoly::pow(std::uint32_t e) const {
  MPoly result = constant(p_, nvars_, 1);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

MPoly MPoly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(inv_mod(leading_coefficient(), p_));
}

MPoly MPoly::divexact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  MPoly quotient(a.p_, a.nvars_);
  MPoly rem = a;
  const auto& [lead_m, lead_c] = *b.terms_.begin();
  const std::uint32_t lead_inv = inv_mod(lead_c, a.p_);
  while (!rem.is_zero()) {
    const auto [rm, rc] = *rem.terms_.begin();
    Monomial q(a.nvars_);
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (rm[i] < lead_m[i]) throw PreconditionFailed("inexact multivariate division");
      q[i] = rm[i] - lead_m[i];
    }
    const auto qc = static_cast<std::uint32_t>(static_cast<std::uint64_t>(rc) * lead_inv % a.p_);
    MPoly step = monomial(a.p_, q, qc);
    quotient += step;
    rem -= step * b;
  }
  return quotient;
}

namespace {

// Coefficients of a with respect to variable var, keyed by degree.
std::map<std::uint32_t, MPoly> split(const MPoly& a, std::size_t var) {
  std::map<std::uint32_t, MPoly> out;
  for (const auto& [m, c] : a.terms()) {
    MPoly::Monomial rest = m;
    rest[var] = 0;
    auto it = out.try_emplace(m[var], a.prime(), a.num_vars()).first;
    it->second.add_term(rest, c);
  }
  return out;
}

std::optional<std::size_t> main_variable(const MPoly& a, const MPoly& b) {
  std::optional<std::size_t> best;
  for (const MPoly* poly : {&a, &b})
    for (const auto& [m, c] : poly->terms())
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0 && (!best || i < *best)) best = i;
  return best;
}

MPoly content(const MPoly& a, std::size_t var) {
  MPoly g(a.prime(), a.num_vars());
  for (const auto& [deg, coeff] : split(a, var)) {
    g = MPoly::gcd(g, coeff);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

MPoly primitive_part(const MPoly& a, std::size_t var) {
  if (a.is_zero()) return a;
  return MPoly::divexact(a, content(a, var));
}

MPoly pseudo_remainder(MPoly r, const MPoly& b, std::size_t var) {
  const std::uint32_t db = b.degree(var);
  const MPoly lcb = split(b, var).rbegin()->second;
  while (!r.is_zero() && r.degree(var) >= db) {
    const std::uint32_t dr = r.degree(var);
    const MPoly lcr = split(r, var).rbegin()->second;
    r = lcb * r - lcr * MPoly::variable(r.prime(), r.num_vars(), var, dr - db) * b;
  }
  return r;
}

}  // namespace

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const auto var = main_variable(a, b);
  if (!var) return constant(a.p_, a.nvars_, 1);
  const bool in_a = a.degree(*var) > 0;
  const bool in_b = b.degree(*var) > 0;
  if (!in_a) return gcd(a, content(b, *var));
  if (!in_b) return gcd(content(a, *var), b);

  const MPoly ca = content(a, *var);
  const MPoly cb = content(b, *var);
  const MPoly c = gcd(ca, cb);
  MPoly r0 = divexact(a, ca);
  MPoly r1 = divexact(b, cb);
  if (r0.degree(*var) < r1.degree(*var)) std::swap(r0, r1);
  while (true) {
    MPoly rem = pseudo_remainder(r0, r1, *var);
    if (rem.is_zero()) break;
    if (rem.degree(*var) == 0) {
      r1 = constant(a.p_, a.nvars_, 1);
      break;
    }
    r0 = std::move(r1);
    r1 = primitive_part(rem, *var);
  }
  return (c * primitive_part(r1, *var)).monic();
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << "+";
    first = false;
    bool has_var = false;
    std::ostringstream mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (has_var) mono << "*";
      has_var = true;
      mono << names.at(i);
      if (m[i] > 1) mono << "^" << m[i];
    }
    if (!has_var) {
      out << c;
    } else {
      if (c != 1) out << c << "*";
      out << mono.str();
    }
  }
  return out.str();
}

}  // namespace tatekit
