#include "tatekit/radius.hpp"

#include "tatekit/error.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <regex>

namespace tatekit {

namespace {

Integer isqrt(const Integer& n) {
  Integer out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

bool is_square(const Integer& n) { return mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Integer squarefree_part(Integer n) {
  Integer out = 1;
  for (unsigned long p = 2; Integer(p) * p <= n; ++p) {
    unsigned count = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++count;
    }
    if (count % 2) out *= p;
  }
  return out * n;
}

class Mpfr {
 public:
  Mpfr() { mpfr_init2(v, 320); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_t v;
};

}  // namespace

QuadraticSurd QuadraticSurd::rational(const Rational& x) {
  QuadraticSurd s;
  s.a = x.get_num();
  s.c = x.get_den();
  return s;
}

QuadraticSurd QuadraticSurd::parse(const std::string& text) {
  static const std::regex surd(R"(\s*\(?\s*(?:([+-]?\d+)\s*([+-]))?\s*(?:(\d+)\s*\*\s*)?sqrt\((\d+)\)\s*\)?\s*(?:/\s*(\d+))?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, surd)) {
    QuadraticSurd s;
    s.a = m[1].matched ? Integer(m[1].str()) : Integer(0);
    s.b = m[3].matched ? Integer(m[3].str()) : Integer(1);
    if (m[2].matched && m[2].str() == "-") s.b = -s.b;
    s.d = Integer(m[4].str());
    s.c = m[5].matched ? Integer(m[5].str()) : Integer(1);
    if (s.c == 0) throw ParseError("zero denominator in surd '" + text + "'");
    return s;
  }
  return rational(parse_rational(text));
}

bool QuadraticSurd::is_rational() const { return b == 0 || is_square(d); }

Interval QuadraticSurd::enclose(std::size_t bits) const {
  if (is_rational()) {
    Rational v(a + b * isqrt(d), c);
    v.canonicalize();
    return {v, v};
  }
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
  const Integer babs = abs(b);
  const Integer m = isqrt(babs * babs * d * scale * scale);
  Rational lo(m, scale), hi(m + 1, scale);
  lo.canonicalize();
  hi.canonicalize();
  if (b < 0) {
    Rational t = -hi;
    hi = -lo;
    lo = t;
  }
  return {(Rational(a) + lo) / Rational(c), (Rational(a) + hi) / Rational(c)};
}

std::string QuadraticSurd::to_string() const {
  if (is_rational()) {
    Rational v(a + b * isqrt(d), c);
    v.canonicalize();
    return tatekit::to_string(v);
  }
  std::string out = "(" + tatekit::to_string(a) + (b < 0 ? "-" : "+") + tatekit::to_string(Integer(abs(b))) +
                    "*sqrt(" + tatekit::to_string(d) + "))";
  if (c != 1) out += "/" + tatekit::to_string(c);
  return out;
}

RadiusDecl::RadiusDecl(std::string id, QuadraticSurd log_inv_radius, bool asserts_irrational)
    : id_(std::move(id)), surd_(std::move(log_inv_radius)), irrational_(asserts_irrational) {
  if (surd_.c <= 0) throw PreconditionFailed("surd denominator must be positive");
  if (surd_.d < 0) throw PreconditionFailed("surd radicand must be non-negative");
  if (irrational_ && surd_.is_rational())
    throw PreconditionFailed("radius '" + id_ + "' is declared outside |k^x|^Q but its logarithm is rational");
}

bool RadiusDecl::below_one() const {
  for (std::size_t bits = 8; bits <= 1024; bits *= 2) {
    const Interval x = interval(bits);
    if (x.lo > 0) return true;
    if (x.hi <= 0) return false;
  }
  return false;
}

std::size_t RadiusContext::declare(RadiusDecl decl) {
  if (find(decl.id())) throw PreconditionFailed("radius '" + decl.id() + "' declared twice");
  decls_.push_back(std::move(decl));
  return decls_.size() - 1;
}

std::optional<std::size_t> RadiusContext::find(const std::string& id) const {
  for (std::size_t j = 0; j < decls_.size(); ++j)
    if (decls_[j].id() == id) return j;
  return std::nullopt;
}

std::size_t RadiusContext::index_of(const std::string& id) const {
  if (auto j = find(id)) return *j;
  throw IncompatibleContext("undeclared radius '" + id + "'");
}

Interval RadiusContext::log_interval(const LogNorm& x, std::size_t bits) const {
  if (x.is_zero()) throw PreconditionFailed("log of the ZERO norm");
  if (x.arity() > decls_.size()) throw IncompatibleContext("norm refers to an undeclared radius generator");
  Rational lo = -x.base_exp(), hi = -x.base_exp();
  for (std::size_t j = 0; j < x.arity(); ++j) {
    const Rational w = -x.radius_exp(j);
    if (w == 0) continue;
    const Interval r = decls_[j].interval(bits);
    if (w > 0) {
      lo += w * r.lo;
      hi += w * r.hi;
    } else {
      lo += w * r.hi;
      hi += w * r.lo;
    }
  }
  return {lo, hi};
}

bool RadiusContext::exceeds(const LogNorm& x, double bound) const {
  if (!(bound > 0)) throw PreconditionFailed("bound must be positive");
  if (x.is_zero()) return false;
  Mpfr logq_lo, logq_hi, log_bound_lo, log_bound_hi, tmp_lo, tmp_hi;
  mpfr_set_ui(logq_lo.v, q_, MPFR_RNDN);
  mpfr_log(logq_lo.v, logq_lo.v, MPFR_RNDD);
  mpfr_set_ui(logq_hi.v, q_, MPFR_RNDN);
  mpfr_log(logq_hi.v, logq_hi.v, MPFR_RNDU);
  mpfr_set_d(log_bound_lo.v, bound, MPFR_RNDN);
  mpfr_log(log_bound_lo.v, log_bound_lo.v, MPFR_RNDD);
  mpfr_set_d(log_bound_hi.v, bound, MPFR_RNDN);
  mpfr_log(log_bound_hi.v, log_bound_hi.v, MPFR_RNDU);

  for (std::size_t bits = 8;; bits = std::min(bits * 2, max_depth_)) {
    const Interval e = log_interval(x, bits);
    // ln(value) in [e.lo * ln q, e.hi * ln q]; q > 1.
    mpfr_set_q(tmp_lo.v, e.lo.get_mpq_t(), MPFR_RNDD);
    mpfr_mul(tmp_lo.v, tmp_lo.v, e.lo >= 0 ? logq_lo.v : logq_hi.v, MPFR_RNDD);
    mpfr_set_q(tmp_hi.v, e.hi.get_mpq_t(), MPFR_RNDU);
    mpfr_mul(tmp_hi.v, tmp_hi.v, e.hi >= 0 ? logq_hi.v : logq_lo.v, MPFR_RNDU);
    if (mpfr_cmp(tmp_lo.v, log_bound_hi.v) > 0) return true;
    if (mpfr_cmp(tmp_hi.v, log_bound_lo.v) <= 0) return false;
    if (bits >= max_depth_) throw UndecidableAtDepth("cannot compare norm value with bound at the depth limit");
  }
}

double RadiusContext::approx_log10(const LogNorm& x) const {
  if (x.is_zero()) return -INFINITY;
  const Interval e = log_interval(x, 64);
  const Rational mid = (e.lo + e.hi) / 2;
  return mid.get_d() * std::log10(static_cast<double>(q_));
}

void RadiusContext::check_pairwise_independent() const {
  for (std::size_t i = 0; i < decls_.size(); ++i) {
    for (std::size_t j = i + 1; j < decls_.size(); ++j) {
      const auto& x = decls_[i].log_inv_radius();
      const auto& y = decls_[j].log_inv_radius();
      if (!decls_[i].asserts_irrational() || !decls_[j].asserts_irrational()) continue;
      const Integer sx = squarefree_part(x.d), sy = squarefree_part(y.d);
      if (sx != sy) continue;
      // x = (a_x + b_x k_x sqrt(s)) / c_x and likewise for y; rational ratio iff
      // the coordinate vectors (a, b k) are proportional.
      const Integer kx = isqrt(x.d / sx), ky = isqrt(y.d / sy);
      if (x.a * y.b * ky == y.a * x.b * kx)
        throw PreconditionFailed("radii '" + decls_[i].id() + "' and '" + decls_[j].id() +
                                 "' have rationally dependent logarithms");
    }
  }
}

bool RadiusContext::affinely_independent() const {
  // Square roots of distinct squarefree integers are linearly independent over Q.
  std::vector<Integer> parts;
  for (const auto& decl : decls_) {
    if (!decl.asserts_irrational()) continue;
    const Integer s = squarefree_part(decl.log_inv_radius().d);
    if (std::find(parts.begin(), parts.end(), s) != parts.end()) return false;
    parts.push_back(s);
  }
  return true;
}

RadiusDecl default_radius(const std::string& id) {
  QuadraticSurd s;
  s.b = 1;
  s.d = 2;
  s.c = 2;
  return RadiusDecl(id, s, true);
}

RadiusDecl test_radius(const std::string& id) {
  QuadraticSurd s;
  s.b = 1;
  s.d = 3601;
  s.c = 100;
  return RadiusDecl(id, s, true);
}

}  // namespace tatekit
