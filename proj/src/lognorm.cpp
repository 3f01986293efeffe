#include "tatekit/lognorm.hpp"

#include "tatekit/error.hpp"
#include "tatekit/radius.hpp"

#include <algorithm>
#include <sstream>

namespace tatekit {

LogNorm LogNorm::zero() {
  LogNorm out;
  out.zero_ = true;
  return out;
}

LogNorm LogNorm::of(Rational base_exp, std::vector<Rational> radius_exps) {
  LogNorm out;
  out.base_ = std::move(base_exp);
  out.radius_ = std::move(radius_exps);
  out.base_.canonicalize();
  for (auto& e : out.radius_) e.canonicalize();
  out.trim();
  return out;
}

LogNorm LogNorm::radius_power(std::size_t generator, const Rational& exponent) {
  std::vector<Rational> exps(generator + 1, Rational(0));
  exps[generator] = exponent;
  return of(0, std::move(exps));
}

void LogNorm::trim() {
  while (!radius_.empty() && radius_.back() == 0) radius_.pop_back();
}

bool LogNorm::operator==(const LogNorm& o) const {
  if (zero_ || o.zero_) return zero_ == o.zero_;
  return base_ == o.base_ && radius_ == o.radius_;
}

std::string LogNorm::to_string() const {
  if (zero_) return "ZERO";
  std::ostringstream out;
  out << "(" << tatekit::to_string(base_) << ";";
  for (std::size_t j = 0; j < radius_.size(); ++j) out << (j ? "," : "") << tatekit::to_string(radius_[j]);
  if (radius_.empty()) out << "0";
  out << ")";
  return out.str();
}

LogNorm ln_mul(const LogNorm& a, const LogNorm& b) {
  if (a.is_zero() || b.is_zero()) return LogNorm::zero();
  std::vector<Rational> exps(std::max(a.arity(), b.arity()));
  for (std::size_t j = 0; j < exps.size(); ++j) exps[j] = a.radius_exp(j) + b.radius_exp(j);
  return LogNorm::of(a.base_exp() + b.base_exp(), std::move(exps));
}

LogNorm ln_pow(const LogNorm& a, const Rational& s) {
  if (a.is_zero()) {
    if (s > 0) return a;
    throw PreconditionFailed("ZERO norm raised to a non-positive power");
  }
  std::vector<Rational> exps = a.radius_exps();
  for (auto& e : exps) e *= s;
  return LogNorm::of(a.base_exp() * s, std::move(exps));
}

LogNorm ln_div(const LogNorm& a, const LogNorm& b) { return ln_mul(a, ln_pow(b, -1)); }

Ordering ln_compare(const LogNorm& a, const LogNorm& b, const RadiusContext& radii) {
  if (a.is_zero() || b.is_zero()) {
    if (a.is_zero() && b.is_zero()) return Ordering::Equal;
    return a.is_zero() ? Ordering::Less : Ordering::Greater;
  }
  if (a == b) return Ordering::Equal;
  const std::size_t arity = std::max(a.arity(), b.arity());
  if (arity > radii.size()) throw IncompatibleContext("norm refers to an undeclared radius generator");

  // log_q(a) - log_q(b) = -(e0_a - e0_b) - sum_j (e_j^a - e_j^b) x_j, x_j = log_q(1/r_j)
  const Rational constant = b.base_exp() - a.base_exp();
  std::vector<Rational> weights(arity);
  bool any_radius = false;
  for (std::size_t j = 0; j < arity; ++j) {
    weights[j] = b.radius_exp(j) - a.radius_exp(j);
    any_radius = any_radius || weights[j] != 0;
  }
  if (!any_radius) return constant > 0 ? Ordering::Greater : (constant < 0 ? Ordering::Less : Ordering::Equal);

  const std::size_t limit = std::max<std::size_t>(radii.max_depth(), 1);
  for (std::size_t bits = std::min<std::size_t>(8, limit);; bits = std::min(bits * 2, limit)) {
    Rational lo = constant, hi = constant;
    for (std::size_t j = 0; j < arity; ++j) {
      if (weights[j] == 0) continue;
      const Interval x = radii.at(j).interval(bits);
      if (weights[j] > 0) {
        lo += weights[j] * x.lo;
        hi += weights[j] * x.hi;
      } else {
        lo += weights[j] * x.hi;
        hi += weights[j] * x.lo;
      }
    }
    if (lo > 0) return Ordering::Greater;
    if (hi < 0) return Ordering::Less;
    if (lo == hi) return Ordering::Equal;  // only reachable with rational radii
    if (bits >= limit) {
      throw UndecidableAtDepth("norms " + a.to_string() + " and " + b.to_string() + " not separated after " +
                               std::to_string(limit) + " bits of refinement");
    }
  }
}

bool ln_less(const LogNorm& a, const LogNorm& b, const RadiusContext& radii) {
  return ln_compare(a, b, radii) == Ordering::Less;
}

bool ln_less_equal(const LogNorm& a, const LogNorm& b, const RadiusContext& radii) {
  return ln_compare(a, b, radii) != Ordering::Greater;
}

const LogNorm& ln_max(const LogNorm& a, const LogNorm& b, const RadiusContext& radii) {
  return ln_compare(a, b, radii) == Ordering::Less ? b : a;
}

bool in_value_group_rational(const LogNorm& a) {
  if (a.is_zero()) throw PreconditionFailed("value-group membership of the ZERO norm");
  return a.arity() == 0;
}

}  // namespace tatekit
