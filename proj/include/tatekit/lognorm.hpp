#pragma once

#include "tatekit/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace tatekit {

class RadiusContext;

enum class Ordering { Less, Equal, Greater };

// An exact norm value q^{-e0} * prod_j r_j^{e_j}, or the norm of zero.
//
// The radius exponent vector is implicitly padded with zeros, so a value that
// does not mention a generator has exponent 0 for it.
class LogNorm {
 public:
  LogNorm() = default;

  static LogNorm zero();
  static LogNorm identity() { return LogNorm(); }
  static LogNorm of(Rational base_exp, std::vector<Rational> radius_exps = {});
  // r_j^{exponent} for a single generator.
  static LogNorm radius_power(std::size_t generator, const Rational& exponent);

  bool is_zero() const { return zero_; }
  const Rational& base_exp() const { return base_; }
  const std::vector<Rational>& radius_exps() const { return radius_; }
  Rational radius_exp(std::size_t j) const { return j < radius_.size() ? radius_[j] : Rational(0); }
  std::size_t arity() const { return radius_.size(); }

  // Structural equality of exponent vectors.
  bool operator==(const LogNorm& o) const;
  bool operator!=(const LogNorm& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void trim();

  bool zero_ = false;
  Rational base_ = 0;
  std::vector<Rational> radius_;
};

LogNorm ln_mul(const LogNorm& a, const LogNorm& b);
// a^s; ZERO^s is ZERO for s > 0 and undefined otherwise.
LogNorm ln_pow(const LogNorm& a, const Rational& s);
LogNorm ln_div(const LogNorm& a, const LogNorm& b);

inline LogNorm operator*(const LogNorm& a, const LogNorm& b) { return ln_mul(a, b); }

// Total order on norm values. Structurally equal inputs are EQ; otherwise the
// log-difference is evaluated over refined radius intervals until its sign is
// known, raising UndecidableAtDepth when the depth limit is reached.
Ordering ln_compare(const LogNorm& a, const LogNorm& b, const RadiusContext& radii);

bool ln_less(const LogNorm& a, const LogNorm& b, const RadiusContext& radii);
bool ln_less_equal(const LogNorm& a, const LogNorm& b, const RadiusContext& radii);
const LogNorm& ln_max(const LogNorm& a, const LogNorm& b, const RadiusContext& radii);

// Whether the value lies in |k^x|^Q, i.e. carries no radius factor.
bool in_value_group_rational(const LogNorm& a);

}  // namespace tatekit
