#include "tatekit/ratfun.hpp"

#include "tatekit/error.hpp"

namespace tatekit {

RatFun::RatFun(MPoly num) : num_(std::move(num)), den_(MPoly::constant(num_.prime(), num_.num_vars(), 1)) {}

RatFun::RatFun(MPoly num, MPoly den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) {
    num_ = MPoly(num.prime(), num.num_vars());
    den_ = MPoly::constant(num.prime(), num.num_vars(), 1);
    return;
  }
  const MPoly g = MPoly::gcd(num, den);
  num = MPoly::divexact(num, g);
  den = MPoly::divexact(den, g);
  const std::uint32_t scale = inv_mod(den.leading_coefficient(), den.prime());
  num_ = num.scaled(scale);
  den_ = den.scaled(scale);
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return RatFun(a.prime(), a.num_vars());
  return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return RatFun(den_, num_);
}

std::vector<std::string> RatFun::variable_names(std::size_t nvars) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("u" + std::to_string(i + 1));
  return names;
}

std::string RatFun::to_string() const {
  const auto names = variable_names(num_vars());
  if (is_polynomial()) return num_.to_string(names);
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

}  // namespace tatekit
